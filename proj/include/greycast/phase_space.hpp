#ifndef GREYCAST_PHASE_SPACE_HPP
#define GREYCAST_PHASE_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "greycast/config.hpp"
#include "greycast/errors.hpp"
#include "greycast/series.hpp"

namespace greycast {

/// Average mutual information I(tau) per lag, in bits.
struct AmiProfile {
    std::vector<std::size_t> lags;
    std::vector<double> values;
    std::size_t bins = 0;
};

/// False-nearest-neighbor percentage per embedding dimension.
struct FnnProfile {
    std::vector<std::size_t> dims;
    std::vector<double> false_percent;
    double threshold_percent = 1.0;
    bool truncated = false; // series too short for the highest dims
};

struct DimSelection {
    std::size_t dim = 1;
    bool saturated = false; // no dimension met the threshold
};

/// Delay-embedded state vectors: row k is
/// [y(k), y(k-tau), ..., y(k-(dim-1)tau)], newest component first.
struct EmbeddedMatrix {
    std::vector<std::vector<double>> rows;
    std::size_t tau = 1;
    std::size_t dim = 1;
    std::size_t source_length = 0;
};

namespace detail {

inline std::size_t histogram_bin(double v, double lo, double width, std::size_t bins) {
    if (width <= 0.0) return 0;
    auto b = static_cast<std::ptrdiff_t>((v - lo) / width * static_cast<double>(bins));
    if (b < 0) b = 0;
    if (b >= static_cast<std::ptrdiff_t>(bins)) b = static_cast<std::ptrdiff_t>(bins) - 1;
    return static_cast<std::size_t>(b);
}

} // namespace detail

/// Mutual information between y(k) and y(k-lag) from a bins x bins joint
/// histogram over the full-range equal-width grid. Marginals are the joint's
/// row/column sums, which keeps the estimate nonnegative. lag 0 returns the
/// marginal entropy.
inline double ami_at_lag(std::span<const double> y, std::size_t lag, std::size_t bins) {
    if (bins < 2) throw DataError("ami: need at least 2 bins");
    if (y.size() < lag + 2) throw DataError("ami: series too short for lag " + std::to_string(lag));
    auto [mn_it, mx_it] = std::minmax_element(y.begin(), y.end());
    const double lo = *mn_it, hi = *mx_it;
    if (hi <= lo) throw DataError("ami: constant series has zero histogram width");
    const double width = hi - lo;

    std::vector<double> joint(bins * bins, 0.0);
    std::size_t pairs = 0;
    for (std::size_t k = lag; k < y.size(); ++k) {
        std::size_t a = detail::histogram_bin(y[k], lo, width, bins);
        std::size_t b = detail::histogram_bin(y[k - lag], lo, width, bins);
        joint[a * bins + b] += 1.0;
        ++pairs;
    }
    std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
    for (std::size_t a = 0; a < bins; ++a)
        for (std::size_t b = 0; b < bins; ++b) {
            joint[a * bins + b] /= static_cast<double>(pairs);
            pa[a] += joint[a * bins + b];
            pb[b] += joint[a * bins + b];
        }
    double info = 0.0;
    for (std::size_t a = 0; a < bins; ++a)
        for (std::size_t b = 0; b < bins; ++b) {
            double p = joint[a * bins + b];
            if (p > 0.0) info += p * std::log2(p / (pa[a] * pb[b]));
        }
    return info;
}

inline AmiProfile ami(const Series& series, std::size_t max_lag, std::size_t bins) {
    if (max_lag < 1) throw DataError("ami: max_lag must be positive");
    if (series.size() <= max_lag + 1) throw DataError("ami: series too short for max_lag");
    AmiProfile profile;
    profile.bins = bins;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        profile.lags.push_back(lag);
        profile.values.push_back(ami_at_lag(series.values(), lag, bins));
    }
    return profile;
}

/// First interior local minimum of I(tau); falls back on the global minimum
/// (ties toward the smaller lag) when the profile has none.
inline std::size_t select_delay(const AmiProfile& profile, DelayRule rule = DelayRule::first_local_min) {
    const auto& v = profile.values;
    if (v.empty()) throw DataError("select_delay: empty profile");
    if (rule == DelayRule::first_local_min) {
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            if (v[i] < v[i - 1] && v[i] < v[i + 1]) return profile.lags[i];
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[best]) best = i;
    return profile.lags[best];
}

inline EmbeddedMatrix embed(const Series& series, std::size_t tau, std::size_t dim) {
    if (tau < 1 || dim < 1) throw DataError("embed: tau and dim must be positive");
    const auto& y = series.values();
    const std::size_t n = y.size();
    const std::size_t span = (dim - 1) * tau;
    if (n < span + 1)
        throw DataError("embed: series length " + std::to_string(n) + " too short for dim " +
                        std::to_string(dim) + ", tau " + std::to_string(tau));
    EmbeddedMatrix m;
    m.tau = tau;
    m.dim = dim;
    m.source_length = n;
    m.rows.reserve(n - span);
    for (std::size_t k = span; k < n; ++k) {
        std::vector<double> row(dim);
        for (std::size_t j = 0; j < dim; ++j) row[j] = y[k - j * tau];
        m.rows.push_back(std::move(row));
    }
    return m;
}

/// One-step-ahead training pairs: input row ends at index k, target is
/// y(k+1). The last embedded row has no target and is dropped.
struct SupervisedSeries {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    std::size_t tau = 1;
    std::size_t dim = 1;
};

inline SupervisedSeries make_supervised(const Series& series, std::size_t tau, std::size_t dim) {
    EmbeddedMatrix m = embed(series, tau, dim);
    if (m.rows.size() < 2) throw DataError("make_supervised: not enough rows for one-step targets");
    SupervisedSeries s;
    s.tau = tau;
    s.dim = dim;
    const auto& y = series.values();
    const std::size_t span = (dim - 1) * tau;
    for (std::size_t k = span; k + 1 < y.size(); ++k) {
        s.inputs.push_back(m.rows[k - span]);
        s.targets.push_back(y[k + 1]);
    }
    return s;
}

inline FnnProfile fnn(const Series& series, std::size_t tau, std::size_t max_dim,
                      double threshold_percent = 1.0, double distance_threshold = 15.0) {
    if (max_dim < 1) throw DataError("fnn: max_dim must be positive");
    const auto& y = series.values();
    FnnProfile profile;
    profile.threshold_percent = threshold_percent;

    for (std::size_t dim = 1; dim <= max_dim; ++dim) {
        // Each tested point needs the extra component y(n - dim*tau), so the
        // usable index range starts at dim*tau.
        const std::size_t start = dim * tau;
        if (start + 1 >= y.size()) {
            profile.truncated = true;
            break;
        }
        std::vector<std::size_t> idx;
        for (std::size_t n = start; n < y.size(); ++n) idx.push_back(n);
        if (idx.size() < 2) {
            profile.truncated = true;
            break;
        }

        std::size_t false_count = 0;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            // Exhaustive nearest neighbor; fit windows are small enough that
            // a spatial index would be overkill. Ties go to the smaller index.
            double best = std::numeric_limits<double>::infinity();
            std::size_t bn = idx.size();
            for (std::size_t b = 0; b < idx.size(); ++b) {
                if (b == a) continue;
                double d2 = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    double diff = y[idx[a] - j * tau] - y[idx[b] - j * tau];
                    d2 += diff * diff;
                }
                if (d2 < best) {
                    best = d2;
                    bn = b;
                }
            }
            double extra = y[idx[a] - dim * tau] - y[idx[bn] - dim * tau];
            double grown = best + extra * extra;
            // false neighbor when the (dim+1)-distance exceeds
            // distance_threshold times the dim-distance
            bool is_false;
            if (best == 0.0) is_false = extra != 0.0;
            else is_false = grown > distance_threshold * distance_threshold * best;
            if (is_false) ++false_count;
        }
        profile.dims.push_back(dim);
        profile.false_percent.push_back(100.0 * static_cast<double>(false_count) /
                                        static_cast<double>(idx.size()));
    }
    if (profile.dims.empty()) throw DataError("fnn: series too short to test any dimension");
    return profile;
}

/// Smallest dimension whose false-neighbor percentage is at or below the
/// profile threshold; saturates at the largest tested dimension otherwise.
inline DimSelection select_dim(const FnnProfile& profile) {
    if (profile.dims.empty()) throw DataError("select_dim: empty profile");
    for (std::size_t i = 0; i < profile.dims.size(); ++i)
        if (profile.false_percent[i] <= profile.threshold_percent) return {profile.dims[i], false};
    return {profile.dims.back(), true};
}

} // namespace greycast

#endif
