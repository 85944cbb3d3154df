#ifndef GREYCAST_MARKOV_HPP
#define GREYCAST_MARKOV_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "greycast/config.hpp"
#include "greycast/errors.hpp"
#include "greycast/stats.hpp"

namespace greycast {

/// Relative SVR error series z_t = (y_t - fitted_t) / y_{t-1}, t = 2..N.
inline std::vector<double> residual_series(std::span<const double> actual, std::span<const double> fitted) {
    if (actual.size() != fitted.size()) throw DataError("residual_series: length mismatch");
    if (actual.size() < 3) throw DataError("residual_series: need at least 3 aligned points");
    std::vector<double> z;
    z.reserve(actual.size() - 1);
    for (std::size_t t = 1; t < actual.size(); ++t) {
        if (actual[t - 1] == 0.0)
            throw DataError("residual_series: zero denominator Y at index " + std::to_string(t - 1));
        z.push_back((actual[t] - fitted[t]) / actual[t - 1]);
    }
    return z;
}

/// State partition e_i = [m_{i-1}, m_i] with strictly increasing boundaries.
/// Values on an interior boundary belong to the lower-indexed state.
struct StatePartition {
    std::vector<double> boundaries; // k+1 values
    std::size_t state_count() const { return boundaries.size() - 1; }

    std::size_t state_of(double u) const {
        const std::size_t k = state_count();
        for (std::size_t i = 1; i <= k; ++i)
            if (u <= boundaries[i]) return i - 1;
        return k - 1;
    }

    double midpoint(std::size_t state) const {
        return 0.5 * (boundaries[state] + boundaries[state + 1]);
    }
};

inline StatePartition partition(std::span<const double> z, std::size_t k, PartitionRule rule) {
    if (k < 2) throw DataError("partition: need at least 2 states");
    if (z.size() < 2) throw DataError("partition: need at least 2 residuals");
    auto [mn_it, mx_it] = std::minmax_element(z.begin(), z.end());
    double lo = *mn_it, hi = *mx_it;

    std::vector<double> b(k + 1);
    if (rule == PartitionRule::equal_width) {
        if (hi <= lo) throw DataError("partition: all residuals equal, no width to divide");
        for (std::size_t i = 0; i <= k; ++i)
            b[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k);
    } else {
        std::vector<double> sorted(z.begin(), z.end());
        std::sort(sorted.begin(), sorted.end());
        b[0] = lo;
        b[k] = hi;
        for (std::size_t i = 1; i < k; ++i) {
            double pos = static_cast<double>(i) * static_cast<double>(sorted.size() - 1) / static_cast<double>(k);
            auto idx = static_cast<std::size_t>(pos);
            double frac = pos - static_cast<double>(idx);
            b[i] = idx + 1 < sorted.size() ? sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac : sorted[idx];
        }
        for (std::size_t i = 1; i <= k; ++i)
            if (!(b[i] > b[i - 1]))
                throw DataError("partition: quantile boundaries collide (too many ties); try equal_width");
    }
    // nudge the outer boundaries so min/max land strictly inside
    b[0] -= 1e-12;
    b[k] += 1e-12;
    return StatePartition{std::move(b)};
}

inline std::vector<std::size_t> states_of(const StatePartition& p, std::span<const double> z) {
    std::vector<std::size_t> s;
    s.reserve(z.size());
    for (double u : z) s.push_back(p.state_of(u));
    return s;
}

/// k-step transition counts and row-normalized probabilities. Rows with no
/// observed transitions fall back on the uniform distribution.
struct TransitionMatrix {
    std::size_t step = 1;
    std::vector<std::vector<double>> counts;
    std::vector<std::vector<double>> probabilities;
};

inline TransitionMatrix transition_matrix(std::span<const std::size_t> states, std::size_t step, std::size_t k) {
    if (step < 1) throw DataError("transition_matrix: step must be positive");
    if (states.size() <= step) throw DataError("transition_matrix: sequence shorter than step");
    TransitionMatrix m;
    m.step = step;
    m.counts.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t t = 0; t + step < states.size(); ++t) m.counts[states[t]][states[t + step]] += 1.0;
    m.probabilities.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        double row = 0.0;
        for (double c : m.counts[i]) row += c;
        if (row > 0.0)
            for (std::size_t j = 0; j < k; ++j) m.probabilities[i][j] = m.counts[i][j] / row;
        else
            for (std::size_t j = 0; j < k; ++j) m.probabilities[i][j] = 1.0 / static_cast<double>(k);
    }
    return m;
}

struct MarkovTestResult {
    double chi_square = 0.0;
    std::size_t dof = 0;
    double critical_value = 0.0;
    bool is_markov = false;
};

/// Chi-square test of the Markov property:
/// chi2 = 2 sum_ij n_ij |log(P_ij / P_0j)| with P_0j the column-marginal
/// frequencies, compared against the upper-alpha quantile at (k-1)^2 dof.
inline MarkovTestResult markov_property_test(std::span<const std::size_t> states, std::size_t k, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("markov_property_test: alpha outside (0,1)");
    if (states.size() < 2) throw DataError("markov_property_test: sequence too short");
    TransitionMatrix m = transition_matrix(states, 1, k);

    std::vector<double> col(k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            col[j] += m.counts[i][j];
            total += m.counts[i][j];
        }

    double chi = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double row = 0.0;
        for (double c : m.counts[i]) row += c;
        if (row == 0.0) continue;
        for (std::size_t j = 0; j < k; ++j) {
            double nij = m.counts[i][j];
            if (nij == 0.0) continue; // 0 * log(...) term
            double pij = nij / row;
            double p0j = col[j] / total; // > 0 whenever nij > 0
            chi += 2.0 * nij * std::fabs(std::log(pij / p0j));
        }
    }

    MarkovTestResult r;
    r.chi_square = chi;
    r.dof = (k - 1) * (k - 1);
    r.critical_value = chi_square_quantile(alpha, static_cast<double>(r.dof));
    r.is_markov = chi > r.critical_value;
    return r;
}

enum class MembershipKind { triangular, crisp };
enum class MidpointConvention { destination_state, source_state };

/// Triangular membership functions peaking at interval midpoints, clamped
/// flat beyond the outer midpoints; they sum to 1 everywhere. The crisp kind
/// is the interval indicator (test hook; reduces fuzzy counts to integers).
inline double membership(const StatePartition& p, std::size_t state, double u,
                         MembershipKind kind = MembershipKind::triangular) {
    const std::size_t k = p.state_count();
    if (kind == MembershipKind::crisp) return p.state_of(u) == state ? 1.0 : 0.0;
    std::vector<double> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = p.midpoint(i);
    if (u <= c[0]) return state == 0 ? 1.0 : 0.0;
    if (u >= c[k - 1]) return state == k - 1 ? 1.0 : 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (u >= c[i] && u <= c[i + 1]) {
            double left = (c[i + 1] - u) / (c[i + 1] - c[i]);
            if (state == i) return left;
            if (state == i + 1) return 1.0 - left;
            return 0.0;
        }
    }
    return 0.0;
}

struct FuzzyStateModel {
    StatePartition partition;
    MembershipKind kind = MembershipKind::triangular;
    std::vector<std::vector<double>> counts;        // fuzzy transition frequencies a_ij
    std::vector<std::vector<double>> probabilities; // row-normalized
};

inline FuzzyStateModel build_fuzzy_model(std::span<const double> z, const StatePartition& p,
                                         MembershipKind kind = MembershipKind::triangular) {
    if (z.size() < 2) throw DataError("build_fuzzy_model: need at least 2 residuals");
    const std::size_t k = p.state_count();
    FuzzyStateModel m;
    m.partition = p;
    m.kind = kind;
    m.counts.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t t = 0; t + 1 < z.size(); ++t)
        for (std::size_t i = 0; i < k; ++i) {
            double mi = membership(p, i, z[t], kind);
            if (mi == 0.0) continue;
            for (std::size_t j = 0; j < k; ++j) m.counts[i][j] += mi * membership(p, j, z[t + 1], kind);
        }
    m.probabilities.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        double row = 0.0;
        for (double c : m.counts[i]) row += c;
        if (row > 0.0)
            for (std::size_t j = 0; j < k; ++j) m.probabilities[i][j] = m.counts[i][j] / row;
        else
            for (std::size_t j = 0; j < k; ++j) m.probabilities[i][j] = 1.0 / static_cast<double>(k);
    }
    return m;
}

/// Fuzzy-Markov corrected forecast
///   Y = fitted_next + sum_i mu_i(z_last) sum_j mid * P_ij * y_prev
/// where `mid` is the midpoint of the destination state j by default (the
/// source-state reading collapses the inner sum to mid_i and is exposed for
/// comparison).
inline double fuzzy_markov_forecast(std::span<const double> z, const StatePartition& p, double fitted_next,
                                    double y_prev, MembershipKind kind = MembershipKind::triangular,
                                    MidpointConvention convention = MidpointConvention::destination_state) {
    if (y_prev == 0.0) throw DataError("fuzzy_markov_forecast: y_prev must be nonzero");
    FuzzyStateModel m = build_fuzzy_model(z, p, kind);
    const std::size_t k = p.state_count();
    double correction = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double mi = membership(p, i, z.back(), kind);
        if (mi == 0.0) continue;
        double inner = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            double mid = convention == MidpointConvention::destination_state ? p.midpoint(j) : p.midpoint(i);
            inner += mid * m.probabilities[i][j];
        }
        correction += mi * inner * y_prev;
    }
    return fitted_next + correction;
}

struct WeightedMarkovModel {
    std::size_t order = 1;
    std::vector<double> autocorrelations; // r_1..r_m
    std::vector<double> weights;          // normalized |r_k|
    std::vector<TransitionMatrix> matrices;
    std::vector<double> state_probabilities; // P_i after weighting
    std::size_t predicted_state = 0;
};

/// Weighted Markov chain: per-step transition matrices weighted by the
/// normalized autocorrelation magnitudes; each step k votes with the row
/// selected by the state observed k steps back. A constant residual series
/// (all autocorrelations zero) falls back on equal weights.
inline WeightedMarkovModel build_weighted_markov(std::span<const double> z, const StatePartition& p,
                                                 std::size_t order) {
    if (order < 1) throw DataError("weighted_markov: order must be positive");
    if (z.size() <= order) throw DataError("weighted_markov: residual series shorter than order");
    const std::size_t k = p.state_count();
    WeightedMarkovModel m;
    m.order = order;

    double abs_sum = 0.0;
    for (std::size_t lag = 1; lag <= order; ++lag) {
        double r = autocorrelation(z, lag);
        m.autocorrelations.push_back(r);
        abs_sum += std::fabs(r);
    }
    m.weights.resize(order);
    for (std::size_t i = 0; i < order; ++i)
        m.weights[i] = abs_sum > 0.0 ? std::fabs(m.autocorrelations[i]) / abs_sum : 1.0 / static_cast<double>(order);

    std::vector<std::size_t> s = states_of(p, z);
    m.state_probabilities.assign(k, 0.0);
    for (std::size_t lag = 1; lag <= order; ++lag) {
        m.matrices.push_back(transition_matrix(s, lag, k));
        std::size_t from = s[s.size() - lag];
        for (std::size_t i = 0; i < k; ++i)
            m.state_probabilities[i] += m.weights[lag - 1] * m.matrices.back().probabilities[from][i];
    }
    m.predicted_state = 0;
    for (std::size_t i = 1; i < k; ++i)
        if (m.state_probabilities[i] > m.state_probabilities[m.predicted_state]) m.predicted_state = i;
    return m;
}

inline double weighted_markov_forecast(std::span<const double> z, const StatePartition& p, std::size_t order,
                                       double fitted_next, double y_prev) {
    if (y_prev == 0.0) throw DataError("weighted_markov_forecast: y_prev must be nonzero");
    WeightedMarkovModel m = build_weighted_markov(z, p, order);
    return fitted_next + p.midpoint(m.predicted_state) * y_prev;
}

/// Comprehensive correction: plain average of the two chain forecasts.
inline double comprehensive_correction(double fuzzy_fc, double weighted_fc) {
    if (!std::isfinite(fuzzy_fc) || !std::isfinite(weighted_fc))
        throw NumericError("comprehensive_correction: non-finite input");
    return 0.5 * (fuzzy_fc + weighted_fc);
}

} // namespace greycast

#endif
