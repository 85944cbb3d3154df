#ifndef GREYCAST_COMBINE_HPP
#define GREYCAST_COMBINE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "greycast/errors.hpp"
#include "greycast/stats.hpp"

namespace greycast {

/// Aligned actuals and per-method forecast sequences.
struct ForecastMatrix {
    std::vector<double> actual;
    std::vector<std::vector<double>> forecasts; // [method][time]
    std::vector<std::string> labels;

    std::size_t methods() const { return forecasts.size(); }
    std::size_t length() const { return actual.size(); }

    void validate() const {
        if (forecasts.empty()) throw DataError("forecast matrix: no methods");
        if (actual.empty()) throw DataError("forecast matrix: empty actuals");
        for (const auto& f : forecasts)
            if (f.size() != actual.size()) throw DataError("forecast matrix: misaligned forecast length");
        for (double v : actual)
            if (!std::isfinite(v)) throw DataError("forecast matrix: non-finite actual");
        for (const auto& f : forecasts)
            for (double v : f)
                if (!std::isfinite(v)) throw DataError("forecast matrix: non-finite forecast");
    }

    /// error of method j at time t, y(t) - yhat_j(t)
    double error(std::size_t j, std::size_t t) const { return actual[t] - forecasts[j][t]; }
};

enum class WeightScheme { average, stddev, devcoef, lsm, lsm_exact, ed, grd, gro, rs };

inline const char* scheme_name(WeightScheme s) {
    switch (s) {
        case WeightScheme::average: return "average";
        case WeightScheme::stddev: return "stddev";
        case WeightScheme::devcoef: return "devcoef";
        case WeightScheme::lsm: return "lsm";
        case WeightScheme::lsm_exact: return "lsm_exact";
        case WeightScheme::ed: return "ed";
        case WeightScheme::grd: return "grd";
        case WeightScheme::gro: return "gro";
        case WeightScheme::rs: return "rs";
    }
    return "?";
}

inline WeightScheme scheme_from_name(const std::string& s) {
    if (s == "average" || s == "avg") return WeightScheme::average;
    if (s == "stddev") return WeightScheme::stddev;
    if (s == "devcoef") return WeightScheme::devcoef;
    if (s == "lsm") return WeightScheme::lsm;
    if (s == "lsm_exact") return WeightScheme::lsm_exact;
    if (s == "ed") return WeightScheme::ed;
    if (s == "grd") return WeightScheme::grd;
    if (s == "gro") return WeightScheme::gro;
    if (s == "rs") return WeightScheme::rs;
    throw ConfigError("unknown combination scheme '" + s + "'");
}

struct WeightVector {
    std::vector<double> weights;
    std::string method;
    bool clamped = false; // negative raw weights were clamped to zero

    void normalize() {
        double sum = 0.0;
        for (double& w : weights) {
            if (w < 0.0) {
                w = 0.0;
                clamped = true;
            }
            sum += w;
        }
        if (sum <= 0.0) {
            for (double& w : weights) w = 1.0 / static_cast<double>(weights.size());
            return;
        }
        for (double& w : weights) w /= sum;
    }
};

// ---------------------------------------------------------------------------
// combination forms
// ---------------------------------------------------------------------------

inline std::vector<double> combine_arithmetic(const ForecastMatrix& fm, const WeightVector& w) {
    fm.validate();
    if (w.weights.size() != fm.methods()) throw DataError("combine: weight count mismatch");
    std::vector<double> out(fm.length(), 0.0);
    for (std::size_t t = 0; t < fm.length(); ++t)
        for (std::size_t j = 0; j < fm.methods(); ++j) out[t] += w.weights[j] * fm.forecasts[j][t];
    return out;
}

inline std::vector<double> combine_geometric(const ForecastMatrix& fm, const WeightVector& w) {
    fm.validate();
    if (w.weights.size() != fm.methods()) throw DataError("combine: weight count mismatch");
    std::vector<double> out(fm.length(), 1.0);
    for (std::size_t t = 0; t < fm.length(); ++t)
        for (std::size_t j = 0; j < fm.methods(); ++j) {
            double v = fm.forecasts[j][t];
            if (!(v > 0.0))
                throw DataError("combine_geometric: nonpositive forecast at t=" + std::to_string(t) +
                                ", method " + std::to_string(j));
            out[t] *= std::pow(v, w.weights[j]);
        }
    return out;
}

inline std::vector<double> combine_harmonic(const ForecastMatrix& fm, const WeightVector& w) {
    fm.validate();
    if (w.weights.size() != fm.methods()) throw DataError("combine: weight count mismatch");
    std::vector<double> out(fm.length(), 0.0);
    for (std::size_t t = 0; t < fm.length(); ++t) {
        double denom = 0.0;
        for (std::size_t j = 0; j < fm.methods(); ++j) {
            double v = fm.forecasts[j][t];
            if (!(v > 0.0))
                throw DataError("combine_harmonic: nonpositive forecast at t=" + std::to_string(t) +
                                ", method " + std::to_string(j));
            denom += w.weights[j] / v;
        }
        out[t] = 1.0 / denom;
    }
    return out;
}

// ---------------------------------------------------------------------------
// weight schemes
// ---------------------------------------------------------------------------

inline WeightVector weights_average(std::size_t m) {
    if (m == 0) throw DataError("weights_average: no methods");
    WeightVector w{std::vector<double>(m, 1.0 / static_cast<double>(m)), "average"};
    return w;
}

/// w_j = (S - S_j)/S * 1/(m-1) with S_j the error standard deviation.
inline WeightVector weights_stddev(const ForecastMatrix& fm) {
    fm.validate();
    const std::size_t m = fm.methods();
    if (m < 2) throw DataError("weights_stddev: needs at least two methods");
    std::vector<double> s(m, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> e(fm.length());
        for (std::size_t t = 0; t < fm.length(); ++t) e[t] = fm.error(j, t);
        s[j] = stddev_pop(e);
        total += s[j];
    }
    WeightVector w;
    w.method = "stddev";
    w.weights.resize(m);
    if (total <= 0.0) {
        for (double& x : w.weights) x = 1.0 / static_cast<double>(m);
        return w;
    }
    for (std::size_t j = 0; j < m; ++j) w.weights[j] = (total - s[j]) / total / static_cast<double>(m - 1);
    w.normalize();
    return w;
}

/// w_j = (d - d_j)/d * 1/(m-1) with d_j = (1/n) sqrt(sum_i (yhat_j^i - ybar^i)^2),
/// the deviation of method j from the cross-method mean.
inline WeightVector weights_devcoef(const ForecastMatrix& fm) {
    fm.validate();
    const std::size_t m = fm.methods();
    const std::size_t n = fm.length();
    if (m < 2) throw DataError("weights_devcoef: needs at least two methods");
    std::vector<double> bar(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t j = 0; j < m; ++j) bar[t] += fm.forecasts[j][t];
        bar[t] /= static_cast<double>(m);
    }
    std::vector<double> d(m, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double ss = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double diff = fm.forecasts[j][t] - bar[t];
            ss += diff * diff;
        }
        d[j] = std::sqrt(ss) / static_cast<double>(n);
        total += d[j];
    }
    WeightVector w;
    w.method = "devcoef";
    w.weights.resize(m);
    if (total <= 0.0) { // all forecasts identical
        for (double& x : w.weights) x = 1.0 / static_cast<double>(m);
        return w;
    }
    for (std::size_t j = 0; j < m; ++j) w.weights[j] = (total - d[j]) / total / static_cast<double>(m - 1);
    w.normalize();
    return w;
}

/// Diagonal least-squares closed form w_j = (1/h_jj) / sum_i (1/h_ii) with
/// h_jj the error sum of squares; follows from the independence
/// approximation h_ij ~= 0 for i != j. Perfect methods (h = 0) absorb all
/// the weight.
inline WeightVector weights_least_squares(const ForecastMatrix& fm) {
    fm.validate();
    const std::size_t m = fm.methods();
    std::vector<double> h(m, 0.0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t t = 0; t < fm.length(); ++t) h[j] += fm.error(j, t) * fm.error(j, t);

    WeightVector w;
    w.method = "lsm";
    w.weights.assign(m, 0.0);
    std::size_t perfect = 0;
    for (double x : h)
        if (x == 0.0) ++perfect;
    if (perfect > 0) {
        for (std::size_t j = 0; j < m; ++j)
            if (h[j] == 0.0) w.weights[j] = 1.0 / static_cast<double>(perfect);
        return w;
    }
    double denom = 0.0;
    for (double x : h) denom += 1.0 / x;
    for (std::size_t j = 0; j < m; ++j) w.weights[j] = (1.0 / h[j]) / denom;
    w.normalize();
    return w;
}

/// Effective degree S = E(1 - sigma) from the per-point accuracy
/// A(t) = 1 - |(y - yhat)/y| clamped to [0,1]; weights are normalized S.
inline WeightVector weights_effective_degree(const ForecastMatrix& fm) {
    fm.validate();
    const std::size_t m = fm.methods();
    const std::size_t n = fm.length();
    for (std::size_t t = 0; t < n; ++t)
        if (fm.actual[t] == 0.0)
            throw DataError("weights_effective_degree: zero actual at index " + std::to_string(t));

    std::vector<double> s(m, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> acc(n);
        for (std::size_t t = 0; t < n; ++t) {
            double a = 1.0 - std::fabs((fm.actual[t] - fm.forecasts[j][t]) / fm.actual[t]);
            acc[t] = std::clamp(a, 0.0, 1.0);
        }
        double e = mean(acc);
        double ss = 0.0;
        for (double a : acc) ss += (a - e) * (a - e);
        double sigma = std::sqrt(ss) / static_cast<double>(n);
        s[j] = e * (1.0 - sigma);
        total += s[j];
    }
    WeightVector w;
    w.method = "ed";
    w.weights.resize(m);
    if (total <= 0.0) {
        for (double& x : w.weights) x = 1.0 / static_cast<double>(m);
        return w;
    }
    for (std::size_t j = 0; j < m; ++j) w.weights[j] = s[j] / total;
    w.normalize();
    return w;
}

// ---------------------------------------------------------------------------
// grey relation machinery
// ---------------------------------------------------------------------------

struct GreyRelationReport {
    std::vector<double> gamma_per_method;
    std::vector<std::vector<double>> coefficients; // [method][time]
    double rho = 0.5;
};

/// Grey relation degree of every forecast's error sequence against the zero
/// reference: coefficient (minmin + rho maxmax) / (|e| + rho maxmax) with
/// min/max taken jointly over methods and times. All-zero errors across the
/// board give gamma = 1 by the exact-match convention.
inline GreyRelationReport grey_relation_degree(const ForecastMatrix& fm, double rho) {
    fm.validate();
    if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("grey_relation_degree: rho outside (0,1)");
    const std::size_t m = fm.methods();
    const std::size_t n = fm.length();
    double minmin = std::numeric_limits<double>::infinity();
    double maxmax = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t t = 0; t < n; ++t) {
            double a = std::fabs(fm.error(j, t));
            minmin = std::min(minmin, a);
            maxmax = std::max(maxmax, a);
        }

    GreyRelationReport rep;
    rep.rho = rho;
    rep.coefficients.assign(m, std::vector<double>(n, 1.0));
    rep.gamma_per_method.assign(m, 1.0);
    if (maxmax == 0.0) return rep; // every method exact

    for (std::size_t j = 0; j < m; ++j) {
        double sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double c = (minmin + rho * maxmax) / (std::fabs(fm.error(j, t)) + rho * maxmax);
            rep.coefficients[j][t] = c;
            sum += c;
        }
        rep.gamma_per_method[j] = sum / static_cast<double>(n);
    }
    return rep;
}

inline WeightVector weights_grey_relation(const ForecastMatrix& fm, double rho) {
    GreyRelationReport rep = grey_relation_degree(fm, rho);
    WeightVector w;
    w.method = "grd";
    w.weights = rep.gamma_per_method;
    w.normalize();
    return w;
}

namespace detail {

/// Enumerates weight vectors with components that are multiples of
/// 1/resolution summing to 1, invoking fn on each.
inline void for_each_simplex_point(std::size_t m, std::size_t resolution,
                                   const std::function<void(const std::vector<double>&)>& fn) {
    std::vector<std::size_t> parts(m, 0);
    std::vector<double> w(m, 0.0);
    auto rec = [&](auto&& self, std::size_t idx, std::size_t left) -> void {
        if (idx + 1 == m) {
            parts[idx] = left;
            for (std::size_t i = 0; i < m; ++i)
                w[i] = static_cast<double>(parts[i]) / static_cast<double>(resolution);
            fn(w);
            return;
        }
        for (std::size_t take = 0; take <= left; ++take) {
            parts[idx] = take;
            self(self, idx + 1, left - take);
        }
    };
    rec(rec, 0, resolution);
}

struct SimplexOptimum {
    std::vector<double> weights;
    double value;
};

/// Maximizes `objective` over the simplex: uniform start, all vertices, a
/// coarse 0.01 grid, then two local refinements to step 1e-4 around the
/// incumbent. Replacement requires strict improvement, so symmetric
/// objectives keep the uniform point.
inline SimplexOptimum maximize_over_simplex(std::size_t m,
                                            const std::function<double(const std::vector<double>&)>& objective) {
    SimplexOptimum best;
    best.weights.assign(m, 1.0 / static_cast<double>(m));
    best.value = objective(best.weights);

    auto consider = [&](const std::vector<double>& w) {
        double v = objective(w);
        if (v > best.value) {
            best.value = v;
            best.weights = w;
        }
    };

    std::vector<double> vertex(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::fill(vertex.begin(), vertex.end(), 0.0);
        vertex[j] = 1.0;
        consider(vertex);
    }
    if (m == 1) return best;

    for_each_simplex_point(m, 100, consider);

    // local refinement: +-step boxes around the incumbent at step/10
    double step = 0.01;
    for (int round = 0; round < 2; ++round) {
        const std::vector<double> center = best.weights;
        const double sub = step / 10.0;
        std::vector<double> w(m, 0.0);
        auto rec = [&](auto&& self, std::size_t idx, double used) -> void {
            if (idx + 1 == m) {
                double last = 1.0 - used;
                if (last < -1e-15 || last > 1.0) return;
                if (std::fabs(last - center[idx]) > step + 1e-15) return;
                w[idx] = std::max(last, 0.0);
                consider(w);
                return;
            }
            for (int off = -10; off <= 10; ++off) {
                double x = center[idx] + static_cast<double>(off) * sub;
                if (x < 0.0 || x > 1.0) continue;
                if (used + x > 1.0 + 1e-15) continue;
                w[idx] = x;
                self(self, idx + 1, used + x);
            }
        };
        rec(rec, 0, 0.0);
        step = sub;
    }
    return best;
}

/// m = 2 fast path: coarse scan over w1 plus golden-section refinement.
inline SimplexOptimum maximize_two_weights(const std::function<double(const std::vector<double>&)>& objective) {
    auto value_at = [&](double w1) { return objective({w1, 1.0 - w1}); };
    double best_w = 0.5;
    double best_v = value_at(0.5);
    for (double w : {0.0, 1.0}) {
        double v = value_at(w);
        if (v > best_v) {
            best_v = v;
            best_w = w;
        }
    }
    for (int i = 0; i <= 100; ++i) {
        double w = static_cast<double>(i) / 100.0;
        double v = value_at(w);
        if (v > best_v) {
            best_v = v;
            best_w = w;
        }
    }
    double lo = std::max(0.0, best_w - 0.01), hi = std::min(1.0, best_w + 0.01);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = value_at(x1), f2 = value_at(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = value_at(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = value_at(x1);
        }
    }
    double mid = 0.5 * (a + b);
    double vm = value_at(mid);
    if (vm > best_v) {
        best_v = vm;
        best_w = mid;
    }
    return SimplexOptimum{{best_w, 1.0 - best_w}, best_v};
}

} // namespace detail

/// Optimal grey relation weights: maximizes the grey relation degree of the
/// combined error sum_j w_j e_j(t), holding the min/max reference constants
/// at their base-method values.
inline WeightVector weights_optimal_grey(const ForecastMatrix& fm, double rho) {
    fm.validate();
    if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("weights_optimal_grey: rho outside (0,1)");
    const std::size_t m = fm.methods();
    const std::size_t n = fm.length();

    double minmin = std::numeric_limits<double>::infinity();
    double maxmax = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t t = 0; t < n; ++t) {
            double a = std::fabs(fm.error(j, t));
            minmin = std::min(minmin, a);
            maxmax = std::max(maxmax, a);
        }

    WeightVector w;
    w.method = "gro";
    if (m == 1) {
        w.weights = {1.0};
        return w;
    }
    if (maxmax == 0.0) { // every method exact; any W attains gamma = 1
        w.weights.assign(m, 1.0 / static_cast<double>(m));
        return w;
    }

    auto gamma_of = [&](const std::vector<double>& weights) {
        double sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double e = 0.0;
            for (std::size_t j = 0; j < m; ++j) e += weights[j] * fm.error(j, t);
            sum += (minmin + rho * maxmax) / (std::fabs(e) + rho * maxmax);
        }
        return sum / static_cast<double>(n);
    };

    detail::SimplexOptimum opt =
        m == 2 ? detail::maximize_two_weights(gamma_of) : detail::maximize_over_simplex(m, gamma_of);
    w.weights = opt.weights;
    w.normalize();
    return w;
}

/// Exact least-squares weights: minimizes W^T H W with the full error moment
/// matrix H over the simplex (projected grid search), without the diagonal
/// independence approximation.
inline WeightVector weights_least_squares_exact(const ForecastMatrix& fm) {
    fm.validate();
    const std::size_t m = fm.methods();
    std::vector<std::vector<double>> h(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < fm.length(); ++t) h[i][j] += fm.error(i, t) * fm.error(j, t);

    auto negative_objective = [&](const std::vector<double>& w) {
        double q = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) q += w[i] * h[i][j] * w[j];
        return -q;
    };

    WeightVector w;
    w.method = "lsm_exact";
    if (m == 1) {
        w.weights = {1.0};
        return w;
    }
    detail::SimplexOptimum opt = m == 2 ? detail::maximize_two_weights(negative_objective)
                                        : detail::maximize_over_simplex(m, negative_objective);
    w.weights = opt.weights;
    w.normalize();
    return w;
}

// ---------------------------------------------------------------------------
// rough set weights
// ---------------------------------------------------------------------------

namespace detail {

/// Quantile class of each value: class(v) = number of quantile thresholds
/// strictly below v. Equal values always share a class.
inline std::vector<std::size_t> quantile_classes(std::span<const double> values, std::size_t classes) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::vector<double> thresholds;
    for (std::size_t j = 1; j < classes; ++j) {
        std::size_t pos = (j * n + classes - 1) / classes; // ceil(j*n/classes)
        thresholds.push_back(sorted[pos - 1]);
    }
    std::vector<std::size_t> out(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t c = 0;
        for (double t : thresholds)
            if (values[i] > t) ++c;
        out[i] = c;
    }
    return out;
}

/// H(D | grouping): conditional entropy of decision classes given the
/// grouping keys (natural log).
inline double conditional_entropy(const std::vector<std::string>& keys, const std::vector<std::size_t>& decision) {
    const std::size_t n = keys.size();
    std::map<std::string, std::map<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) ++groups[keys[i]][decision[i]];
    double h = 0.0;
    for (const auto& [key, dist] : groups) {
        std::size_t total = 0;
        for (const auto& [d, c] : dist) total += c;
        double hc = 0.0;
        for (const auto& [d, c] : dist) {
            double p = static_cast<double>(c) / static_cast<double>(total);
            hc -= p * std::log(p);
        }
        h += static_cast<double>(total) / static_cast<double>(n) * hc;
    }
    return h;
}

inline std::string join_key(const std::vector<std::vector<std::size_t>>& attrs, std::size_t row,
                            std::size_t skip) {
    std::string key;
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        if (a == skip) continue;
        key += std::to_string(attrs[a][row]);
        key += '|';
    }
    return key;
}

} // namespace detail

/// Rough-set entropy weights: discretize forecasts (condition attributes)
/// and actuals (decision attribute) into quantile classes; each method's
/// weight is the normalized entropy increase from removing its attribute.
inline WeightVector weights_rough_set(const ForecastMatrix& fm, std::size_t classes) {
    fm.validate();
    if (classes < 2) throw DataError("weights_rough_set: need at least 2 classes");
    const std::size_t m = fm.methods();
    const std::size_t n = fm.length();
    if (n < classes) throw DataError("weights_rough_set: need at least as many points as classes");

    std::vector<std::size_t> decision = detail::quantile_classes(fm.actual, classes);
    if (*std::max_element(decision.begin(), decision.end()) ==
        *std::min_element(decision.begin(), decision.end()))
        throw DataError("weights_rough_set: decision attribute degenerates to one class");

    std::vector<std::vector<std::size_t>> attrs;
    attrs.reserve(m);
    for (std::size_t j = 0; j < m; ++j) attrs.push_back(detail::quantile_classes(fm.forecasts[j], classes));

    std::vector<std::string> full_keys(n);
    for (std::size_t i = 0; i < n; ++i) full_keys[i] = detail::join_key(attrs, i, m /* skip none */);
    double h_full = detail::conditional_entropy(full_keys, decision);

    std::vector<double> sigma(m, 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<std::string> keys(n);
        for (std::size_t i = 0; i < n; ++i) keys[i] = detail::join_key(attrs, i, a);
        double h = detail::conditional_entropy(keys, decision);
        sigma[a] = std::max(h - h_full, 0.0);
        total += sigma[a];
    }

    WeightVector w;
    w.method = "rs";
    w.weights.resize(m);
    if (total <= 0.0) {
        for (double& x : w.weights) x = 1.0 / static_cast<double>(m);
        return w;
    }
    for (std::size_t j = 0; j < m; ++j) w.weights[j] = sigma[j] / total;
    w.normalize();
    return w;
}

// ---------------------------------------------------------------------------
// dispatch and two-stage combining
// ---------------------------------------------------------------------------

struct CombineOptions {
    double rho = 0.5;
    std::size_t rough_set_classes = 5;
};

inline WeightVector compute_weights(const ForecastMatrix& fm, WeightScheme scheme,
                                    const CombineOptions& opt = {}) {
    switch (scheme) {
        case WeightScheme::average: return weights_average(fm.methods());
        case WeightScheme::stddev: return weights_stddev(fm);
        case WeightScheme::devcoef: return weights_devcoef(fm);
        case WeightScheme::lsm: return weights_least_squares(fm);
        case WeightScheme::lsm_exact: return weights_least_squares_exact(fm);
        case WeightScheme::ed: return weights_effective_degree(fm);
        case WeightScheme::grd: return weights_grey_relation(fm, opt.rho);
        case WeightScheme::gro: return weights_optimal_grey(fm, opt.rho);
        case WeightScheme::rs: return weights_rough_set(fm, opt.rough_set_classes);
    }
    throw ConfigError("compute_weights: unhandled scheme");
}

struct TwoStageAudit {
    std::vector<WeightVector> stage1; // one per stage-1 scheme
    WeightVector stage2;
    std::vector<std::string> stage1_labels;
};

struct TwoStageResult {
    std::vector<double> combined;
    TwoStageAudit audit;
    ForecastMatrix stage1_matrix; // the five stage-1 sequences
};

/// Stage 1 combines the base forecasts once per listed scheme; stage 2
/// combines those sequences under the stage-2 scheme. All combinations use
/// the arithmetic form.
inline TwoStageResult two_stage_combine(const ForecastMatrix& fm, const std::vector<WeightScheme>& stage1,
                                        WeightScheme stage2, const CombineOptions& opt = {}) {
    fm.validate();
    if (fm.methods() < 2) throw DataError("two_stage_combine: need at least two base forecasts");
    if (stage1.empty()) throw DataError("two_stage_combine: no stage-1 schemes");

    TwoStageResult res;
    res.stage1_matrix.actual = fm.actual;
    for (WeightScheme s : stage1) {
        WeightVector w = compute_weights(fm, s, opt);
        res.audit.stage1.push_back(w);
        res.audit.stage1_labels.emplace_back(scheme_name(s));
        res.stage1_matrix.forecasts.push_back(combine_arithmetic(fm, w));
        res.stage1_matrix.labels.emplace_back(scheme_name(s));
    }
    res.audit.stage2 = compute_weights(res.stage1_matrix, stage2, opt);
    res.combined = combine_arithmetic(res.stage1_matrix, res.audit.stage2);
    return res;
}

} // namespace greycast

#endif
