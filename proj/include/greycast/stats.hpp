#ifndef GREYCAST_STATS_HPP
#define GREYCAST_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "greycast/errors.hpp"

namespace greycast {

inline double mean(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Population standard deviation (divides by n).
inline double stddev_pop(std::span<const double> xs) {
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size()));
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) throw NumericError("median of empty range");
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

/// Autocorrelation coefficient at lag k: sum_{t<n-k}(x_t-m)(x_{t+k}-m) over
/// sum_t (x_t-m)^2. Zero-variance input yields 0.
inline double autocorrelation(std::span<const double> xs, std::size_t k) {
    std::size_t n = xs.size();
    if (k >= n) throw NumericError("autocorrelation lag exceeds series length");
    double m = mean(xs);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < n; ++t) den += (xs[t] - m) * (xs[t] - m);
    for (std::size_t t = 0; t + k < n; ++t) num += (xs[t] - m) * (xs[t + k] - m);
    if (den == 0.0) return 0.0;
    return num / den;
}

namespace detail {

inline double log_gamma(double x) { return std::lgamma(x); }

/// Regularized lower incomplete gamma P(a, x), series expansion (x < a+1).
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

/// Regularized upper incomplete gamma Q(a, x), continued fraction (x >= a+1).
inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

} // namespace detail

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw NumericError("gamma_p: invalid arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_cf(a, x);
}

/// CDF of the chi-square distribution with `dof` degrees of freedom.
inline double chi_square_cdf(double x, double dof) {
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * dof, 0.5 * x);
}

/// Upper-alpha quantile: smallest x with P(X <= x) = 1 - alpha. Bisection on
/// the CDF; dof here are small integers so this is fast and robust.
inline double chi_square_quantile(double upper_alpha, double dof) {
    if (upper_alpha <= 0.0 || upper_alpha >= 1.0) throw NumericError("chi_square_quantile: alpha outside (0,1)");
    double target = 1.0 - upper_alpha;
    double lo = 0.0;
    double hi = std::max(10.0, dof * 4.0);
    while (chi_square_cdf(hi, dof) < target) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (chi_square_cdf(mid, dof) < target) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace greycast

#endif
