#ifndef GREYCAST_KERNEL_HPP
#define GREYCAST_KERNEL_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "greycast/errors.hpp"
#include "greycast/linalg.hpp"
#include "greycast/numio.hpp"

namespace greycast {

enum class KernelKind { rbf, polynomial, sigmoid, mexican_hat_wavelet };

inline const char* kernel_kind_name(KernelKind k) {
    switch (k) {
        case KernelKind::rbf: return "rbf";
        case KernelKind::polynomial: return "polynomial";
        case KernelKind::sigmoid: return "sigmoid";
        case KernelKind::mexican_hat_wavelet: return "mexican_hat_wavelet";
    }
    return "?";
}

inline KernelKind kernel_kind_from_name(const std::string& s) {
    if (s == "rbf") return KernelKind::rbf;
    if (s == "polynomial") return KernelKind::polynomial;
    if (s == "sigmoid") return KernelKind::sigmoid;
    if (s == "mexican_hat_wavelet" || s == "mexican_hat") return KernelKind::mexican_hat_wavelet;
    throw ConfigError("unknown kernel kind '" + s + "'");
}

struct KernelSpec {
    KernelKind kind = KernelKind::mexican_hat_wavelet;
    double param = 1.0;  // shared width: a (wavelet) or sigma (rbf)
    double poly_c = 1.0;
    unsigned poly_degree = 2;
    double sig_b = 1.0;
    double sig_c = 0.0;

    void validate() const {
        if (kind != KernelKind::sigmoid && !(param > 0.0))
            throw ConfigError(std::string("kernel ") + kernel_kind_name(kind) + ": width must be positive");
        if (kind == KernelKind::polynomial && poly_degree < 1)
            throw ConfigError("polynomial kernel: degree must be a positive integer");
    }

    /// Mercer admissibility is guaranteed for rbf and the Mexican-hat
    /// wavelet kernel; sigmoid is not positive semidefinite at arbitrary
    /// parameters, so PSD spot checks skip it.
    bool mercer() const { return kind == KernelKind::rbf || kind == KernelKind::mexican_hat_wavelet; }

    static KernelSpec rbf(double sigma) { return {KernelKind::rbf, sigma}; }
    static KernelSpec mexican_hat(double a) { return {KernelKind::mexican_hat_wavelet, a}; }
    static KernelSpec polynomial(double c, unsigned degree) {
        KernelSpec s;
        s.kind = KernelKind::polynomial;
        s.poly_c = c;
        s.poly_degree = degree;
        return s;
    }
    static KernelSpec sigmoid(double b, double c) {
        KernelSpec s;
        s.kind = KernelKind::sigmoid;
        s.sig_b = b;
        s.sig_c = c;
        return s;
    }
};

inline double kernel_eval(const KernelSpec& spec, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DataError("kernel_eval: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                        std::to_string(y.size()) + ")");
    switch (spec.kind) {
        case KernelKind::rbf: {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
            return std::exp(-d2 / (2.0 * spec.param * spec.param));
        }
        case KernelKind::polynomial: {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
            return std::pow(dot + spec.poly_c, static_cast<double>(spec.poly_degree));
        }
        case KernelKind::sigmoid: {
            double dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
            return std::tanh(spec.sig_b * dot - spec.sig_c);
        }
        case KernelKind::mexican_hat_wavelet: {
            // product of 1-D Mexican-hat mother functions (1-u^2)exp(-u^2/2)
            // over per-component u = (x_i - y_i)/a
            double prod = 1.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double u = (x[i] - y[i]) / spec.param;
                prod *= (1.0 - u * u) * std::exp(-0.5 * u * u);
            }
            return prod;
        }
    }
    return 0.0;
}

/// Gram matrix; computed once per (i, j) pair and mirrored so symmetry is
/// bit-exact.
inline Matrix gram(const KernelSpec& spec, const std::vector<std::vector<double>>& inputs) {
    if (inputs.empty()) throw DataError("gram: empty input set");
    const std::size_t n = inputs.size();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = kernel_eval(spec, inputs[i], inputs[j]);
            k(i, j) = v;
            k(j, i) = v;
        }
    return k;
}

} // namespace greycast

#endif
