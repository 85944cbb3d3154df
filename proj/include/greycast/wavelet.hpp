#ifndef GREYCAST_WAVELET_HPP
#define GREYCAST_WAVELET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "greycast/errors.hpp"
#include "greycast/series.hpp"
#include "greycast/stats.hpp"

namespace greycast {

enum class WaveletFamily { coiflet3, daubechies4 };
enum class ThresholdRule { universal_soft, universal_hard };
enum class Extension { symmetric, periodic };

struct WaveletSpec {
    WaveletFamily family = WaveletFamily::coiflet3;
    std::size_t level = 3;
    ThresholdRule threshold_rule = ThresholdRule::universal_soft;
    Extension extension = Extension::symmetric;
};

namespace detail {

// Orthogonal lowpass decomposition filters, standard published taps.
inline const std::vector<double>& lowpass_filter(WaveletFamily family) {
    static const std::vector<double> coif3 = {
        -3.459977283621256e-05, -7.098330313814125e-05, 0.0004662169601128863,
        0.0011175187708906016,  -0.0025745176887502236, -0.00900797613666158,
        0.015880544863615904,   0.03455502757306163,    -0.08230192710688598,
        -0.07179982161931202,   0.42848347637761874,    0.7937772226256206,
        0.4051769024096169,     -0.06112339000267287,   -0.0657719112818555,
        0.023452696141836267,   0.007782596427325418,   -0.003793512864491014};
    static const std::vector<double> db4 = {
        -0.010597401784997278, 0.032883011666982945, 0.030841381835986965,
        -0.18703481171888114,  -0.02798376941698385, 0.6308807679295904,
        0.7148465705525415,    0.23037781330885523};
    return family == WaveletFamily::coiflet3 ? coif3 : db4;
}

inline std::vector<double> highpass_from_lowpass(const std::vector<double>& h) {
    const std::size_t L = h.size();
    std::vector<double> g(L);
    for (std::size_t k = 0; k < L; ++k)
        g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[L - 1 - k];
    return g;
}

/// Half-point symmetric reflection (... x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} ...),
/// iterated for indices far outside the range.
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
    while (i < 0 || i >= sn) {
        if (i < 0) i = -i - 1;
        if (i >= sn) i = 2 * sn - 1 - i;
    }
    return static_cast<std::size_t>(i);
}

inline double extended_at(std::span<const double> x, std::ptrdiff_t i, Extension ext) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    if (ext == Extension::periodic) {
        std::ptrdiff_t m = i % n;
        if (m < 0) m += n;
        return x[static_cast<std::size_t>(m)];
    }
    return x[reflect_index(i, x.size())];
}

struct BandPair {
    std::vector<double> approx;
    std::vector<double> detail;
    std::ptrdiff_t jmin = 0; // coefficient index offset (symmetric mode)
};

/// One analysis step. Symmetric mode keeps every coefficient whose filter
/// support overlaps the original sample range; with the double-shift
/// orthonormality of (h, g) that makes the synthesis step exact.
inline BandPair analyze_step(std::span<const double> x, const std::vector<double>& h,
                             const std::vector<double>& g, Extension ext) {
    const std::size_t n = x.size();
    const std::ptrdiff_t L = static_cast<std::ptrdiff_t>(h.size());
    BandPair out;
    if (ext == Extension::periodic) {
        if (n % 2 != 0) throw NumericError("wavelet: periodic extension needs even length, got " + std::to_string(n));
        const std::size_t nc = n / 2;
        out.approx.assign(nc, 0.0);
        out.detail.assign(nc, 0.0);
        for (std::size_t j = 0; j < nc; ++j) {
            double sa = 0.0, sd = 0.0;
            for (std::ptrdiff_t m = 0; m < L; ++m) {
                double v = extended_at(x, static_cast<std::ptrdiff_t>(2 * j) + m, ext);
                sa += h[static_cast<std::size_t>(m)] * v;
                sd += g[static_cast<std::size_t>(m)] * v;
            }
            out.approx[j] = sa;
            out.detail[j] = sd;
        }
        return out;
    }
    const std::ptrdiff_t jmin = -((L - 1) / 2);
    const std::ptrdiff_t jmax = static_cast<std::ptrdiff_t>((n - 1) / 2);
    const std::size_t nc = static_cast<std::size_t>(jmax - jmin + 1);
    out.jmin = jmin;
    out.approx.assign(nc, 0.0);
    out.detail.assign(nc, 0.0);
    for (std::ptrdiff_t j = jmin; j <= jmax; ++j) {
        double sa = 0.0, sd = 0.0;
        for (std::ptrdiff_t m = 0; m < L; ++m) {
            double v = extended_at(x, 2 * j + m, ext);
            sa += h[static_cast<std::size_t>(m)] * v;
            sd += g[static_cast<std::size_t>(m)] * v;
        }
        out.approx[static_cast<std::size_t>(j - jmin)] = sa;
        out.detail[static_cast<std::size_t>(j - jmin)] = sd;
    }
    return out;
}

inline std::vector<double> synthesize_step(const std::vector<double>& approx,
                                           const std::vector<double>& detail, std::size_t n_out,
                                           const std::vector<double>& h, const std::vector<double>& g,
                                           Extension ext) {
    const std::ptrdiff_t L = static_cast<std::ptrdiff_t>(h.size());
    std::vector<double> x(n_out, 0.0);
    if (ext == Extension::periodic) {
        const std::ptrdiff_t nc = static_cast<std::ptrdiff_t>(approx.size());
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_out);
        for (std::ptrdiff_t j = 0; j < nc; ++j) {
            for (std::ptrdiff_t m = 0; m < L; ++m) {
                std::ptrdiff_t i = (2 * j + m) % n;
                x[static_cast<std::size_t>(i)] += approx[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(m)] +
                                                  detail[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(m)];
            }
        }
        return x;
    }
    const std::ptrdiff_t jmin = -((L - 1) / 2);
    const std::ptrdiff_t jmax = jmin + static_cast<std::ptrdiff_t>(approx.size()) - 1;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_out); ++i) {
        double s = 0.0;
        const std::ptrdiff_t a = i - L + 1;
        std::ptrdiff_t lo = a >= 0 ? (a + 1) / 2 : a / 2; // ceil(a/2)
        std::ptrdiff_t hi = i / 2;                        // floor(i/2), i >= 0
        lo = std::max(lo, jmin);
        hi = std::min(hi, jmax);
        for (std::ptrdiff_t j = lo; j <= hi; ++j) {
            std::size_t m = static_cast<std::size_t>(i - 2 * j);
            std::size_t jj = static_cast<std::size_t>(j - jmin);
            s += approx[jj] * h[m] + detail[jj] * g[m];
        }
        x[static_cast<std::size_t>(i)] = s;
    }
    return x;
}

} // namespace detail

struct WaveletDecomposition {
    std::vector<double> approx;               // coarsest approximation band
    std::vector<std::vector<double>> details; // details[0] = finest (level 1)
    std::vector<std::size_t> input_lengths;   // length consumed by each analysis step
    std::size_t original_length = 0;
    WaveletFamily family = WaveletFamily::coiflet3;
    std::size_t level = 0;
    Extension extension = Extension::symmetric;
};

inline void validate_spec(const WaveletSpec& spec, std::size_t n) {
    const auto& h = detail::lowpass_filter(spec.family);
    if (n < h.size())
        throw DataError("wavelet: series length " + std::to_string(n) + " shorter than filter (" +
                        std::to_string(h.size()) + " taps)");
    if (spec.level < 1) throw DataError("wavelet: level must be >= 1");
    std::size_t max_level = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
    if (spec.level > max_level)
        throw DataError("wavelet: level " + std::to_string(spec.level) + " exceeds floor(log2(" +
                        std::to_string(n) + ")) = " + std::to_string(max_level));
}

inline WaveletDecomposition dwt_forward(std::span<const double> x, const WaveletSpec& spec) {
    validate_spec(spec, x.size());
    const auto& h = detail::lowpass_filter(spec.family);
    const auto g = detail::highpass_from_lowpass(h);

    WaveletDecomposition d;
    d.original_length = x.size();
    d.family = spec.family;
    d.level = spec.level;
    d.extension = spec.extension;

    std::vector<double> cur(x.begin(), x.end());
    for (std::size_t lv = 0; lv < spec.level; ++lv) {
        d.input_lengths.push_back(cur.size());
        auto bands = detail::analyze_step(cur, h, g, spec.extension);
        d.details.push_back(std::move(bands.detail));
        cur = std::move(bands.approx);
    }
    d.approx = std::move(cur);
    return d;
}

inline WaveletDecomposition dwt_forward(const Series& series, const WaveletSpec& spec) {
    return dwt_forward(std::span<const double>(series.values()), spec);
}

inline std::vector<double> dwt_inverse(const WaveletDecomposition& d, const WaveletSpec& spec) {
    if (spec.family != d.family || spec.level != d.level || spec.extension != d.extension)
        throw DataError("dwt_inverse: spec does not match the decomposition");
    const auto& h = detail::lowpass_filter(spec.family);
    const auto g = detail::highpass_from_lowpass(h);

    std::vector<double> cur = d.approx;
    for (std::size_t lv = d.level; lv-- > 0;)
        cur = detail::synthesize_step(cur, d.details[lv], d.input_lengths[lv], h, g, d.extension);
    return cur;
}

namespace detail {

inline void threshold_band(std::vector<double>& band, double t, ThresholdRule rule) {
    for (double& c : band) {
        if (rule == ThresholdRule::universal_soft) {
            double mag = std::fabs(c) - t;
            c = mag > 0.0 ? (c > 0.0 ? mag : -mag) : 0.0;
        } else {
            if (std::fabs(c) <= t) c = 0.0;
        }
    }
}

} // namespace detail

/// Universal threshold from the finest band's median absolute deviation.
inline double universal_threshold(const WaveletDecomposition& d) {
    std::vector<double> mags;
    mags.reserve(d.details.front().size());
    for (double c : d.details.front()) mags.push_back(std::fabs(c));
    double sigma = median(std::move(mags)) / 0.6745;
    return sigma * std::sqrt(2.0 * std::log(static_cast<double>(d.original_length)));
}

/// Threshold denoising. Passing `forced_threshold` >= 0 overrides the
/// universal threshold (0 makes the round trip an identity).
inline std::vector<double> denoise_values(std::span<const double> x, const WaveletSpec& spec,
                                          double forced_threshold = -1.0) {
    WaveletDecomposition d = dwt_forward(x, spec);
    double t = forced_threshold >= 0.0 ? forced_threshold : universal_threshold(d);
    for (auto& band : d.details) detail::threshold_band(band, t, spec.threshold_rule);
    return dwt_inverse(d, spec);
}

inline Series denoise(const Series& series, const WaveletSpec& spec, double forced_threshold = -1.0) {
    auto values = denoise_values(series.values(), spec, forced_threshold);
    return Series(series.timestamps(), std::move(values), series.channel(), series.name() + ".denoised");
}

} // namespace greycast

#endif
