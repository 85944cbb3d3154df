#ifndef GREYCAST_SVM_HPP
#define GREYCAST_SVM_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "greycast/errors.hpp"
#include "greycast/kernel.hpp"
#include "greycast/linalg.hpp"
#include "greycast/numio.hpp"

namespace greycast {

struct SupervisedSet {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;

    void validate() const {
        if (inputs.size() != targets.size()) throw DataError("supervised set: input/target length mismatch");
        if (inputs.empty()) throw DataError("supervised set: empty");
        const std::size_t d = inputs.front().size();
        for (const auto& x : inputs)
            if (x.size() != d) throw DataError("supervised set: ragged input dimensions");
        for (const auto& x : inputs)
            for (double v : x)
                if (!std::isfinite(v)) throw DataError("supervised set: non-finite input");
        for (double y : targets)
            if (!std::isfinite(y)) throw DataError("supervised set: non-finite target");
    }
};

/// Trained least-squares SVM: dual coefficients, bias, and the training
/// inputs needed to evaluate the kernel expansion.
struct LsSvmModel {
    std::vector<std::vector<double>> support_inputs;
    std::vector<double> alphas;
    double bias = 0.0;
    double gamma = 1.0;
    KernelSpec kernel;
    double training_residual = 0.0; // relative residual of the saddle solve

    std::size_t dim() const { return support_inputs.empty() ? 0 : support_inputs.front().size(); }
};

/// Solves the (N+1)x(N+1) saddle system
///   [ 0   1^T          ] [ b     ]   [ 0 ]
///   [ 1   K + I/gamma  ] [ alpha ] = [ Y ]
/// by LU with partial pivoting and checks the relative residual.
inline LsSvmModel train(const SupervisedSet& data, const KernelSpec& spec, double gamma) {
    data.validate();
    spec.validate();
    if (!(gamma > 0.0)) throw ConfigError("train: gamma must be positive");

    const std::size_t n = data.inputs.size();
    Matrix omega = gram(spec, data.inputs);
    Matrix a(n + 1, n + 1, 0.0);
    std::vector<double> rhs(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        a(0, i + 1) = 1.0;
        a(i + 1, 0) = 1.0;
        rhs[i + 1] = data.targets[i];
        for (std::size_t j = 0; j < n; ++j) a(i + 1, j + 1) = omega(i, j) + (i == j ? 1.0 / gamma : 0.0);
    }

    SolveResult sol = solve_partial_pivot(a, rhs);

    std::vector<double> residual = a.multiply(sol.x);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= rhs[i];
    double rel = norm2(residual) / std::max(norm2(rhs), 1e-300);
    if (rel > 1e-8)
        throw NumericError("train: saddle system residual " + format_exact(rel) +
                           " exceeds 1e-8 (condition estimate " + format_exact(sol.condition_estimate) + ")");

    LsSvmModel model;
    model.support_inputs = data.inputs;
    model.bias = sol.x[0];
    model.alphas.assign(sol.x.begin() + 1, sol.x.end());
    model.gamma = gamma;
    model.kernel = spec;
    model.training_residual = rel;
    return model;
}

inline double predict(const LsSvmModel& model, std::span<const double> x) {
    if (x.size() != model.dim())
        throw DataError("predict: input dimension " + std::to_string(x.size()) + " does not match model dimension " +
                        std::to_string(model.dim()));
    double y = model.bias;
    for (std::size_t k = 0; k < model.support_inputs.size(); ++k)
        y += model.alphas[k] * kernel_eval(model.kernel, model.support_inputs[k], x);
    return y;
}

/// Recursive multi-step forecast: the window is [newest, ..., oldest]; each
/// step prepends the last prediction. This matches a delay embedding with
/// tau = 1; larger delays recurse through pipeline-level history buffers.
inline std::vector<double> forecast_iterated(const LsSvmModel& model, std::vector<double> seed_window,
                                             std::size_t steps) {
    if (seed_window.size() != model.dim()) throw DataError("forecast_iterated: seed window dimension mismatch");
    std::vector<double> out;
    out.reserve(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        double y = predict(model, seed_window);
        out.push_back(y);
        for (std::size_t j = seed_window.size(); j-- > 1;) seed_window[j] = seed_window[j - 1];
        seed_window[0] = y;
    }
    return out;
}

/// Recursive forecast honoring an arbitrary embedding delay: maintains the
/// value history and re-embeds each step.
inline std::vector<double> forecast_recursive(const LsSvmModel& model, std::vector<double> history,
                                              std::size_t tau, std::size_t steps) {
    const std::size_t dim = model.dim();
    if (history.size() < (dim - 1) * tau + 1) throw DataError("forecast_recursive: history too short to embed");
    std::vector<double> out;
    out.reserve(steps);
    std::vector<double> window(dim);
    for (std::size_t s = 0; s < steps; ++s) {
        const std::size_t k = history.size() - 1;
        for (std::size_t j = 0; j < dim; ++j) window[j] = history[k - j * tau];
        double y = predict(model, window);
        out.push_back(y);
        history.push_back(y);
    }
    return out;
}

/// Persists a model as a text artifact. Shortest round-trip formatting makes
/// reload bit-exact.
inline void save_model(const LsSvmModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("save_model: cannot open '" + path + "' for writing");
    out << "kernel " << kernel_kind_name(model.kernel.kind) << ' ' << format_exact(model.kernel.param) << ' '
        << format_exact(model.kernel.poly_c) << ' ' << model.kernel.poly_degree << ' '
        << format_exact(model.kernel.sig_b) << ' ' << format_exact(model.kernel.sig_c) << '\n';
    out << "gamma " << format_exact(model.gamma) << '\n';
    out << "bias " << format_exact(model.bias) << '\n';
    out << "n " << model.alphas.size() << " dim " << model.dim() << '\n';
    for (std::size_t i = 0; i < model.alphas.size(); ++i) out << i << ',' << format_exact(model.alphas[i]) << '\n';
    for (const auto& x : model.support_inputs) {
        for (std::size_t j = 0; j < x.size(); ++j) out << (j ? "," : "") << format_exact(x[j]);
        out << '\n';
    }
}

inline LsSvmModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("load_model: cannot open '" + path + "'");
    LsSvmModel model;
    std::string word;
    std::string kind;
    unsigned degree = 0;
    if (!(in >> word >> kind) || word != "kernel") throw DataError("load_model: bad kernel line");
    model.kernel.kind = kernel_kind_from_name(kind);
    if (!(in >> model.kernel.param >> model.kernel.poly_c >> degree >> model.kernel.sig_b >> model.kernel.sig_c))
        throw DataError("load_model: bad kernel parameters");
    model.kernel.poly_degree = degree;
    if (!(in >> word >> model.gamma) || word != "gamma") throw DataError("load_model: bad gamma line");
    if (!(in >> word >> model.bias) || word != "bias") throw DataError("load_model: bad bias line");
    std::size_t n = 0, dim = 0;
    if (!(in >> word >> n) || word != "n") throw DataError("load_model: bad size line");
    if (!(in >> word >> dim) || word != "dim") throw DataError("load_model: bad size line");
    std::string line;
    std::getline(in, line); // finish the size line
    model.alphas.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw DataError("load_model: truncated alpha rows");
        auto parts = split(trim(line), ',');
        if (parts.size() != 2) throw DataError("load_model: bad alpha row '" + line + "'");
        double a;
        if (!parse_double(parts[1], a)) throw DataError("load_model: bad alpha value");
        model.alphas[i] = a;
    }
    model.support_inputs.assign(n, std::vector<double>(dim));
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw DataError("load_model: truncated input rows");
        auto parts = split(trim(line), ',');
        if (parts.size() != dim) throw DataError("load_model: bad input row '" + line + "'");
        for (std::size_t j = 0; j < dim; ++j)
            if (!parse_double(parts[j], model.support_inputs[i][j]))
                throw DataError("load_model: bad input value");
    }
    return model;
}

} // namespace greycast

#endif
