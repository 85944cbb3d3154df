#ifndef GREYCAST_CONFIG_HPP
#define GREYCAST_CONFIG_HPP

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "greycast/errors.hpp"
#include "greycast/numio.hpp"

namespace greycast {

enum class EmbeddingMode { automatic, fixed };
enum class PartitionRule { equal_width, quantile };
enum class DelayRule { first_local_min, global_min };

struct EmbeddingConfig {
    EmbeddingMode mode = EmbeddingMode::automatic;
    std::size_t tau = 1;          // used by fixed mode
    std::size_t dim = 4;          // used by fixed mode
    std::size_t ami_bins = 16;
    std::size_t max_lag = 20;     // AMI search range in auto mode
    std::size_t max_dim = 8;      // FNN search range in auto mode
    double fnn_threshold_percent = 1.0;
    double fnn_distance_threshold = 15.0;
    DelayRule delay_rule = DelayRule::first_local_min;
};

struct WaveletConfig {
    std::string family = "coiflet3"; // coiflet3 | daubechies4
    std::size_t level = 3;
    std::string threshold_rule = "universal_soft"; // universal_soft | universal_hard
    bool enabled = true;
};

struct SvmConfig {
    std::string kernel_kind = "mexican_hat_wavelet"; // rbf | polynomial | sigmoid | mexican_hat_wavelet
    // Parameter couples (kernel width, regularization). couple 1/2 feed the
    // two-model combination methods; the ohlc couple feeds the OHLC method.
    double a1 = 0.1245, gamma1 = 639.559;
    double a2 = 0.0241, gamma2 = 687.4275;
    double a_ohlc = 0.0064, gamma_ohlc = 591.9507;
    bool tune = false; // when set, a GA run replaces the couples
};

struct GaConfigFile {
    std::size_t population = 20;
    std::size_t generations = 30;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    std::uint64_t rng_seed = 1;
    double a_min = 1e-3, a_max = 10.0;
    double gamma_min = 1.0, gamma_max = 2000.0;
    double eta1 = 0.3, eta2 = 0.7;
};

struct MarkovConfig {
    std::size_t state_count = 5;
    PartitionRule partition_rule = PartitionRule::quantile;
    std::size_t max_order = 3;
    double significance = 0.05;
};

struct CombineConfig {
    std::vector<std::string> methods = {"rs", "gro", "grd", "lsm", "ed"};
    double identification_coefficient = 0.5; // rho
    std::size_t rough_set_classes = 5;
};

struct EvaluateConfig {
    double feasibility_threshold = 0.005;
    std::vector<double> subjective_weights = {0.15, 0.2, 0.3, 0.2, 0.15};
    bool theil_classical = false;
};

struct RunConfig {
    EmbeddingConfig embedding;
    WaveletConfig wavelet;
    SvmConfig svm;
    GaConfigFile ga;
    MarkovConfig markov;
    CombineConfig combine;
    EvaluateConfig evaluate;

    void validate() {
        auto& w = evaluate.subjective_weights;
        if (w.size() != 5) throw ConfigError("evaluate.subjective_weights: need 5 values");
        double sum = 0.0;
        for (double x : w) {
            if (!(x >= 0.0)) throw ConfigError("evaluate.subjective_weights: negative weight");
            sum += x;
        }
        if (sum <= 0.0) throw ConfigError("evaluate.subjective_weights: all zero");
        for (double& x : w) x /= sum;

        double rho = combine.identification_coefficient;
        if (!(rho > 0.0 && rho < 1.0))
            throw ConfigError("identification_coefficient: " + format_exact(rho) + " outside (0,1)");

        double es = ga.eta1 + ga.eta2;
        if (es <= 0.0) throw ConfigError("ga.eta1/eta2: nonpositive sum");
        ga.eta1 /= es;
        ga.eta2 /= es;

        if (ga.population < 2) throw ConfigError("ga.population: need at least 2");
        if (!(ga.a_min > 0.0 && ga.a_min < ga.a_max)) throw ConfigError("ga.a bounds invalid");
        if (!(ga.gamma_min > 0.0 && ga.gamma_min < ga.gamma_max)) throw ConfigError("ga.gamma bounds invalid");
        if (!(ga.crossover_rate >= 0.0 && ga.crossover_rate <= 1.0)) throw ConfigError("ga.crossover_rate outside [0,1]");
        if (!(ga.mutation_rate >= 0.0 && ga.mutation_rate <= 1.0)) throw ConfigError("ga.mutation_rate outside [0,1]");

        if (markov.state_count < 2) throw ConfigError("markov.state_count: need at least 2");
        if (!(markov.significance > 0.0 && markov.significance < 1.0))
            throw ConfigError("markov.significance outside (0,1)");
        if (markov.max_order < 1) throw ConfigError("markov.max_order: need at least 1");

        if (embedding.ami_bins < 2) throw ConfigError("embedding.ami_bins: need at least 2");
        if (embedding.tau < 1) throw ConfigError("embedding.tau: need at least 1");
        if (embedding.dim < 1) throw ConfigError("embedding.dim: need at least 1");
        if (!(embedding.fnn_threshold_percent >= 0.0 && embedding.fnn_threshold_percent <= 100.0))
            throw ConfigError("embedding.fnn_threshold_percent outside [0,100]");

        if (wavelet.level < 1) throw ConfigError("wavelet.level: need at least 1");
        if (wavelet.family != "coiflet3" && wavelet.family != "daubechies4")
            throw ConfigError("wavelet.family: unknown '" + wavelet.family + "'");
        if (wavelet.threshold_rule != "universal_soft" && wavelet.threshold_rule != "universal_hard")
            throw ConfigError("wavelet.threshold_rule: unknown '" + wavelet.threshold_rule + "'");

        if (combine.rough_set_classes < 2) throw ConfigError("combine.rough_set_classes: need at least 2");
        for (const auto& m : combine.methods)
            if (m != "rs" && m != "gro" && m != "grd" && m != "lsm" && m != "ed" && m != "average")
                throw ConfigError("combine.methods: unknown method '" + m + "'");

        if (!(evaluate.feasibility_threshold > 0.0))
            throw ConfigError("evaluate.feasibility_threshold: must be positive");

        if (!(svm.a1 > 0.0 && svm.a2 > 0.0 && svm.a_ohlc > 0.0))
            throw ConfigError("svm kernel widths must be positive");
        if (!(svm.gamma1 > 0.0 && svm.gamma2 > 0.0 && svm.gamma_ohlc > 0.0))
            throw ConfigError("svm regularization must be positive");
        if (svm.kernel_kind != "rbf" && svm.kernel_kind != "polynomial" && svm.kernel_kind != "sigmoid" &&
            svm.kernel_kind != "mexican_hat_wavelet")
            throw ConfigError("svm.kernel_kind: unknown '" + svm.kernel_kind + "'");
    }
};

namespace detail {

inline double to_double(const std::string& key, std::string_view v) {
    double d;
    if (!parse_double(v, d)) throw ConfigError(key + ": cannot parse number '" + std::string(v) + "'");
    return d;
}

inline std::size_t to_size(const std::string& key, std::string_view v) {
    long l;
    if (!parse_long(v, l) || l < 0) throw ConfigError(key + ": cannot parse nonnegative integer '" + std::string(v) + "'");
    return static_cast<std::size_t>(l);
}

inline bool to_bool(const std::string& key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(key + ": cannot parse boolean '" + std::string(v) + "'");
}

} // namespace detail

/// Parses the flat `section.key = value` format. Missing keys keep defaults;
/// unknown keys are errors (strict mode guards against silent typos).
inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_config: cannot open '" + path + "'");

    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key(trim(t.substr(0, eq)));
        std::string val(trim(t.substr(eq + 1)));
        using detail::to_bool;
        using detail::to_double;
        using detail::to_size;

        if (key == "embedding.mode") {
            if (val == "auto") cfg.embedding.mode = EmbeddingMode::automatic;
            else if (val == "fixed") cfg.embedding.mode = EmbeddingMode::fixed;
            else throw ConfigError(key + ": expected auto|fixed, got '" + val + "'");
        } else if (key == "embedding.tau") cfg.embedding.tau = to_size(key, val);
        else if (key == "embedding.dim") cfg.embedding.dim = to_size(key, val);
        else if (key == "embedding.ami_bins") cfg.embedding.ami_bins = to_size(key, val);
        else if (key == "embedding.max_lag") cfg.embedding.max_lag = to_size(key, val);
        else if (key == "embedding.max_dim") cfg.embedding.max_dim = to_size(key, val);
        else if (key == "embedding.fnn_threshold_percent") cfg.embedding.fnn_threshold_percent = to_double(key, val);
        else if (key == "embedding.fnn_distance_threshold") cfg.embedding.fnn_distance_threshold = to_double(key, val);
        else if (key == "embedding.delay_rule") {
            if (val == "first_local_min") cfg.embedding.delay_rule = DelayRule::first_local_min;
            else if (val == "global_min") cfg.embedding.delay_rule = DelayRule::global_min;
            else throw ConfigError(key + ": expected first_local_min|global_min");
        } else if (key == "wavelet.family") cfg.wavelet.family = val;
        else if (key == "wavelet.level") cfg.wavelet.level = to_size(key, val);
        else if (key == "wavelet.threshold_rule") cfg.wavelet.threshold_rule = val;
        else if (key == "wavelet.enabled") cfg.wavelet.enabled = to_bool(key, val);
        else if (key == "svm.kernel_kind") cfg.svm.kernel_kind = val;
        else if (key == "svm.a1") cfg.svm.a1 = to_double(key, val);
        else if (key == "svm.gamma1") cfg.svm.gamma1 = to_double(key, val);
        else if (key == "svm.a2") cfg.svm.a2 = to_double(key, val);
        else if (key == "svm.gamma2") cfg.svm.gamma2 = to_double(key, val);
        else if (key == "svm.a_ohlc") cfg.svm.a_ohlc = to_double(key, val);
        else if (key == "svm.gamma_ohlc") cfg.svm.gamma_ohlc = to_double(key, val);
        else if (key == "svm.tune") cfg.svm.tune = to_bool(key, val);
        else if (key == "ga.population") cfg.ga.population = to_size(key, val);
        else if (key == "ga.generations") cfg.ga.generations = to_size(key, val);
        else if (key == "ga.crossover_rate") cfg.ga.crossover_rate = to_double(key, val);
        else if (key == "ga.mutation_rate") cfg.ga.mutation_rate = to_double(key, val);
        else if (key == "ga.rng_seed") cfg.ga.rng_seed = static_cast<std::uint64_t>(to_size(key, val));
        else if (key == "ga.a_min") cfg.ga.a_min = to_double(key, val);
        else if (key == "ga.a_max") cfg.ga.a_max = to_double(key, val);
        else if (key == "ga.gamma_min") cfg.ga.gamma_min = to_double(key, val);
        else if (key == "ga.gamma_max") cfg.ga.gamma_max = to_double(key, val);
        else if (key == "ga.eta1") cfg.ga.eta1 = to_double(key, val);
        else if (key == "ga.eta2") cfg.ga.eta2 = to_double(key, val);
        else if (key == "markov.state_count") cfg.markov.state_count = to_size(key, val);
        else if (key == "markov.partition_rule") {
            if (val == "equal_width") cfg.markov.partition_rule = PartitionRule::equal_width;
            else if (val == "quantile") cfg.markov.partition_rule = PartitionRule::quantile;
            else throw ConfigError(key + ": expected equal_width|quantile");
        } else if (key == "markov.max_order") cfg.markov.max_order = to_size(key, val);
        else if (key == "markov.significance") cfg.markov.significance = to_double(key, val);
        else if (key == "combine.methods") {
            cfg.combine.methods.clear();
            for (auto part : split(val, ','))
                if (!trim(part).empty()) cfg.combine.methods.emplace_back(trim(part));
        } else if (key == "combine.identification_coefficient")
            cfg.combine.identification_coefficient = to_double(key, val);
        else if (key == "combine.rough_set_classes") cfg.combine.rough_set_classes = to_size(key, val);
        else if (key == "evaluate.feasibility_threshold") cfg.evaluate.feasibility_threshold = to_double(key, val);
        else if (key == "evaluate.subjective_weights") {
            cfg.evaluate.subjective_weights.clear();
            for (auto part : split(val, ','))
                cfg.evaluate.subjective_weights.push_back(to_double(key, std::string(trim(part))));
        } else if (key == "evaluate.theil_classical") cfg.evaluate.theil_classical = to_bool(key, val);
        else throw ConfigError("unknown config key '" + key + "' (line " + std::to_string(line_no) + ")");
    }

    cfg.validate();
    return cfg;
}

/// Serializes every resolved value in a fixed order. Reruns under the same
/// inputs must produce byte-identical snapshots.
inline std::string config_snapshot(const RunConfig& cfg) {
    std::ostringstream out;
    out << "embedding.mode = " << (cfg.embedding.mode == EmbeddingMode::automatic ? "auto" : "fixed") << '\n'
        << "embedding.tau = " << cfg.embedding.tau << '\n'
        << "embedding.dim = " << cfg.embedding.dim << '\n'
        << "embedding.ami_bins = " << cfg.embedding.ami_bins << '\n'
        << "embedding.max_lag = " << cfg.embedding.max_lag << '\n'
        << "embedding.max_dim = " << cfg.embedding.max_dim << '\n'
        << "embedding.fnn_threshold_percent = " << format_exact(cfg.embedding.fnn_threshold_percent) << '\n'
        << "embedding.fnn_distance_threshold = " << format_exact(cfg.embedding.fnn_distance_threshold) << '\n'
        << "embedding.delay_rule = "
        << (cfg.embedding.delay_rule == DelayRule::first_local_min ? "first_local_min" : "global_min") << '\n'
        << "wavelet.family = " << cfg.wavelet.family << '\n'
        << "wavelet.level = " << cfg.wavelet.level << '\n'
        << "wavelet.threshold_rule = " << cfg.wavelet.threshold_rule << '\n'
        << "wavelet.enabled = " << (cfg.wavelet.enabled ? "true" : "false") << '\n'
        << "svm.kernel_kind = " << cfg.svm.kernel_kind << '\n'
        << "svm.a1 = " << format_exact(cfg.svm.a1) << '\n'
        << "svm.gamma1 = " << format_exact(cfg.svm.gamma1) << '\n'
        << "svm.a2 = " << format_exact(cfg.svm.a2) << '\n'
        << "svm.gamma2 = " << format_exact(cfg.svm.gamma2) << '\n'
        << "svm.a_ohlc = " << format_exact(cfg.svm.a_ohlc) << '\n'
        << "svm.gamma_ohlc = " << format_exact(cfg.svm.gamma_ohlc) << '\n'
        << "svm.tune = " << (cfg.svm.tune ? "true" : "false") << '\n'
        << "ga.population = " << cfg.ga.population << '\n'
        << "ga.generations = " << cfg.ga.generations << '\n'
        << "ga.crossover_rate = " << format_exact(cfg.ga.crossover_rate) << '\n'
        << "ga.mutation_rate = " << format_exact(cfg.ga.mutation_rate) << '\n'
        << "ga.rng_seed = " << cfg.ga.rng_seed << '\n'
        << "ga.a_min = " << format_exact(cfg.ga.a_min) << '\n'
        << "ga.a_max = " << format_exact(cfg.ga.a_max) << '\n'
        << "ga.gamma_min = " << format_exact(cfg.ga.gamma_min) << '\n'
        << "ga.gamma_max = " << format_exact(cfg.ga.gamma_max) << '\n'
        << "ga.eta1 = " << format_exact(cfg.ga.eta1) << '\n'
        << "ga.eta2 = " << format_exact(cfg.ga.eta2) << '\n'
        << "markov.state_count = " << cfg.markov.state_count << '\n'
        << "markov.partition_rule = "
        << (cfg.markov.partition_rule == PartitionRule::quantile ? "quantile" : "equal_width") << '\n'
        << "markov.max_order = " << cfg.markov.max_order << '\n'
        << "markov.significance = " << format_exact(cfg.markov.significance) << '\n';
    out << "combine.methods = ";
    for (std::size_t i = 0; i < cfg.combine.methods.size(); ++i)
        out << (i ? "," : "") << cfg.combine.methods[i];
    out << '\n'
        << "combine.identification_coefficient = " << format_exact(cfg.combine.identification_coefficient) << '\n'
        << "combine.rough_set_classes = " << cfg.combine.rough_set_classes << '\n'
        << "evaluate.feasibility_threshold = " << format_exact(cfg.evaluate.feasibility_threshold) << '\n';
    out << "evaluate.subjective_weights = ";
    for (std::size_t i = 0; i < cfg.evaluate.subjective_weights.size(); ++i)
        out << (i ? "," : "") << format_exact(cfg.evaluate.subjective_weights[i]);
    out << '\n'
        << "evaluate.theil_classical = " << (cfg.evaluate.theil_classical ? "true" : "false") << '\n';
    return out.str();
}

} // namespace greycast

#endif
