#ifndef GREYCAST_GA_HPP
#define GREYCAST_GA_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "greycast/errors.hpp"
#include "greycast/rng.hpp"
#include "greycast/svm.hpp"

namespace greycast {

struct GaConfig {
    std::size_t population = 20;
    std::size_t generations = 30;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    std::uint64_t rng_seed = 1;
    double a_min = 1e-3, a_max = 10.0;
    double gamma_min = 1.0, gamma_max = 2000.0;
    double eta1 = 0.3, eta2 = 0.7;

    void validate() {
        if (population < 2) throw ConfigError("ga: population must be >= 2");
        if (!(a_min > 0.0 && a_min < a_max)) throw ConfigError("ga: kernel parameter bounds invalid");
        if (!(gamma_min > 0.0 && gamma_min < gamma_max)) throw ConfigError("ga: gamma bounds invalid");
        if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("ga: crossover_rate outside [0,1]");
        if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("ga: mutation_rate outside [0,1]");
        double s = eta1 + eta2;
        if (!(s > 0.0)) throw ConfigError("ga: eta weights must have positive sum");
        eta1 /= s;
        eta2 /= s;
    }
};

struct FitnessReport {
    double best_a = 0.0;
    double best_gamma = 0.0;
    double best_fitness = -std::numeric_limits<double>::infinity();
    std::vector<double> history; // best-so-far after init and each generation
    double rmse_calibration = 0.0;
    double rmse_fitting = 0.0;
};

namespace detail {

inline double rmse(const LsSvmModel& model, const SupervisedSet& data) {
    double s = 0.0;
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        double e = predict(model, data.inputs[i]) - data.targets[i];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(data.inputs.size()));
}

} // namespace detail

/// Composite fitness -(eta1 * RMSE_calibration + eta2 * RMSE_fitting):
/// RMSE_fitting measured on the training set, RMSE_calibration on the
/// held-out calibration set. Maximizing it minimizes the weighted error.
inline double fitness(const SupervisedSet& data_fit, const SupervisedSet& data_cal, const KernelSpec& spec,
                      double gamma, double eta1, double eta2, double* rmse_cal_out = nullptr,
                      double* rmse_fit_out = nullptr) {
    LsSvmModel model = train(data_fit, spec, gamma);
    double rmse_fit = detail::rmse(model, data_fit);
    double rmse_cal = detail::rmse(model, data_cal);
    if (rmse_cal_out) *rmse_cal_out = rmse_cal;
    if (rmse_fit_out) *rmse_fit_out = rmse_fit;
    return -(eta1 * rmse_cal + eta2 * rmse_fit);
}

/// Real-coded GA over (a, gamma): tournament-2 selection, BLX-0.5 crossover,
/// Gaussian mutation at 10% of each range, one elite. Every random draw
/// comes from a substream keyed by (generation, slot), so results do not
/// depend on evaluation order and repeat bit-exactly for a fixed seed.
/// Individuals whose evaluation throws get fitness -inf.
inline FitnessReport tune_objective(const std::function<double(double, double)>& objective, GaConfig config) {
    config.validate();
    const std::size_t p = config.population;

    struct Individual {
        double a, gamma, fitness;
    };

    auto evaluate = [&](double a, double g) -> double {
        try {
            double f = objective(a, g);
            return std::isfinite(f) ? f : -std::numeric_limits<double>::infinity();
        } catch (const std::exception&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    std::vector<Individual> pop(p);
    for (std::size_t i = 0; i < p; ++i) {
        Rng rng = Rng::substream(config.rng_seed, 0, i);
        pop[i].a = rng.uniform(config.a_min, config.a_max);
        pop[i].gamma = rng.uniform(config.gamma_min, config.gamma_max);
        pop[i].fitness = evaluate(pop[i].a, pop[i].gamma);
    }

    Individual best = pop[0];
    for (const auto& ind : pop)
        if (ind.fitness > best.fitness) best = ind;

    FitnessReport report;
    report.history.push_back(best.fitness);

    const double a_range = config.a_max - config.a_min;
    const double g_range = config.gamma_max - config.gamma_min;

    for (std::size_t gen = 1; gen <= config.generations; ++gen) {
        std::vector<Individual> next(p);
        next[0] = best; // elite carryover keeps the history monotone
        for (std::size_t slot = 1; slot < p; ++slot) {
            Rng rng = Rng::substream(config.rng_seed, gen, slot);
            auto tournament = [&]() -> const Individual& {
                const Individual& c1 = pop[rng.below(p)];
                const Individual& c2 = pop[rng.below(p)];
                return c1.fitness >= c2.fitness ? c1 : c2;
            };
            const Individual& p1 = tournament();
            const Individual& p2 = tournament();

            double a, g;
            if (rng.uniform() < config.crossover_rate) {
                auto blend = [&](double x1, double x2) {
                    double lo = std::min(x1, x2), hi = std::max(x1, x2);
                    double d = hi - lo;
                    return rng.uniform(lo - 0.5 * d, hi + 0.5 * d);
                };
                a = blend(p1.a, p2.a);
                g = blend(p1.gamma, p2.gamma);
            } else {
                a = p1.a;
                g = p1.gamma;
            }
            if (rng.uniform() < config.mutation_rate) a += rng.gaussian() * 0.1 * a_range;
            if (rng.uniform() < config.mutation_rate) g += rng.gaussian() * 0.1 * g_range;
            a = std::clamp(a, config.a_min, config.a_max);
            g = std::clamp(g, config.gamma_min, config.gamma_max);
            next[slot] = {a, g, evaluate(a, g)};
        }
        pop = std::move(next);
        for (const auto& ind : pop)
            if (ind.fitness > best.fitness) best = ind;
        report.history.push_back(best.fitness);
    }

    report.best_a = best.a;
    report.best_gamma = best.gamma;
    report.best_fitness = best.fitness;
    return report;
}

/// GA search for the (kernel width, gamma) couple maximizing the composite
/// fitness on a fit/calibration split.
inline FitnessReport tune(const SupervisedSet& data_fit, const SupervisedSet& data_cal, KernelKind kind,
                          GaConfig config) {
    config.validate();
    auto objective = [&](double a, double gamma) {
        KernelSpec spec;
        spec.kind = kind;
        spec.param = a;
        return fitness(data_fit, data_cal, spec, gamma, config.eta1, config.eta2);
    };
    FitnessReport report = tune_objective(objective, config);
    if (std::isfinite(report.best_fitness)) {
        KernelSpec spec;
        spec.kind = kind;
        spec.param = report.best_a;
        fitness(data_fit, data_cal, spec, report.best_gamma, config.eta1, config.eta2,
                &report.rmse_calibration, &report.rmse_fitting);
    }
    return report;
}

/// Calibration split used by the tuner: the last ceil(0.2 N) supervised
/// pairs form the calibration set, the rest the fit set.
inline std::pair<SupervisedSet, SupervisedSet> calibration_split(const SupervisedSet& all) {
    all.validate();
    const std::size_t n = all.inputs.size();
    std::size_t cal = (n + 4) / 5; // ceil(0.2 n)
    if (cal == 0) cal = 1;
    if (cal >= n) throw DataError("calibration_split: too few samples to split");
    SupervisedSet fit, calset;
    fit.inputs.assign(all.inputs.begin(), all.inputs.end() - static_cast<std::ptrdiff_t>(cal));
    fit.targets.assign(all.targets.begin(), all.targets.end() - static_cast<std::ptrdiff_t>(cal));
    calset.inputs.assign(all.inputs.end() - static_cast<std::ptrdiff_t>(cal), all.inputs.end());
    calset.targets.assign(all.targets.end() - static_cast<std::ptrdiff_t>(cal), all.targets.end());
    return {fit, calset};
}

} // namespace greycast

#endif
