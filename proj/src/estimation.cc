#include "subplanck/estimation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "subplanck/metrology.h"
#include "subplanck/protocol.h"
#include "subplanck/rng.h"

namespace subplanck {

namespace {

struct CalibrationSetup {
    double p_e;
    double alpha_mag;
    bool boundary;
};

CalibrationSetup prepare(double true_s, complex alpha, std::int64_t repetitions, std::int64_t n_trials,
                         FringeConvention convention) {
    if (repetitions < 1 || n_trials < 1) {
        throw std::invalid_argument("calibration needs R >= 1 and at least one trial");
    }
    if (!(true_s >= 0) || !std::isfinite(true_s)) {
        throw std::invalid_argument("calibration needs a finite true_s >= 0");
    }
    const double r = std::abs(alpha);
    ProtocolResult res = convention == FringeConvention::dispersive
                             ? dispersive_protocol(alpha, PerturbationSpec::orthogonal_to(alpha, true_s))
                             : resonant_protocol(alpha, PerturbationSpec::along(alpha, true_s));
    bool boundary = !(true_s > 0 && true_s < std::numbers::pi / (4 * r));
    return {std::clamp(res.p_e, 0.0, 1.0), r, boundary};
}

void summarize(CalibrationResult &out, std::int64_t repetitions, double alpha_mag) {
    double n = static_cast<double>(out.trials.size());
    double sum = 0;
    for (const auto &t : out.trials) {
        sum += t.estimate;
    }
    out.mean = sum / n;
    double ss = 0;
    for (const auto &t : out.trials) {
        ss += (t.estimate - out.mean) * (t.estimate - out.mean);
    }
    out.empirical_sigma = out.trials.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    out.theory_sigma = theory_sigma(repetitions, alpha_mag);
}

CalibrationTrial run_trial(const BinomialSampler &sampler, std::uint64_t seed, std::int64_t i, double alpha_mag,
                           FringeConvention convention) {
    Xoshiro256 rng(trial_seed(seed, static_cast<std::uint64_t>(i)));
    std::int64_t r = sampler(rng);
    return {r, estimate_displacement(r, sampler.trials(), alpha_mag, convention).estimate};
}

}  // namespace

double fringe_probability(double s, double alpha_mag, FringeConvention convention) {
    double c = std::cos(4 * alpha_mag * s);
    return convention == FringeConvention::dispersive ? (1 - c) / 2 : (1 + c) / 2;
}

std::int64_t simulate_readout(double p_e, std::int64_t repetitions, std::uint64_t seed, double detector_efficiency) {
    if (!(detector_efficiency >= 0 && detector_efficiency <= 1)) {
        throw std::invalid_argument("detector efficiency must lie in [0, 1]");
    }
    BinomialSampler sampler(repetitions, p_e * detector_efficiency);
    Xoshiro256 rng(seed);
    return sampler(rng);
}

double theory_sigma(std::int64_t repetitions, double alpha_mag) {
    return 1.0 / (8 * std::sqrt(static_cast<double>(repetitions) * alpha_mag * alpha_mag));
}

EstimationRun estimate_displacement(std::int64_t excited, std::int64_t repetitions, double alpha_mag,
                                    FringeConvention convention) {
    if (repetitions < 1) {
        throw std::invalid_argument("estimator needs R >= 1");
    }
    if (excited < 0 || excited > repetitions) {
        throw std::invalid_argument("excited count must satisfy 0 <= r <= R");
    }
    if (!(alpha_mag > 0)) {
        throw std::invalid_argument("estimator needs |alpha| > 0");
    }
    double xi = 2.0 * static_cast<double>(excited) / static_cast<double>(repetitions);
    double arg = convention == FringeConvention::dispersive ? 1 - xi : xi - 1;
    EstimationRun run;
    run.repetitions = repetitions;
    run.excited_count = excited;
    run.alpha_mag = alpha_mag;
    run.estimate = std::acos(std::clamp(arg, -1.0, 1.0)) / (4 * alpha_mag);
    run.sigma = theory_sigma(repetitions, alpha_mag);
    return run;
}

CalibrationResult estimator_calibration(double true_s, complex alpha, std::int64_t repetitions,
                                        std::int64_t n_trials, std::uint64_t seed, FringeConvention convention) {
    auto setup = prepare(true_s, alpha, repetitions, n_trials, convention);
    BinomialSampler sampler(repetitions, setup.p_e);
    CalibrationResult out;
    out.p_e = setup.p_e;
    out.boundary = setup.boundary;
    out.trials.resize(n_trials);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n_trials; ++i) {
        out.trials[i] = run_trial(sampler, seed, i, setup.alpha_mag, convention);
    }
    summarize(out, repetitions, setup.alpha_mag);
    return out;
}

CalibrationResult estimator_calibration_serial(double true_s, complex alpha, std::int64_t repetitions,
                                               std::int64_t n_trials, std::uint64_t seed,
                                               FringeConvention convention) {
    auto setup = prepare(true_s, alpha, repetitions, n_trials, convention);
    BinomialSampler sampler(repetitions, setup.p_e);
    CalibrationResult out;
    out.p_e = setup.p_e;
    out.boundary = setup.boundary;
    for (std::int64_t i = 0; i < n_trials; ++i) {
        out.trials.push_back(run_trial(sampler, seed, i, setup.alpha_mag, convention));
    }
    summarize(out, repetitions, setup.alpha_mag);
    return out;
}

double fit_power_law_exponent(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("power-law fit needs two equal-length series of length >= 2");
    }
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

FeasibilityReport feasibility(double omega0, double nbar, double decoherence_budget, Platform platform) {
    if (!(omega0 > 0) || !(nbar > 0) || !(decoherence_budget > 0)) {
        throw std::invalid_argument("feasibility inputs must all be positive");
    }
    FeasibilityReport rep;
    rep.interaction_time = 2 * std::numbers::pi * std::sqrt(nbar) / omega0;
    rep.decoherence_threshold =
        platform == Platform::cavity ? 2 * std::numbers::pi * std::pow(nbar, 1.5) / omega0 : rep.interaction_time;
    rep.ratio = decoherence_budget / rep.decoherence_threshold;
    rep.verdict = rep.ratio >= 10;
    rep.tier = rep.verdict ? "favorable" : (rep.ratio >= 1 ? "marginal" : "unfavorable");
    return rep;
}

}  // namespace subplanck
