#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "subplanck/states.h"

namespace subplanck {

/// Which fringe the readout follows, and hence which arccos inversion applies.
///   dispersive: P_e = [1 - cos(4|a|s)]/2,  s~ = arccos(1 - 2r/R) / 4|a|
///   resonant:   P_e = [1 + cos(4|a|s)]/2,  s~ = arccos(2r/R - 1) / 4|a|
enum class FringeConvention { dispersive, resonant };

double fringe_probability(double s, double alpha_mag, FringeConvention convention);

struct EstimationRun {
    std::int64_t repetitions = 0;
    std::int64_t excited_count = 0;
    double estimate = 0;
    double sigma = 0;
    double alpha_mag = 0;
    std::uint64_t seed = 0;
};

/// Number of |e> outcomes in R repetitions, r ~ Binomial(R, efficiency * p_e),
/// reproducible from (p_e, R, seed).
std::int64_t simulate_readout(double p_e, std::int64_t repetitions, std::uint64_t seed,
                              double detector_efficiency = 1.0);

/// 1 / (8 sqrt(R nbar)), nbar = |alpha|^2.
double theory_sigma(std::int64_t repetitions, double alpha_mag);

/// Principal-branch arccos inversion; 2r/R is clamped to [0, 2] first.
/// Throws std::invalid_argument if r > R, r < 0 or R < 1.
EstimationRun estimate_displacement(std::int64_t excited, std::int64_t repetitions, double alpha_mag,
                                    FringeConvention convention = FringeConvention::dispersive);

struct CalibrationTrial {
    std::int64_t excited;
    double estimate;
};

struct CalibrationResult {
    double p_e = 0;
    double mean = 0;
    double empirical_sigma = 0;
    double theory_sigma = 0;
    /// true_s outside the open principal branch (0, pi / 4|a|): the arccos
    /// fold biases the estimate.
    bool boundary = false;
    std::vector<CalibrationTrial> trials;
};

/// n_trials full pipelines: protocol P_e -> binomial readout -> estimator.
/// The dispersive convention drives the dispersive protocol with s
/// orthogonal to alpha; the resonant one drives the resonant protocol with s
/// along alpha. Trial i uses trial_seed(seed, i), and trials run in parallel.
CalibrationResult estimator_calibration(double true_s, complex alpha, std::int64_t repetitions,
                                        std::int64_t n_trials, std::uint64_t seed,
                                        FringeConvention convention = FringeConvention::dispersive);
/// Single-threaded reference; identical output.
CalibrationResult estimator_calibration_serial(double true_s, complex alpha, std::int64_t repetitions,
                                               std::int64_t n_trials, std::uint64_t seed,
                                               FringeConvention convention = FringeConvention::dispersive);

/// Least-squares slope of log y against log x.
double fit_power_law_exponent(std::span<const double> x, std::span<const double> y);

enum class Platform { cavity, ion };

struct FeasibilityReport {
    /// Interaction time T = 2 pi sqrt(nbar) / Omega0.
    double interaction_time = 0;
    /// Cavity: 2 pi nbar^{3/2} / Omega0 (cat decoherence is nbar times
    /// faster than field damping). Ion: T itself.
    double decoherence_threshold = 0;
    double ratio = 0;
    /// ratio >= 10.
    bool verdict = false;
    /// "favorable" (ratio >= 10), "marginal" (>= 1) or "unfavorable".
    std::string_view tier;
};

/// Throws std::invalid_argument unless all inputs are positive.
FeasibilityReport feasibility(double omega0, double nbar, double decoherence_budget, Platform platform);

}  // namespace subplanck
