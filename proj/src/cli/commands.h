#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subplanck/states.h"

namespace subplanck::cli {

/// Everything a subcommand needs. Defaults are the ones shown by --help.
struct RunConfig {
    std::string subcommand;

    // State: normalized sum_k e^{i gamma_k} |e^{2 pi i k / M} alpha>.
    complex alpha{0, 4};
    int m = 2;
    std::vector<double> gammas;  // empty: all zero

    // Perturbation.
    std::string pert = "displacement";  // displacement | rotation
    double s = 0;                       // displacement size
    double theta = 0;                   // rotation angle
    std::optional<double> phi;          // absolute displacement direction; default orthogonal to alpha

    // Wigner grid; auto-sized unless bounds are given.
    bool product = false;
    std::optional<std::array<double, 4>> bounds;  // re_min, re_max, im_min, im_max
    std::size_t nx = 0, ny = 0;

    // Sweeps (overlap, protocol).
    double lo = 0;
    double hi = 0.4;
    std::size_t points = 81;
    bool quadrature = false;

    // Protocol.
    std::string regime = "dispersive";  // dispersive | resonant
    std::string model = "linearized";   // linearized | exact
    double dt_fraction = 1;
    std::optional<double> detuning;     // delta, with omega0, for the regime check

    // Estimation.
    std::int64_t repetitions = 10000;
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    std::optional<double> true_s;       // default: mid-fringe pi / (8 |alpha|)
    std::string convention = "dispersive";
    std::vector<double> nbar_sweep;

    // Feasibility.
    double omega0 = 3e5;
    std::optional<double> rabi_period;  // 2 pi / Omega0, overrides omega0
    double nbar = 20;
    double budget = 15e-3;
    std::string platform = "cavity";    // cavity | ion

    // Output.
    std::string out;    // CSV / report path; stdout when empty
    std::string image;  // wigner only: graymap path
};

/// Checks every field the subcommand uses. Throws std::invalid_argument.
void validate(const RunConfig &config);

/// Each returns the process exit code. Results go to config.out (or `out`),
/// warnings to `diag`.
int cmd_wigner(const RunConfig &config, std::ostream &out, std::ostream &diag);
int cmd_overlap(const RunConfig &config, std::ostream &out, std::ostream &diag);
int cmd_protocol(const RunConfig &config, std::ostream &out, std::ostream &diag);
int cmd_estimate(const RunConfig &config, std::ostream &out, std::ostream &diag);
int cmd_feasibility(const RunConfig &config, std::ostream &out, std::ostream &diag);

/// Dispatches on config.subcommand.
int run(const RunConfig &config, std::ostream &out, std::ostream &diag);

}  // namespace subplanck::cli
