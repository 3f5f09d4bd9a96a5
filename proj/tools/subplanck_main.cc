// subplanck: phase-space sensitivity experiments from the command line.

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cli/commands.h"
#include "cli/output.h"

namespace {

using subplanck::cli::RunConfig;

struct RawArgs {
    std::string alpha = "0+4i";
    std::vector<double> grid;
};

void add_state_options(CLI::App *cmd, RunConfig &c, RawArgs &raw) {
    cmd->add_option("--alpha", raw.alpha, "Circle amplitude, a+bi")->capture_default_str();
    cmd->add_option("--m", c.m, "Number of coherent components M")->capture_default_str();
    cmd->add_option("--gammas", c.gammas, "Component phases, comma separated (default all 0)")->delimiter(',');
}

void add_perturbation_options(CLI::App *cmd, RunConfig &c) {
    cmd->add_option("--pert", c.pert, "displacement | rotation")->capture_default_str();
    cmd->add_option("--phi", c.phi, "Absolute displacement direction in radians (default orthogonal to alpha)");
}

void add_sweep_options(CLI::App *cmd, RunConfig &c) {
    cmd->add_option("--lo", c.lo, "Sweep start (s or theta)")->capture_default_str();
    cmd->add_option("--hi", c.hi, "Sweep end")->capture_default_str();
    cmd->add_option("--points", c.points, "Sweep points")->capture_default_str();
}

}  // namespace

int main(int argc, char **argv) {
    RunConfig c;
    RawArgs raw;

    CLI::App app{"Sub-Planck phase-space structure: Wigner fields, overlaps, readout protocols, estimation"};
    app.require_subcommand(1);

    auto *wigner = app.add_subcommand("wigner", "Wigner field of a circular state as CSV and graymap");
    add_state_options(wigner, c, raw);
    add_perturbation_options(wigner, c);
    wigner->add_flag("--product", c.product, "Multiply by the field of the perturbed state");
    wigner->add_option("--s", c.s, "Displacement size")->capture_default_str();
    wigner->add_option("--theta", c.theta, "Rotation angle")->capture_default_str();
    wigner->add_option("--grid", raw.grid, "re_min,re_max,im_min,im_max (default auto-sized)")
        ->delimiter(',')
        ->expected(4);
    wigner->add_option("--nx", c.nx, "Grid columns, with --grid");
    wigner->add_option("--ny", c.ny, "Grid rows, with --grid");
    wigner->add_option("--image", c.image, "Graymap output path (P5)");

    auto *overlap = app.add_subcommand("overlap", "Exact and approximate overlap sweep");
    add_state_options(overlap, c, raw);
    add_perturbation_options(overlap, c);
    add_sweep_options(overlap, c);
    overlap->add_flag("--quadrature", c.quadrature, "Add a phase-space quadrature column");

    auto *protocol = app.add_subcommand("protocol", "Readout probabilities of the TLS protocols");
    protocol->add_option("--alpha", raw.alpha, "Coherent amplitude, a+bi")->capture_default_str();
    add_perturbation_options(protocol, c);
    add_sweep_options(protocol, c);
    protocol->add_option("--regime", c.regime, "dispersive | resonant")->capture_default_str();
    protocol->add_option("--model", c.model, "Dispersive perturbation model: linearized | exact")
        ->capture_default_str();
    protocol->add_option("--dt-fraction", c.dt_fraction, "Resonant interaction time as a fraction of T_R/2")
        ->capture_default_str();
    protocol->add_option("--omega0", c.omega0, "Vacuum Rabi frequency (s^-1), for the regime check")
        ->capture_default_str();
    protocol->add_option("--detuning", c.detuning, "Detuning delta (s^-1); enables the regime check");

    auto *estimate = app.add_subcommand("estimate", "Monte Carlo calibration of the displacement estimator");
    estimate->add_option("--alpha", raw.alpha, "Coherent amplitude, a+bi")->capture_default_str();
    estimate->add_option("--repetitions,-R", c.repetitions, "Readout repetitions per trial")->capture_default_str();
    estimate->add_option("--trials", c.trials, "Independent trials")->capture_default_str();
    estimate->add_option("--seed", c.seed, "Master seed")->capture_default_str();
    estimate->add_option("--true-s", c.true_s, "True displacement (default mid-fringe pi/(8|alpha|))");
    estimate->add_option("--convention", c.convention, "Fringe convention: dispersive | resonant")
        ->capture_default_str();
    estimate->add_option("--nbar-sweep", c.nbar_sweep, "Mean photon numbers, comma separated; fits the sigma exponent")
        ->delimiter(',');

    auto *feas = app.add_subcommand("feasibility", "Interaction time against decoherence budget");
    feas->add_option("--omega0", c.omega0, "Vacuum Rabi frequency (s^-1)")->capture_default_str();
    feas->add_option("--rabi-period", c.rabi_period, "2 pi / Omega0 in s; overrides --omega0");
    feas->add_option("--nbar", c.nbar, "Mean photon number")->capture_default_str();
    feas->add_option("--budget", c.budget, "Decoherence time budget in s")->capture_default_str();
    feas->add_option("--platform", c.platform, "cavity | ion")->capture_default_str();

    for (auto *cmd : {wigner, overlap, protocol, estimate, feas}) {
        cmd->add_option("--out,-o", c.out, "Output path (default stdout)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "subplanck: error: " << e.what() << "\n";
        return 2;
    }

    try {
        c.subcommand = app.get_subcommands().front()->get_name();
        c.alpha = subplanck::cli::parse_complex(raw.alpha);
        if (!raw.grid.empty()) {
            c.bounds = std::array<double, 4>{raw.grid[0], raw.grid[1], raw.grid[2], raw.grid[3]};
        }
        subplanck::cli::validate(c);
        return subplanck::cli::run(c, std::cout, std::cerr);
    } catch (const std::invalid_argument &e) {
        std::cerr << "subplanck: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "subplanck: failure: " << e.what() << "\n";
        return 1;
    }
}
