#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "cli/output.h"
#include "subplanck/estimation.h"
#include "subplanck/jaynes_cummings.h"
#include "subplanck/metrology.h"
#include "subplanck/protocol.h"
#include "subplanck/rng.h"
#include "subplanck/wigner.h"

namespace subplanck::cli {

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

bool finite(complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

std::vector<double> resolved_gammas(const RunConfig &c) {
    return c.gammas.empty() ? std::vector<double>(c.m, 0.0) : c.gammas;
}

std::string join(const std::vector<double> &values) {
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k) {
        s += (k ? "," : "") + format_real(values[k]);
    }
    return s.empty() ? "none" : s;
}

std::string flag(bool b) {
    return b ? "true" : "false";
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        v[k] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return v;
}

CoherentSuperposition make_state(const RunConfig &c) {
    return make_circular_state(c.alpha, c.m, resolved_gammas(c));
}

bool is_rotation(const RunConfig &c) {
    return c.pert == "rotation";
}

/// Displacement direction when --phi is absent.
double default_direction(const RunConfig &c, bool along_alpha) {
    return std::arg(c.alpha) + (along_alpha ? 0.0 : std::numbers::pi / 2);
}

PerturbationSpec make_perturbation(const RunConfig &c, double magnitude, bool along_alpha = false) {
    if (is_rotation(c)) {
        return PerturbationSpec::rotation(magnitude);
    }
    return PerturbationSpec::displacement(magnitude, c.phi.value_or(default_direction(c, along_alpha)));
}

ConfigEntries state_entries(const RunConfig &c) {
    return {{"alpha", format_complex(c.alpha)}, {"m", std::to_string(c.m)}, {"gammas", join(resolved_gammas(c))}};
}

void emit(const RunConfig &c, const std::string &text, std::ostream &out) {
    if (c.out.empty()) {
        out << text;
    } else {
        write_file_atomic(c.out, text);
    }
}

FringeConvention convention_of(const RunConfig &c) {
    return c.convention == "resonant" ? FringeConvention::resonant : FringeConvention::dispersive;
}

}  // namespace

void validate(const RunConfig &c) {
    static const std::vector<std::string> commands{"wigner", "overlap", "protocol", "estimate", "feasibility"};
    require(std::find(commands.begin(), commands.end(), c.subcommand) != commands.end(),
            "unknown subcommand '" + c.subcommand + "'");
    const std::string &cmd = c.subcommand;

    require(finite(c.alpha), "--alpha must be finite");
    require(c.m >= 1, "--m must be >= 1");
    require(c.gammas.empty() || c.gammas.size() == static_cast<std::size_t>(c.m),
            "--gammas needs exactly M values");
    for (double g : c.gammas) {
        require(std::isfinite(g), "--gammas must be finite");
    }
    require(c.pert == "displacement" || c.pert == "rotation", "--pert must be displacement or rotation");
    require(std::isfinite(c.s) && c.s >= 0, "--s must be finite and >= 0");
    require(std::isfinite(c.theta) && c.theta >= 0, "--theta must be finite and >= 0");
    require(!c.phi || std::isfinite(*c.phi), "--phi must be finite");
    require(c.image.empty() || cmd == "wigner", "--image applies to wigner only");

    if (cmd == "wigner") {
        if (c.bounds) {
            const auto &b = *c.bounds;
            require(b[0] < b[1] && b[2] < b[3], "--grid needs re_min < re_max and im_min < im_max");
            require(c.nx >= 2 && c.ny >= 2, "--grid needs --nx and --ny >= 2");
        } else {
            require(c.nx == 0 && c.ny == 0, "--nx/--ny need --grid; omit all three for an auto-sized grid");
        }
    }
    if (cmd == "overlap" || cmd == "protocol") {
        require(std::isfinite(c.lo) && std::isfinite(c.hi) && c.lo >= 0 && c.lo <= c.hi,
                "--lo/--hi must satisfy 0 <= lo <= hi");
        require(c.points >= 2, "--points must be >= 2");
    }
    if (cmd == "protocol") {
        require(c.regime == "dispersive" || c.regime == "resonant", "--regime must be dispersive or resonant");
        require(c.model == "linearized" || c.model == "exact", "--model must be linearized or exact");
        require(c.dt_fraction > 0 && c.dt_fraction <= 1, "--dt-fraction must lie in (0, 1]");
        require(std::abs(c.alpha) > 0, "--alpha must be nonzero");
        require(!c.detuning || (std::isfinite(*c.detuning) && c.omega0 > 0),
                "--detuning must be finite with --omega0 > 0");
    }
    if (cmd == "estimate") {
        require(std::abs(c.alpha) > 0, "--alpha must be nonzero");
        require(c.repetitions >= 1, "--repetitions must be >= 1");
        require(c.trials >= 1, "--trials must be >= 1");
        require(c.convention == "dispersive" || c.convention == "resonant",
                "--convention must be dispersive or resonant");
        require(!c.true_s || (std::isfinite(*c.true_s) && *c.true_s >= 0), "--true-s must be finite and >= 0");
        for (double n : c.nbar_sweep) {
            require(std::isfinite(n) && n > 0, "--nbar-sweep values must be positive");
        }
        require(c.nbar_sweep.empty() || c.nbar_sweep.size() >= 2, "--nbar-sweep needs at least two values");
    }
    if (cmd == "feasibility") {
        require(c.platform == "cavity" || c.platform == "ion", "--platform must be cavity or ion");
        require(c.rabi_period ? *c.rabi_period > 0 : c.omega0 > 0, "--omega0 / --rabi-period must be positive");
        require(c.nbar > 0, "--nbar must be positive");
        require(c.budget > 0, "--budget must be positive");
    }
}

int cmd_wigner(const RunConfig &c, std::ostream &out, std::ostream &diag) {
    validate(c);
    const auto psi = make_state(c);
    std::vector<CoherentSuperposition> states{psi};
    const double magnitude = is_rotation(c) ? c.theta : c.s;
    if (c.product) {
        states.push_back(apply_perturbation(psi, make_perturbation(c, magnitude)));
    }
    double amax = 0;
    for (const auto &s : states) {
        amax = std::max(amax, s.max_amplitude());
    }
    const PhaseSpaceGrid grid = c.bounds ? PhaseSpaceGrid((*c.bounds)[0], (*c.bounds)[1], (*c.bounds)[2],
                                                          (*c.bounds)[3], c.nx, c.ny, amax)
                                         : PhaseSpaceGrid::auto_sized(states);

    WignerField field = wigner_field(states[0], grid);
    if (c.product) {
        field = field_product(field, wigner_field(states[1], grid));
    }
    if (field.underresolved || !grid.resolved()) {
        diag << "warning: grid step " << format_real(grid.step()) << " exceeds pi/(8|alpha|max) = "
             << format_real(std::numbers::pi / (8 * std::max(amax, 1.0))) << "; fringes are underresolved\n";
    }
    const QuadratureResult integral = field_integral(field);

    ConfigEntries e = state_entries(c);
    e.insert(e.end(), {{"product", flag(c.product)},
                       {"pert", c.pert},
                       {is_rotation(c) ? "theta" : "s", format_real(magnitude)}});
    if (c.product && !is_rotation(c)) {
        e.emplace_back("phi", format_real(c.phi.value_or(default_direction(c, false))));
    }
    e.insert(e.end(), {{"re_min", format_real(grid.re_min())},
                       {"re_max", format_real(grid.re_max())},
                       {"im_min", format_real(grid.im_min())},
                       {"im_max", format_real(grid.im_max())},
                       {"nx", std::to_string(grid.nx())},
                       {"ny", std::to_string(grid.ny())}});

    CsvTable table(config_comment("wigner", e), {"re", "im", "w"});
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
            complex z = grid.point(ix, iy);
            table.add_row({z.real(), z.imag(), field.at(ix, iy)});
        }
    }
    table.add_comment("integral=" + format_real(integral.value) +
                      " error_estimate=" + format_real(integral.error_estimate));

    if (!c.image.empty()) {
        write_file_atomic(c.image, encode_pgm(field));
    }
    emit(c, table.str(), out);
    if (!c.out.empty()) {
        out << "integral " << format_real(integral.value) << "\n";
    }
    return 0;
}

int cmd_overlap(const RunConfig &c, std::ostream &out, std::ostream &) {
    validate(c);
    SweepSetup setup;
    setup.alpha = c.alpha;
    setup.m = c.m;
    setup.gammas = resolved_gammas(c);
    setup.kind = is_rotation(c) ? PerturbationKind::rotation : PerturbationKind::displacement;
    setup.direction = c.phi.value_or(default_direction(c, false));
    const auto rows = overlap_sweep(setup, c.lo, c.hi, c.points);

    ConfigEntries e = state_entries(c);
    e.emplace_back("pert", c.pert);
    if (!is_rotation(c)) {
        e.emplace_back("phi", format_real(setup.direction));
    } else {
        e.emplace_back("displaced_by_alpha", "true");
    }
    e.insert(e.end(), {{"lo", format_real(c.lo)},
                       {"hi", format_real(c.hi)},
                       {"points", std::to_string(c.points)},
                       {"quadrature", flag(c.quadrature)}});

    std::vector<std::string> header{"magnitude", "exact", "approx"};
    if (c.quadrature) {
        header.push_back("quadrature");
    }
    CsvTable table(config_comment("overlap", e), header);
    const auto psi = setup.state();
    for (const auto &row : rows) {
        std::vector<std::string> cells{format_real(row.magnitude), format_real(row.exact), format_real(row.approx)};
        if (c.quadrature) {
            std::vector<CoherentSuperposition> pair{psi, apply_perturbation(psi, setup.perturbation(row.magnitude))};
            auto grid = PhaseSpaceGrid::auto_sized(pair);
            auto q = phase_space_overlap(wigner_field(pair[0], grid), wigner_field(pair[1], grid));
            cells.push_back(format_real(q.value));
        }
        table.add_row(cells);
    }
    emit(c, table.str(), out);
    return 0;
}

int cmd_protocol(const RunConfig &c, std::ostream &out, std::ostream &diag) {
    validate(c);
    const bool resonant = c.regime == "resonant";
    const auto model = c.model == "exact" ? PerturbationModel::exact : PerturbationModel::linearized;

    std::vector<std::array<double, 3>> rows;
    bool in_regime = true;
    for (double s : linspace(c.lo, c.hi, c.points)) {
        auto pert = make_perturbation(c, s, resonant);
        ProtocolResult r = resonant ? resonant_protocol(c.alpha, pert, c.dt_fraction)
                                    : dispersive_protocol(c.alpha, pert, model);
        in_regime = in_regime && r.in_regime;
        rows.push_back({s, r.p_e, r.p_g});
    }
    if (!in_regime) {
        diag << "warning: part of the sweep lies outside the weak-perturbation regime\n";
    }

    ConfigEntries e{{"regime", c.regime}, {"alpha", format_complex(c.alpha)}, {"pert", c.pert}};
    if (!is_rotation(c)) {
        e.emplace_back("phi", format_real(c.phi.value_or(default_direction(c, resonant))));
    }
    if (resonant) {
        e.emplace_back("dt_fraction", format_real(c.dt_fraction));
    } else {
        e.emplace_back("model", c.model);
    }
    e.insert(e.end(), {{"lo", format_real(c.lo)},
                       {"hi", format_real(c.hi)},
                       {"points", std::to_string(c.points)},
                       {"in_regime", flag(in_regime)}});
    if (c.detuning) {
        JCParams jc{c.omega0, *c.detuning, std::norm(c.alpha), 0};
        e.insert(e.end(), {{"omega0", format_real(c.omega0)},
                           {"detuning", format_real(*c.detuning)},
                           {"jc_dispersive", flag(jc.dispersive_regime())}});
        if (!resonant && !jc.dispersive_regime()) {
            diag << "warning: detuning below 10 Omega0 sqrt(nbar); the dispersive model is not justified\n";
        }
    }

    CsvTable table(config_comment("protocol", e), {"s", "p_e", "p_g"});
    for (const auto &r : rows) {
        table.add_row({r[0], r[1], r[2]});
    }
    emit(c, table.str(), out);
    return 0;
}

int cmd_estimate(const RunConfig &c, std::ostream &out, std::ostream &diag) {
    validate(c);
    const auto conv = convention_of(c);
    const auto midpoint = [](double amag) { return std::numbers::pi / (8 * amag); };

    ConfigEntries e{{"alpha", format_complex(c.alpha)},
                    {"convention", c.convention},
                    {"repetitions", std::to_string(c.repetitions)},
                    {"trials", std::to_string(c.trials)},
                    {"seed", std::to_string(c.seed)}};

    if (c.nbar_sweep.empty()) {
        const double true_s = c.true_s.value_or(midpoint(std::abs(c.alpha)));
        e.emplace_back("true_s", format_real(true_s));
        auto cal = estimator_calibration(true_s, c.alpha, c.repetitions, c.trials, c.seed, conv);
        if (cal.boundary) {
            diag << "warning: true_s outside the open principal branch (0, pi/(4|alpha|)); the estimate is biased\n";
        }
        CsvTable table(config_comment("estimate", e), {"trial", "r", "s_tilde"});
        for (std::size_t k = 0; k < cal.trials.size(); ++k) {
            table.add_row({std::to_string(k), std::to_string(cal.trials[k].excited),
                           format_real(cal.trials[k].estimate)});
        }
        const std::string summary = "mean=" + format_real(cal.mean) +
                                    " empirical_sigma=" + format_real(cal.empirical_sigma) +
                                    " theory_sigma=" + format_real(cal.theory_sigma);
        table.add_comment("summary " + summary);
        emit(c, table.str(), out);
        if (!c.out.empty()) {
            out << "mean,empirical_sigma,theory_sigma\n"
                << format_real(cal.mean) << ',' << format_real(cal.empirical_sigma) << ','
                << format_real(cal.theory_sigma) << '\n';
        }
        return 0;
    }

    e.emplace_back("nbar_sweep", join(c.nbar_sweep));
    if (c.true_s) {
        e.emplace_back("true_s", format_real(*c.true_s));
    } else {
        e.emplace_back("true_s", "midpoint");
    }
    CsvTable table(config_comment("estimate", e),
                   {"nbar", "alpha_mag", "true_s", "mean", "empirical_sigma", "theory_sigma"});
    std::vector<double> sigmas;
    for (std::size_t k = 0; k < c.nbar_sweep.size(); ++k) {
        const double nbar = c.nbar_sweep[k];
        const complex alpha = std::polar(std::sqrt(nbar), std::arg(c.alpha));
        const double true_s = c.true_s.value_or(midpoint(std::abs(alpha)));
        auto cal = estimator_calibration(true_s, alpha, c.repetitions, c.trials, trial_seed(c.seed, k), conv);
        if (cal.boundary) {
            diag << "warning: true_s outside the principal branch at nbar " << format_real(nbar) << "\n";
        }
        sigmas.push_back(cal.empirical_sigma);
        table.add_row({nbar, std::abs(alpha), true_s, cal.mean, cal.empirical_sigma, cal.theory_sigma});
    }
    const double exponent = fit_power_law_exponent(c.nbar_sweep, sigmas);
    table.add_comment("summary sigma_exponent=" + format_real(exponent));
    emit(c, table.str(), out);
    if (!c.out.empty()) {
        out << "sigma_exponent " << format_real(exponent) << '\n';
    }
    return 0;
}

int cmd_feasibility(const RunConfig &c, std::ostream &out, std::ostream &) {
    validate(c);
    const double omega0 = c.rabi_period ? 2 * std::numbers::pi / *c.rabi_period : c.omega0;
    const auto platform = c.platform == "ion" ? Platform::ion : Platform::cavity;
    const FeasibilityReport rep = feasibility(omega0, c.nbar, c.budget, platform);

    ConfigEntries e{{"platform", c.platform},
                    {"omega0", format_real(omega0)},
                    {"nbar", format_real(c.nbar)},
                    {"budget", format_real(c.budget)}};
    std::string text = config_comment("feasibility", e) + "\n";
    text += "interaction_time_s " + format_real(rep.interaction_time) + "\n";
    text += "threshold_s " + format_real(rep.decoherence_threshold) + "\n";
    text += "ratio " + format_real(rep.ratio) + "\n";
    text += "verdict " + std::string(rep.verdict ? "pass" : "fail") + " (" + std::string(rep.tier) + ")\n";
    emit(c, text, out);
    return 0;
}

int run(const RunConfig &c, std::ostream &out, std::ostream &diag) {
    if (c.subcommand == "wigner") {
        return cmd_wigner(c, out, diag);
    }
    if (c.subcommand == "overlap") {
        return cmd_overlap(c, out, diag);
    }
    if (c.subcommand == "protocol") {
        return cmd_protocol(c, out, diag);
    }
    if (c.subcommand == "estimate") {
        return cmd_estimate(c, out, diag);
    }
    if (c.subcommand == "feasibility") {
        return cmd_feasibility(c, out, diag);
    }
    validate(c);
    return 2;
}

}  // namespace subplanck::cli
