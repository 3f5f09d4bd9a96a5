#include "subplanck/metrology.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subplanck {

namespace {

constexpr double kMaxRegimeShift = 0.3;     // s << 1
constexpr double kMaxRegimeRotation = 0.5;  // theta << 1/(2|alpha|), as a fraction
constexpr double kMinRegimeAlpha = 2.0;

bool covers(complex center, double radius, std::span<const complex> pts) {
    double slack = 1e-12 * (1 + radius);
    return std::all_of(pts.begin(), pts.end(), [&](complex p) { return std::abs(p - center) <= radius + slack; });
}

}  // namespace

PerturbationSpec PerturbationSpec::displacement(double s, double phi) {
    return {PerturbationKind::displacement, s, phi};
}

PerturbationSpec PerturbationSpec::orthogonal_to(complex alpha, double s) {
    return displacement(s, std::arg(alpha) + std::numbers::pi / 2);
}

PerturbationSpec PerturbationSpec::along(complex alpha, double s) {
    return displacement(s, std::arg(alpha));
}

PerturbationSpec PerturbationSpec::rotation(double theta) {
    return {PerturbationKind::rotation, theta, 0};
}

complex PerturbationSpec::beta() const {
    return kind == PerturbationKind::displacement ? std::polar(magnitude, direction) : complex{0, 0};
}

void PerturbationSpec::validate() const {
    if (!std::isfinite(magnitude) || magnitude < 0 || !std::isfinite(direction)) {
        throw std::invalid_argument("perturbation magnitude must be finite and >= 0");
    }
}

bool PerturbationSpec::in_regime(double alpha_mag) const {
    if (alpha_mag < kMinRegimeAlpha) {
        return false;
    }
    if (kind == PerturbationKind::displacement) {
        return magnitude <= kMaxRegimeShift;
    }
    return magnitude * 2 * alpha_mag <= kMaxRegimeRotation;
}

CoherentSuperposition apply_perturbation(const CoherentSuperposition &state, const PerturbationSpec &pert) {
    pert.validate();
    if (pert.kind == PerturbationKind::displacement) {
        return displace(state, pert.beta());
    }
    return rotate(state, pert.magnitude);
}

ApproxOverlap approx_overlap(int m, complex alpha, std::span<const double> gammas, const PerturbationSpec &pert) {
    if (m < 1) {
        throw std::invalid_argument("approx_overlap needs M >= 1");
    }
    if (!gammas.empty() && gammas.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument("approx_overlap: gammas length must equal M");
    }
    pert.validate();
    double r = std::abs(alpha);
    double s = pert.magnitude;
    double rel = pert.direction - std::arg(alpha);
    if (pert.kind == PerturbationKind::rotation) {
        s = pert.magnitude * r;
        rel = std::numbers::pi / 2;
    }
    double sum = m;
    for (int k = 1; k <= m; ++k) {
        double phi_k = 2 * std::numbers::pi * k / m;
        for (int l = k + 1; l <= m; ++l) {
            double phi_l = 2 * std::numbers::pi * l / m;
            double a_kl = std::sin(rel - phi_k) - std::sin(rel - phi_l);
            sum += 2 * std::cos(2 * s * a_kl * r);
        }
    }
    return {sum / (static_cast<double>(m) * m), pert.in_regime(r)};
}

double exact_overlap(const CoherentSuperposition &state, const PerturbationSpec &pert) {
    auto psi = state.normalized();
    return std::norm(inner_product(psi, apply_perturbation(psi, pert)));
}

double min_enclosing_radius(std::span<const complex> pts) {
    if (pts.empty()) {
        return 0;
    }
    double best = INFINITY;
    auto consider = [&](complex c, double rad) {
        if (rad < best && covers(c, rad, pts)) {
            best = rad;
        }
    };
    consider(pts[0], 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            complex c = 0.5 * (pts[i] + pts[j]);
            consider(c, std::abs(pts[i] - c));
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                complex b = pts[j] - pts[i];
                complex d = pts[k] - pts[i];
                double den = 2 * (b.real() * d.imag() - b.imag() * d.real());
                if (std::abs(den) < 1e-15) {
                    continue;
                }
                double bb = std::norm(b), dd = std::norm(d);
                complex u{(d.imag() * bb - b.imag() * dd) / den, (b.real() * dd - d.real() * bb) / den};
                consider(pts[i] + u, std::abs(u));
            }
        }
    }
    return best;
}

SensitivityReport sensitivity_report(const CoherentSuperposition &state) {
    auto psi = state.normalized().simplified();
    std::vector<complex> pts;
    for (const auto &t : psi.terms()) {
        pts.push_back(t.amplitude);
    }
    SensitivityReport rep;
    rep.nbar = mean_excitation(psi);
    double r = min_enclosing_radius(pts);
    rep.support_action = std::max(r * r, 1.0);
    rep.structure_area = 1.0 / rep.support_action;
    double n = std::max(rep.nbar, 1e-300);
    rep.sql_displacement = 1.0;
    rep.sql_rotation = 1.0 / std::sqrt(n);
    rep.heisenberg_displacement = 1.0 / std::sqrt(n);
    rep.heisenberg_rotation = 1.0 / n;
    return rep;
}

CoherentSuperposition SweepSetup::state() const {
    std::vector<double> g = gammas.empty() ? std::vector<double>(m, 0.0) : gammas;
    auto s = make_circular_state(alpha, m, g);
    if (kind == PerturbationKind::rotation && displace_for_rotation) {
        s = displace(s, alpha);
    }
    return s;
}

PerturbationSpec SweepSetup::perturbation(double magnitude) const {
    if (kind == PerturbationKind::rotation) {
        return PerturbationSpec::rotation(magnitude);
    }
    return PerturbationSpec::displacement(magnitude, direction);
}

std::vector<SweepRow> overlap_sweep(const SweepSetup &setup, double lo, double hi, std::size_t n_points) {
    if (n_points < 2) {
        throw std::invalid_argument("overlap sweep needs at least 2 points");
    }
    if (!(lo <= hi)) {
        throw std::invalid_argument("overlap sweep range must satisfy lo <= hi");
    }
    auto psi = setup.state();
    std::vector<double> g = setup.gammas.empty() ? std::vector<double>(setup.m, 0.0) : setup.gammas;
    std::vector<SweepRow> rows(n_points);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_points); ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        auto pert = setup.perturbation(x);
        rows[i] = {x, exact_overlap(psi, pert), approx_overlap(setup.m, setup.alpha, g, pert).value};
    }
    return rows;
}

double first_minimum(std::span<const SweepRow> rows) {
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (rows[i].exact <= rows[i - 1].exact && rows[i].exact < rows[i + 1].exact) {
            return rows[i].magnitude;
        }
    }
    return -1;
}

double refine_minimum(const std::function<double(double)> &f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace subplanck
