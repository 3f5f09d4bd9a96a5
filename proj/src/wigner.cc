#include "subplanck/wigner.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subplanck {

namespace {

constexpr double kPadding = 4.0;

std::size_t odd_count(double width, double max_step) {
    auto n = static_cast<std::size_t>(std::ceil(width / max_step)) + 1;
    n = std::max<std::size_t>(n, 3);
    return (n % 2 == 0) ? n + 1 : n;
}

bool step_resolves(double step, double alpha_max) {
    if (alpha_max <= 0) {
        return true;
    }
    return step <= std::numbers::pi / (8 * alpha_max);
}

// Per-point kernel shared by the parallel and serial paths.
inline double wigner_point(std::span<const CoherentTerm> terms, complex z, double &imag_residue) {
    complex w = 0;
    for (const auto &tk : terms) {
        for (const auto &tl : terms) {
            w += tk.weight * std::conj(tl.weight) * cross_wigner(tk.amplitude, tl.amplitude, z);
        }
    }
    imag_residue = std::abs(w.imag());
    return w.real();
}

WignerField empty_field(const CoherentSuperposition &state, const PhaseSpaceGrid &grid) {
    WignerField f{grid, std::vector<double>(grid.size(), 0.0)};
    f.underresolved = !grid.resolves(state);
    return f;
}

// Trapezoid weight for index i of n samples taken with stride `stride`.
inline double trap_weight(std::size_t i, std::size_t last) {
    return (i == 0 || i == last) ? 0.5 : 1.0;
}

// Sum over rows iy (stride s) of sum over columns ix (stride s) of f(ix, iy)
// with trapezoid weights; the row loop is the unit of parallelism.
template <typename F>
double trapezoid_rows(const PhaseSpaceGrid &g, std::size_t stride, bool parallel, F &&f) {
    std::size_t nxs = (g.nx() - 1) / stride + 1;
    std::size_t nys = (g.ny() - 1) / stride + 1;
    std::vector<double> rows(nys, 0.0);
    auto row_sum = [&](std::size_t jy) {
        double acc = 0;
        for (std::size_t jx = 0; jx < nxs; ++jx) {
            acc += trap_weight(jx, nxs - 1) * f(jx * stride, jy * stride);
        }
        rows[jy] = trap_weight(jy, nys - 1) * acc;
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t jy = 0; jy < static_cast<std::ptrdiff_t>(nys); ++jy) {
            row_sum(static_cast<std::size_t>(jy));
        }
    } else {
        for (std::size_t jy = 0; jy < nys; ++jy) {
            row_sum(jy);
        }
    }
    double total = 0;
    for (double r : rows) {
        total += r;
    }
    return total * (g.dx() * stride) * (g.dy() * stride) / std::numbers::pi;
}

template <typename F>
QuadratureResult richardson(const PhaseSpaceGrid &g, bool parallel, F &&f) {
    QuadratureResult out;
    out.value = trapezoid_rows(g, 1, parallel, f);
    double coarse = trapezoid_rows(g, 2, parallel, f);
    out.error_estimate = std::abs(out.value - coarse) / 3.0;
    return out;
}

void check_same_grid(const WignerField &a, const WignerField &b) {
    if (!a.grid.same_lattice(b.grid)) {
        throw std::invalid_argument("Wigner fields live on different grids");
    }
}

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(double re_min, double re_max, double im_min, double im_max, std::size_t nx,
                               std::size_t ny, double alpha_max)
    : re_min_(re_min), re_max_(re_max), im_min_(im_min), im_max_(im_max), nx_(nx), ny_(ny), alpha_max_(alpha_max) {
    if (nx < 2 || ny < 2) {
        throw std::invalid_argument("phase-space grid needs at least 2 points per axis");
    }
    if (!(re_min < re_max) || !(im_min < im_max)) {
        throw std::invalid_argument("phase-space grid bounds must be ordered");
    }
    resolved_ = step_resolves(step(), alpha_max_);
}

double PhaseSpaceGrid::step() const {
    return std::max(dx(), dy());
}

bool PhaseSpaceGrid::resolves(const CoherentSuperposition &state) const {
    return step_resolves(step(), state.max_amplitude());
}

complex PhaseSpaceGrid::point(std::size_t ix, std::size_t iy) const {
    return {re_min_ + static_cast<double>(ix) * dx(), im_min_ + static_cast<double>(iy) * dy()};
}

bool PhaseSpaceGrid::same_lattice(const PhaseSpaceGrid &o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && re_min_ == o.re_min_ && re_max_ == o.re_max_ && im_min_ == o.im_min_ &&
           im_max_ == o.im_max_;
}

PhaseSpaceGrid PhaseSpaceGrid::auto_sized(std::span<const CoherentSuperposition> states) {
    if (states.empty()) {
        throw std::invalid_argument("auto-sized grid needs at least one state");
    }
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY, amax = 0;
    for (const auto &s : states) {
        for (const auto &t : s.terms()) {
            lo_x = std::min(lo_x, t.amplitude.real());
            hi_x = std::max(hi_x, t.amplitude.real());
            lo_y = std::min(lo_y, t.amplitude.imag());
            hi_y = std::max(hi_y, t.amplitude.imag());
        }
        amax = std::max(amax, s.max_amplitude());
    }
    double h = std::numbers::pi / (16 * std::max(amax, 1.0));
    lo_x -= kPadding;
    hi_x += kPadding;
    lo_y -= kPadding;
    hi_y += kPadding;
    return PhaseSpaceGrid(lo_x, hi_x, lo_y, hi_y, odd_count(hi_x - lo_x, h), odd_count(hi_y - lo_y, h), amax);
}

PhaseSpaceGrid PhaseSpaceGrid::auto_sized(const CoherentSuperposition &state) {
    return auto_sized(std::span<const CoherentSuperposition>(&state, 1));
}

double WignerField::max_abs() const {
    double m = 0;
    for (double v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

complex cross_wigner(complex alpha_k, complex alpha_l, complex point) {
    // Single exponent so huge Gaussian and tiny overlap factors never separate.
    complex e = -0.5 * (std::norm(alpha_k) + std::norm(alpha_l)) + std::conj(alpha_l) * alpha_k -
                2.0 * (point - alpha_k) * std::conj(point - alpha_l);
    return 2.0 * std::exp(e);
}

WignerField wigner_field(const CoherentSuperposition &state, const PhaseSpaceGrid &grid) {
    auto psi = state.normalized();
    WignerField f = empty_field(state, grid);
    std::vector<double> residue(grid.ny(), 0.0);
    auto terms = psi.terms();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t iy = 0; iy < static_cast<std::ptrdiff_t>(grid.ny()); ++iy) {
        double worst = 0;
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
            double r;
            f.values[iy * grid.nx() + ix] = wigner_point(terms, grid.point(ix, iy), r);
            worst = std::max(worst, r);
        }
        residue[iy] = worst;
    }
    f.max_imag_residue = *std::max_element(residue.begin(), residue.end());
    return f;
}

WignerField wigner_field_serial(const CoherentSuperposition &state, const PhaseSpaceGrid &grid) {
    auto psi = state.normalized();
    WignerField f = empty_field(state, grid);
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
        for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
            double r;
            f.values[iy * grid.nx() + ix] = wigner_point(psi.terms(), grid.point(ix, iy), r);
            f.max_imag_residue = std::max(f.max_imag_residue, r);
        }
    }
    return f;
}

WignerField field_product(const WignerField &a, const WignerField &b) {
    check_same_grid(a, b);
    WignerField out{a.grid, std::vector<double>(a.values.size())};
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = a.values[i] * b.values[i];
    }
    out.underresolved = a.underresolved || b.underresolved;
    out.max_imag_residue = std::max(a.max_imag_residue, b.max_imag_residue);
    return out;
}

QuadratureResult field_integral(const WignerField &w) {
    const auto nx = w.grid.nx();
    auto q = richardson(w.grid, true, [&](std::size_t ix, std::size_t iy) { return w.values[iy * nx + ix]; });
    q.underresolved = w.underresolved;
    return q;
}

QuadratureResult phase_space_overlap(const WignerField &w1, const WignerField &w2) {
    check_same_grid(w1, w2);
    const auto nx = w1.grid.nx();
    auto q = richardson(w1.grid, true, [&](std::size_t ix, std::size_t iy) {
        return w1.values[iy * nx + ix] * w2.values[iy * nx + ix];
    });
    q.underresolved = w1.underresolved || w2.underresolved;
    return q;
}

QuadratureResult phase_space_overlap_serial(const WignerField &w1, const WignerField &w2) {
    check_same_grid(w1, w2);
    const auto &g = w1.grid;
    auto integrate = [&](std::size_t stride) {
        std::size_t nxs = (g.nx() - 1) / stride + 1;
        std::size_t nys = (g.ny() - 1) / stride + 1;
        double total = 0;
        for (std::size_t jy = 0; jy < nys; ++jy) {
            for (std::size_t jx = 0; jx < nxs; ++jx) {
                std::size_t i = jy * stride * g.nx() + jx * stride;
                total += trap_weight(jx, nxs - 1) * trap_weight(jy, nys - 1) * w1.values[i] * w2.values[i];
            }
        }
        return total * (g.dx() * stride) * (g.dy() * stride) / std::numbers::pi;
    };
    QuadratureResult q;
    q.value = integrate(1);
    q.error_estimate = std::abs(q.value - integrate(2)) / 3.0;
    q.underresolved = w1.underresolved || w2.underresolved;
    return q;
}

}  // namespace subplanck
