#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subplanck/states.h"

namespace subplanck {

/// Rectangular sample lattice over the phase-space variable z = x + i y.
///
/// Point (ix, iy) sits at x = re_min + ix * dx, y = im_min + iy * dy.
/// `resolved` records whether the coarser of the two steps satisfies
/// h <= pi / (8 |a|max) for the amplitude scale supplied at construction,
/// which is what keeps fringes of the Wigner function sampled.
class PhaseSpaceGrid {
   public:
    PhaseSpaceGrid(double re_min, double re_max, double im_min, double im_max, std::size_t nx, std::size_t ny,
                   double alpha_max);

    /// Bounding box of all amplitudes padded by 4 vacuum widths, steps
    /// h <= pi / (16 |a|max) and odd point counts.
    static PhaseSpaceGrid auto_sized(std::span<const CoherentSuperposition> states);
    static PhaseSpaceGrid auto_sized(const CoherentSuperposition &state);

    double re_min() const { return re_min_; }
    double re_max() const { return re_max_; }
    double im_min() const { return im_min_; }
    double im_max() const { return im_max_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    double dx() const { return (re_max_ - re_min_) / static_cast<double>(nx_ - 1); }
    double dy() const { return (im_max_ - im_min_) / static_cast<double>(ny_ - 1); }
    double step() const;
    double alpha_max() const { return alpha_max_; }
    bool resolved() const { return resolved_; }
    /// Whether `state`'s amplitudes are resolved by this grid's step.
    bool resolves(const CoherentSuperposition &state) const;

    complex point(std::size_t ix, std::size_t iy) const;
    std::size_t size() const { return nx_ * ny_; }

    bool same_lattice(const PhaseSpaceGrid &other) const;

   private:
    double re_min_, re_max_, im_min_, im_max_;
    std::size_t nx_, ny_;
    double alpha_max_;
    bool resolved_;
};

/// Wigner samples on a grid, values[iy * nx + ix]. Normalized so that
/// (1/pi) * integral W = 1 and a coherent state peaks at 2.
struct WignerField {
    PhaseSpaceGrid grid;
    std::vector<double> values;
    /// Set when the grid step does not resolve the sampled state's fringes.
    bool underresolved = false;
    /// Largest |Im W| seen before the imaginary part was dropped.
    double max_imag_residue = 0;

    double at(std::size_t ix, std::size_t iy) const { return values[iy * grid.nx() + ix]; }
    double max_abs() const;
};

/// Weyl symbol of |a_k><a_l| at z: 2 <a_l|a_k> exp(-2 (z - a_k)(z* - a_l*)).
/// cross_wigner(a, a, a) = 2 and (1/pi) * integral = <a_l|a_k>.
complex cross_wigner(complex alpha_k, complex alpha_l, complex point);

/// W(z) of the normalized state. Grid rows are evaluated in parallel.
WignerField wigner_field(const CoherentSuperposition &state, const PhaseSpaceGrid &grid);
/// Single-threaded reference with the same per-point arithmetic.
WignerField wigner_field_serial(const CoherentSuperposition &state, const PhaseSpaceGrid &grid);

/// Pointwise product of two fields on the same grid.
WignerField field_product(const WignerField &a, const WignerField &b);

struct QuadratureResult {
    double value = 0;
    /// Richardson estimate |I_h - I_2h| / 3 from the half-resolution subgrid.
    double error_estimate = 0;
    bool underresolved = false;
};

/// (1/pi) * trapezoid integral of a field over its grid.
QuadratureResult field_integral(const WignerField &w);

/// (1/pi) * integral of w1 * w2 by the 2-D composite trapezoid rule; equals
/// |<psi1|psi2>|^2 for pure states. Throws std::invalid_argument when the
/// grids differ. Row partial sums run in parallel and are reduced in row
/// order, so the result does not depend on the thread count.
QuadratureResult phase_space_overlap(const WignerField &w1, const WignerField &w2);
QuadratureResult phase_space_overlap_serial(const WignerField &w1, const WignerField &w2);

}  // namespace subplanck
