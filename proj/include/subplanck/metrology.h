#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "subplanck/states.h"

namespace subplanck {

enum class PerturbationKind { displacement, rotation };

/// A weak perturbation: D(beta) with beta = s e^{i phi} (phi measured
/// absolutely in phase space), or R(theta).
struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::displacement;
    double magnitude = 0;
    double direction = 0;

    static PerturbationSpec displacement(double s, double phi);
    /// Displacement of size s orthogonal to alpha: beta = i alpha s / |alpha|.
    static PerturbationSpec orthogonal_to(complex alpha, double s);
    /// Displacement of size s along alpha: beta = alpha s / |alpha|.
    static PerturbationSpec along(complex alpha, double s);
    static PerturbationSpec rotation(double theta);

    complex beta() const;
    /// Throws std::invalid_argument on negative or non-finite magnitude.
    void validate() const;
    /// Whether the small-perturbation approximations apply for amplitude |alpha|.
    bool in_regime(double alpha_mag) const;
};

/// Applies the perturbation unitary exactly.
CoherentSuperposition apply_perturbation(const CoherentSuperposition &state, const PerturbationSpec &pert);

struct ApproxOverlap {
    double value = 0;
    bool in_regime = true;
};

/// (1/M^2)[M + sum_k sum_{l>k} 2 cos(2 s a_kl |alpha|)] with
/// a_kl = sin(phi' - phi_k) - sin(phi' - phi_l), phi' = phi - arg(alpha).
/// Rotations map to s = theta |alpha| orthogonal to alpha.
/// The gamma phases drop out of the formula; the span is validated only.
ApproxOverlap approx_overlap(int m, complex alpha, std::span<const double> gammas, const PerturbationSpec &pert);

/// |<psi|U|psi>|^2 by exact coherent-state algebra.
double exact_overlap(const CoherentSuperposition &state, const PerturbationSpec &pert);

struct SensitivityReport {
    double nbar = 0;
    /// Minimum-enclosing-disk area of the amplitudes in units of the
    /// Planck cell (measure d^2 z / pi), floored at one coherent cell.
    double support_action = 0;
    /// a = 1 / A.
    double structure_area = 0;
    double sql_displacement = 1;
    double sql_rotation = 0;
    double heisenberg_displacement = 0;
    double heisenberg_rotation = 0;
};

SensitivityReport sensitivity_report(const CoherentSuperposition &state);

/// Radius of the smallest disk containing every point.
double min_enclosing_radius(std::span<const complex> points);

struct SweepSetup {
    complex alpha{0, 4};
    int m = 2;
    std::vector<double> gammas;  // empty means all zero
    PerturbationKind kind = PerturbationKind::displacement;
    /// Absolute displacement direction; ignored for rotations.
    double direction = 0;
    /// For rotations, sweep the state displaced by D(alpha) so its circle
    /// passes through the origin.
    bool displace_for_rotation = true;

    CoherentSuperposition state() const;
    PerturbationSpec perturbation(double magnitude) const;
};

struct SweepRow {
    double magnitude;
    double exact;
    double approx;
};

/// n_points evenly spaced magnitudes in [lo, hi], both pipelines per point.
std::vector<SweepRow> overlap_sweep(const SweepSetup &setup, double lo, double hi, std::size_t n_points);

/// Magnitude of the first interior local minimum of the exact column, or a
/// negative value when the sweep has none.
double first_minimum(std::span<const SweepRow> rows);

/// Golden-section refinement of a minimum of f bracketed by [a, b].
double refine_minimum(const std::function<double(double)> &f, double a, double b, double tol = 1e-10);

}  // namespace subplanck
