#pragma once

#include <optional>
#include <vector>

#include "subplanck/metrology.h"
#include "subplanck/states.h"

namespace subplanck {

enum class Level { e, g };

/// How the weak perturbation acts on coherent components during a protocol.
enum class PerturbationModel {
    /// Each component |c> only picks up the phase of <c|U|c> to first order:
    /// 2 Im(beta c*) for D(beta), theta |c|^2 for R(theta). This is the
    /// bookkeeping behind the closed-form final states; it makes the fringe
    /// laws exact.
    linearized,
    /// Exact unitary action through coherent-state algebra.
    exact,
};

struct Branch {
    complex weight{0, 0};
    /// Normalized; empty when weight == 0.
    CoherentSuperposition state;
};

/// TLS (x) oscillator state w_e |e, psi_e> + w_g |g, psi_g>.
struct HybridState {
    Branch e;
    Branch g;

    /// Splits unnormalized branch vectors into weights and normalized states.
    static HybridState from_branches(const CoherentSuperposition &e_part, const CoherentSuperposition &g_part);
    static HybridState product(Level level, const CoherentSuperposition &field);

    const Branch &branch(Level level) const { return level == Level::e ? e : g; }
    /// w * psi for one level.
    CoherentSuperposition part(Level level) const;
    double p_e() const { return std::norm(e.weight); }
    double p_g() const { return std::norm(g.weight); }
    /// <level, c| Psi>.
    complex amplitude(Level level, complex c) const;
};

complex inner_product(const HybridState &a, const HybridState &b);
double fidelity(const HybridState &a, const HybridState &b);

struct ProtocolResult {
    HybridState final;
    double p_e = 0;
    double p_g = 0;
    /// State right before the perturbation.
    std::optional<HybridState> intermediate;
    /// False when the inputs are outside the validity regime of the model.
    bool in_regime = true;
};

/// Dispersive cavity sequence: pi/2 pulse, conditional phase |g,a> -> |g,-a>,
/// [D(alpha) for rotations], perturbation, exact inverse of the preparation.
/// Starts from |g, alpha>. P_e = [1 - cos(4 |alpha| s)]/2 in the linearized
/// model, where s is the displacement component orthogonal to alpha (or
/// theta |alpha| for rotations).
ProtocolResult dispersive_protocol(complex alpha, const PerturbationSpec &pert,
                                   PerturbationModel model = PerturbationModel::linearized);

/// Resonant sequence: JC evolution for dt_fraction * T_R / 2, perturbation,
/// sigma_z kick, same evolution again. Starts from |e, alpha>. The
/// interaction is modeled by the semiclassical two-branch map whose
/// dt_fraction = 1 image is the factorized field-cat (x) atom state.
/// P_e = [1 + cos(4 |alpha| s_eff)]/2 with s_eff = s sin(pi dt_fraction / 2)
/// and s the displacement component along alpha (theta |alpha| for
/// rotations). Throws std::invalid_argument unless 0 < dt_fraction <= 1.
ProtocolResult resonant_protocol(complex alpha, const PerturbationSpec &pert, double dt_fraction = 1.0);

/// One analytically invertible operation of the preparation unitary U.
struct ProtocolStep {
    enum class Kind { pi_half_pulse, conditional_phase, displacement, rotation, sigma_z_kick };
    Kind kind;
    /// Displacement amount; rotation / conditional-phase angle in real().
    complex parameter{0, 0};

    static ProtocolStep pi_half_pulse() { return {Kind::pi_half_pulse}; }
    /// R(angle) on the g branch only.
    static ProtocolStep conditional_phase(double angle) { return {Kind::conditional_phase, angle}; }
    static ProtocolStep displacement(complex amount) { return {Kind::displacement, amount}; }
    static ProtocolStep rotation(double angle) { return {Kind::rotation, angle}; }
    static ProtocolStep sigma_z_kick() { return {Kind::sigma_z_kick}; }
};

struct UnitaryDescriptor {
    std::vector<ProtocolStep> steps;
    Level initial_level = Level::e;
};

/// Step list of the dispersive sequence (pi/2, conditional pi phase, and
/// D(alpha) when `for_rotation`), starting in g.
UnitaryDescriptor dispersive_descriptor(complex alpha, bool for_rotation);

/// |Psi_f> = U^dag U_pert U |level, alpha> for a composable step list.
/// Checks internally that |<e,alpha|Psi_f>|^2 = P_e |<alpha|psi_e>|^2.
/// Throws std::invalid_argument on non-finite step parameters.
ProtocolResult generic_strategy(const UnitaryDescriptor &u, const PerturbationSpec &pert, complex alpha,
                                PerturbationModel model = PerturbationModel::linearized);

/// Applies the perturbation to one oscillator state under the given model.
CoherentSuperposition perturb(const CoherentSuperposition &state, const PerturbationSpec &pert,
                              PerturbationModel model);

}  // namespace subplanck
