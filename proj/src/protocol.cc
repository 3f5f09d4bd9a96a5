#include "subplanck/protocol.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subplanck {

namespace {

constexpr double kNullBranch = 1e-300;
const double kInvSqrt2 = 1 / std::numbers::sqrt2;

// Unnormalized TLS (x) oscillator vector, one coherent superposition per level.
struct Joint {
    CoherentSuperposition e;
    CoherentSuperposition g;

    Joint tidy() const { return {e.simplified(), g.simplified()}; }
};

// Symmetric, self-inverse: |g> -> (|e> + |g>)/sqrt2, |e> -> (-|e> + |g>)/sqrt2.
Joint pi_half_pulse(const Joint &j) {
    return Joint{j.e.scaled(-kInvSqrt2) + j.g.scaled(kInvSqrt2), j.e.scaled(kInvSqrt2) + j.g.scaled(kInvSqrt2)}
        .tidy();
}

Joint apply_step(const Joint &j, const ProtocolStep &step, bool inverse) {
    double sign = inverse ? -1.0 : 1.0;
    switch (step.kind) {
        case ProtocolStep::Kind::pi_half_pulse:
            return pi_half_pulse(j);
        case ProtocolStep::Kind::conditional_phase:
            return {j.e, rotate(j.g, sign * step.parameter.real())};
        case ProtocolStep::Kind::displacement:
            return {displace(j.e, sign * step.parameter), displace(j.g, sign * step.parameter)};
        case ProtocolStep::Kind::rotation:
            return {rotate(j.e, sign * step.parameter.real()), rotate(j.g, sign * step.parameter.real())};
        case ProtocolStep::Kind::sigma_z_kick:
            return {j.e, j.g.scaled(-1.0)};
    }
    throw std::invalid_argument("unknown protocol step");
}

Joint perturb(const Joint &j, const PerturbationSpec &pert, PerturbationModel model) {
    return Joint{perturb(j.e, pert, model), perturb(j.g, pert, model)}.tidy();
}

HybridState to_hybrid(const Joint &j) {
    auto h = HybridState::from_branches(j.e, j.g);
    // Absorb roundoff in the overall norm so P_e + P_g = 1.
    double total = std::sqrt(h.p_e() + h.p_g());
    h.e.weight /= total;
    h.g.weight /= total;
    return h;
}

ProtocolResult finish(const Joint &final, const Joint &intermediate, bool in_regime) {
    ProtocolResult r;
    r.final = to_hybrid(final);
    r.p_e = r.final.p_e();
    r.p_g = r.final.p_g();
    r.intermediate = to_hybrid(intermediate);
    r.in_regime = in_regime;
    return r;
}

// Phase that the linearized perturbation gives a component at c.
double linearized_phase(complex c, const PerturbationSpec &pert) {
    if (pert.kind == PerturbationKind::displacement) {
        return 2 * (pert.beta() * std::conj(c)).imag();
    }
    return pert.magnitude * std::norm(c);
}

}  // namespace

HybridState HybridState::from_branches(const CoherentSuperposition &e_part, const CoherentSuperposition &g_part) {
    HybridState h;
    auto fill = [](Branch &b, const CoherentSuperposition &part) {
        auto simple = part.simplified();
        double n2 = simple.empty() ? 0.0 : simple.norm_squared();
        if (n2 <= kNullBranch) {
            b = Branch{};
            return;
        }
        b.weight = std::sqrt(n2);
        b.state = simple.scaled(1 / std::sqrt(n2));
    };
    fill(h.e, e_part);
    fill(h.g, g_part);
    return h;
}

HybridState HybridState::product(Level level, const CoherentSuperposition &field) {
    auto psi = field.normalized();
    return level == Level::e ? from_branches(psi, {}) : from_branches({}, psi);
}

CoherentSuperposition HybridState::part(Level level) const {
    const Branch &b = branch(level);
    return b.state.scaled(b.weight);
}

complex HybridState::amplitude(Level level, complex c) const {
    return inner_product(CoherentSuperposition::coherent(c), part(level));
}

complex inner_product(const HybridState &a, const HybridState &b) {
    return inner_product(a.part(Level::e), b.part(Level::e)) + inner_product(a.part(Level::g), b.part(Level::g));
}

double fidelity(const HybridState &a, const HybridState &b) {
    return std::norm(inner_product(a, b));
}

CoherentSuperposition perturb(const CoherentSuperposition &state, const PerturbationSpec &pert,
                              PerturbationModel model) {
    if (model == PerturbationModel::exact) {
        return apply_perturbation(state, pert);
    }
    pert.validate();
    std::vector<CoherentTerm> terms(state.terms().begin(), state.terms().end());
    for (auto &t : terms) {
        t.weight *= std::polar(1.0, linearized_phase(t.amplitude, pert));
    }
    return CoherentSuperposition(std::move(terms));
}

ProtocolResult dispersive_protocol(complex alpha, const PerturbationSpec &pert, PerturbationModel model) {
    pert.validate();
    const bool rotation = pert.kind == PerturbationKind::rotation;
    auto field = CoherentSuperposition::coherent(alpha);

    // pi/2 pulse on |g>: both levels carry |alpha> / sqrt2.
    Joint j{field.scaled(kInvSqrt2), field.scaled(kInvSqrt2)};
    // Omega0^2 T / (4 delta) = pi: the g level sees exp(i pi a^dag a).
    j.g = rotate(j.g, std::numbers::pi);
    if (rotation) {
        // (|e,2a> + |g,0>)/sqrt2
        j = {displace(j.e, alpha), displace(j.g, alpha)};
    }
    Joint intermediate = j;

    j = perturb(j, pert, model);

    if (rotation) {
        j = {displace(j.e, -alpha), displace(j.g, -alpha)};
    }
    j.g = rotate(j.g, -std::numbers::pi);
    j = pi_half_pulse(j);

    bool in_regime = std::abs(alpha) >= 2 && pert.in_regime(std::abs(alpha));
    return finish(j.tidy(), intermediate, in_regime);
}

ProtocolResult resonant_protocol(complex alpha, const PerturbationSpec &pert, double dt_fraction) {
    if (!(dt_fraction > 0 && dt_fraction <= 1)) {
        throw std::invalid_argument("dt_fraction must lie in (0, 1]");
    }
    pert.validate();
    const double nbar = std::norm(alpha);
    const double half_angle = std::numbers::pi * dt_fraction / 2;  // phi / 2
    const double chi = std::arg(alpha);
    const complex b = std::polar(1.0, -chi);
    const complex i{0, 1};

    // Semiclassical branches: |e,a> = (|+,a> + |-,a>)/sqrt2 with
    // |+-,a> = (|e> +- b|g>)/sqrt2 (x) |a>. Under the JC evolution branch +-
    // carries the field to a e^{-+i phi/2}, the atom to
    // (|e> +- e^{-i chi_+-}|g>)/sqrt2 with chi_+- = chi -+ phi/2, and a phase
    // p_+- = -+i e^{-+i pi nbar f / 2}; at f = 1 this is the factorized
    // state [e^{-i pi nbar/2}|-i a> - e^{i pi nbar/2}|i a>]/sqrt2 (x) phi_A.
    struct ResonantBranch {
        double sign;
        complex field;
        complex phase;
        complex g_ratio;  // atom coefficient of |g> relative to |e>
    };
    std::array<ResonantBranch, 2> branches{{
        {+1.0, alpha * std::polar(1.0, -half_angle), -i * std::polar(1.0, -std::numbers::pi * nbar * dt_fraction / 2),
         std::polar(1.0, -(chi - half_angle))},
        {-1.0, alpha * std::polar(1.0, half_angle), i * std::polar(1.0, std::numbers::pi * nbar * dt_fraction / 2),
         -std::polar(1.0, -(chi + half_angle))},
    }};

    Joint intermediate;
    for (const auto &br : branches) {
        auto f = CoherentSuperposition::coherent(br.field).scaled(br.phase * 0.5);
        intermediate.e = intermediate.e + f;
        intermediate.g = intermediate.g + f.scaled(br.g_ratio);
    }
    intermediate = intermediate.tidy();

    // The linearized perturbation is diagonal in the branches; rotations act
    // on the field pre-displaced by eta = -i alpha, which D(-eta) undoes exactly.
    const complex eta = -i * alpha;
    std::array<double, 2> kicks{};
    for (std::size_t k = 0; k < 2; ++k) {
        complex c = branches[k].field;
        if (pert.kind == PerturbationKind::rotation) {
            c += eta;
        }
        kicks[k] = linearized_phase(c, pert);
    }

    // U^dag maps each branch back to |+-, alpha>; the kick then flips g.
    auto field = CoherentSuperposition::coherent(alpha);
    Joint final;
    for (std::size_t k = 0; k < 2; ++k) {
        auto f = field.scaled(std::polar(0.5, kicks[k]));
        final.e = final.e + f;
        final.g = final.g + f.scaled(-branches[k].sign * b);
    }

    bool in_regime = nbar >= 4 && pert.in_regime(std::abs(alpha));
    return finish(final.tidy(), intermediate, in_regime);
}

UnitaryDescriptor dispersive_descriptor(complex alpha, bool for_rotation) {
    UnitaryDescriptor u;
    u.initial_level = Level::g;
    u.steps = {ProtocolStep::pi_half_pulse(), ProtocolStep::conditional_phase(std::numbers::pi)};
    if (for_rotation) {
        u.steps.push_back(ProtocolStep::displacement(alpha));
    }
    return u;
}

ProtocolResult generic_strategy(const UnitaryDescriptor &u, const PerturbationSpec &pert, complex alpha,
                                PerturbationModel model) {
    pert.validate();
    for (const auto &s : u.steps) {
        if (!std::isfinite(s.parameter.real()) || !std::isfinite(s.parameter.imag())) {
            throw std::invalid_argument("protocol step has a non-finite parameter");
        }
    }
    auto field = CoherentSuperposition::coherent(alpha);
    Joint j = u.initial_level == Level::e ? Joint{field, {}} : Joint{{}, field};
    for (const auto &s : u.steps) {
        j = apply_step(j, s, false).tidy();
    }
    Joint intermediate = j;
    j = perturb(j, pert, model);
    for (auto it = u.steps.rbegin(); it != u.steps.rend(); ++it) {
        j = apply_step(j, *it, true).tidy();
    }

    ProtocolResult r = finish(j, intermediate, pert.in_regime(std::abs(alpha)));

    if (r.final.e.weight != complex{0, 0}) {
        double lhs = std::norm(r.final.amplitude(Level::e, alpha));
        double rhs = r.p_e * std::norm(inner_product(CoherentSuperposition::coherent(alpha), r.final.e.state));
        if (std::abs(lhs - rhs) > 1e-10) {
            throw std::logic_error("branch decomposition of the final state is inconsistent");
        }
    }
    return r;
}

}  // namespace subplanck
