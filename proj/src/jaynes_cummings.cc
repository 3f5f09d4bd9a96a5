#include "subplanck/jaynes_cummings.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

namespace subplanck {

namespace {

constexpr double kRelTol = 1e-9;
constexpr double kAbsTol = 1e-12;
constexpr double kMaxInputLeakage = 1e-8;
constexpr double kMaxTopPopulation = 1e-10;

using State = std::vector<complex>;

// Layout: x[n] = c_{e,n}, x[N + n] = c_{g,n}.
struct InteractionPictureJC {
    std::size_t n;
    double half_rabi;
    double detuning;
    std::vector<double> sqrt_n;

    InteractionPictureJC(std::size_t dim, const JCParams &p)
        : n(dim), half_rabi(0.5 * p.omega0_rabi), detuning(p.detuning), sqrt_n(dim) {
        for (std::size_t k = 0; k < dim; ++k) {
            sqrt_n[k] = std::sqrt(static_cast<double>(k));
        }
    }

    void operator()(const State &x, State &dxdt, double t) const {
        const complex minus_i{0, -1};
        const complex up = minus_i * half_rabi * std::polar(1.0, detuning * t);    // e^{i delta t} sigma^dag a
        const complex down = minus_i * half_rabi * std::polar(1.0, -detuning * t);  // e^{-i delta t} sigma a^dag
        dxdt[n - 1] = 0;
        dxdt[n] = 0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double c = sqrt_n[k + 1];
            dxdt[k] = up * c * x[n + k + 1];
            dxdt[n + k + 1] = down * c * x[k];
        }
    }
};

}  // namespace

bool JCParams::dispersive_regime() const {
    return detuning >= 10 * omega0_rabi * std::sqrt(nbar);
}

double revival_time(const JCParams &params) {
    if (!(params.nbar > 0) || !(params.omega0_rabi > 0)) {
        throw std::invalid_argument("revival time needs nbar > 0 and Omega0 > 0");
    }
    return 4 * std::numbers::pi * std::sqrt(params.nbar) / params.omega0_rabi;
}

double JointFockState::norm_squared() const {
    double total = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        total += std::norm(e[k]) + std::norm(g[k]);
    }
    return total;
}

double JointFockState::top_population() const {
    if (e.empty()) {
        return 0;
    }
    return std::norm(e.back()) + std::norm(g.back());
}

complex inner_product(const JointFockState &a, const JointFockState &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("joint Fock states have different truncations");
    }
    complex total = 0;
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        total += std::conj(a.e[k]) * b.e[k] + std::conj(a.g[k]) * b.g[k];
    }
    return total;
}

double fidelity(const JointFockState &a, const JointFockState &b) {
    return std::norm(inner_product(a, b)) / (a.norm_squared() * b.norm_squared());
}

JointFockState tensor(const FockVector &field, std::array<complex, 2> tls) {
    JointFockState out{field.coefficients, field.coefficients};
    for (std::size_t k = 0; k < out.dimension(); ++k) {
        out.e[k] *= tls[0];
        out.g[k] *= tls[1];
    }
    return out;
}

JointFockState to_joint_fock(const HybridState &state, std::size_t n_trunc) {
    JointFockState out{std::vector<complex>(n_trunc), std::vector<complex>(n_trunc)};
    if (state.e.weight != complex{0, 0}) {
        out.e = to_fock(state.part(Level::e), n_trunc).coefficients;
    }
    if (state.g.weight != complex{0, 0}) {
        out.g = to_fock(state.part(Level::g), n_trunc).coefficients;
    }
    return out;
}

JointFockState jc_numeric_evolve(const FockVector &field, std::array<complex, 2> tls, const JCParams &params) {
    if (field.leakage > kMaxInputLeakage) {
        throw std::invalid_argument("input field truncation leakage exceeds 1e-8; raise the Fock dimension");
    }
    return jc_numeric_evolve(tensor(field, tls), params);
}

JointFockState jc_numeric_evolve(const JointFockState &state, const JCParams &params) {
    if (!(params.omega0_rabi > 0) || !(params.interaction_time >= 0)) {
        throw std::invalid_argument("JC evolution needs Omega0 > 0 and interaction_time >= 0");
    }
    const std::size_t n = state.dimension();
    if (n < 2) {
        throw std::invalid_argument("JC evolution needs a Fock dimension >= 2");
    }
    State x(2 * n);
    std::copy(state.e.begin(), state.e.end(), x.begin());
    std::copy(state.g.begin(), state.g.end(), x.begin() + n);

    if (params.interaction_time > 0) {
        namespace odeint = boost::numeric::odeint;
        auto stepper = odeint::make_controlled(kAbsTol, kRelTol, odeint::runge_kutta_dopri5<State>());
        double fastest = params.omega0_rabi * std::sqrt(static_cast<double>(n)) + std::abs(params.detuning);
        double dt0 = std::min(params.interaction_time, 0.1 / fastest);
        odeint::integrate_adaptive(stepper, InteractionPictureJC(n, params), x, 0.0, params.interaction_time, dt0);
    }

    JointFockState out{State(x.begin(), x.begin() + n), State(x.begin() + n, x.end())};
    if (out.top_population() > kMaxTopPopulation) {
        throw TruncationError("population at the top of the Fock basis exceeds 1e-10; raise the truncation");
    }
    return out;
}

}  // namespace subplanck
