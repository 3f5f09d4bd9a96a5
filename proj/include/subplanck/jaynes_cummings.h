#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "subplanck/protocol.h"
#include "subplanck/states.h"

namespace subplanck {

/// Jaynes-Cummings parameters (SI rates in s^-1, times in s).
struct JCParams {
    double omega0_rabi = 1;  // vacuum Rabi frequency
    double detuning = 0;     // delta = omega_0 - omega
    double nbar = 1;
    double interaction_time = 0;

    /// delta >= 10 Omega0 sqrt(nbar).
    bool dispersive_regime() const;
};

/// T_R = 4 pi sqrt(nbar) / Omega0. Throws std::invalid_argument if nbar <= 0
/// or Omega0 <= 0.
double revival_time(const JCParams &params);

/// Thrown when the evolved state reaches the top of the Fock basis.
class TruncationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Joint TLS (x) truncated-oscillator amplitudes, e[n] = <e,n|psi>.
struct JointFockState {
    std::vector<complex> e;
    std::vector<complex> g;

    std::size_t dimension() const { return e.size(); }
    double norm_squared() const;
    /// Population of the highest number state in either level.
    double top_population() const;
};

complex inner_product(const JointFockState &a, const JointFockState &b);
double fidelity(const JointFockState &a, const JointFockState &b);

/// |psi> (x) (tls[0]|e> + tls[1]|g>).
JointFockState tensor(const FockVector &field, std::array<complex, 2> tls);
JointFockState to_joint_fock(const HybridState &state, std::size_t n_trunc);

/// Integrates i d/dt psi = H_I(t) psi with
/// H_I = (Omega0/2)(e^{i delta t} sigma^dag a + e^{-i delta t} sigma a^dag)
/// over [0, interaction_time]. Only the 2x2 blocks |e,n> <-> |g,n+1> couple.
/// Throws std::invalid_argument if the input field leaks more than 1e-8 and
/// TruncationError if the final top-level population exceeds 1e-10.
JointFockState jc_numeric_evolve(const FockVector &field, std::array<complex, 2> tls, const JCParams &params);
JointFockState jc_numeric_evolve(const JointFockState &state, const JCParams &params);

}  // namespace subplanck
