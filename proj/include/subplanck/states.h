#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace subplanck {

using complex = std::complex<double>;

/// Overlap <a|b> of two coherent states, exp(-(|a|^2+|b|^2)/2 + a* b).
complex coherent_overlap(complex a, complex b);

/// One term weight * |amplitude> of a coherent-state superposition.
struct CoherentTerm {
    complex weight;
    complex amplitude;
};

/// A finite superposition sum_k w_k |a_k> of coherent states.
///
/// Held as an exact term list; all norms and overlaps go through the full
/// Gram matrix <a_l|a_k>, so nearly-coincident amplitudes are handled
/// correctly. Values are immutable in practice: every operation returns a new
/// superposition.
class CoherentSuperposition {
   public:
    CoherentSuperposition() = default;
    explicit CoherentSuperposition(std::vector<CoherentTerm> terms);

    /// |amplitude> with unit weight.
    static CoherentSuperposition coherent(complex amplitude);

    std::span<const CoherentTerm> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Squared norm via the Gram matrix.
    double norm_squared() const;

    /// Returns a copy scaled to unit norm. Throws std::domain_error on a
    /// (numerically) null vector.
    CoherentSuperposition normalized() const;

    CoherentSuperposition scaled(complex factor) const;

    /// Merges terms whose amplitudes coincide within `tol` and drops terms
    /// with |weight| <= tol. Keeps term order of first occurrence.
    CoherentSuperposition simplified(double tol = 1e-13) const;

    /// Largest |amplitude| over terms.
    double max_amplitude() const;

    friend CoherentSuperposition operator+(const CoherentSuperposition &a, const CoherentSuperposition &b);

   private:
    std::vector<CoherentTerm> terms_;
};

/// Truncated number-basis representation of an oscillator state.
struct FockVector {
    std::vector<complex> coefficients;
    /// 1 - sum |c_n|^2 (relative to the source state's norm), clamped at 0.
    double leakage = 0;

    std::size_t dimension() const { return coefficients.size(); }
    double norm_squared() const;
};

/// Normalized sum_k e^{i gamma_k} |e^{i 2 pi k / M} alpha>, k = 1..M.
/// Normalization uses the Gram matrix, not 1/sqrt(M).
CoherentSuperposition make_circular_state(complex alpha, int m, std::span<const double> gammas);
/// Circular state with all gamma_k = 0.
CoherentSuperposition make_circular_state(complex alpha, int m);

/// D(beta) applied term-wise: D(beta)|a> = e^{i Im(beta a*)} |a + beta>.
CoherentSuperposition displace(const CoherentSuperposition &state, complex beta);

/// R(theta) = exp(i theta a^dag a) applied term-wise: |a> -> |e^{i theta} a>.
CoherentSuperposition rotate(const CoherentSuperposition &state, double theta);

/// <a|b> = sum_{k,l} conj(w_k(a)) w_l(b) <a_k|b_l>.
complex inner_product(const CoherentSuperposition &a, const CoherentSuperposition &b);

/// |<a|b>|^2 for normalized states; equality up to global phase means 1.
double fidelity(const CoherentSuperposition &a, const CoherentSuperposition &b);

/// ceil(|a|^2 + 6|a| + 10) for the state's largest amplitude.
std::size_t default_truncation(const CoherentSuperposition &state);

/// Fock coefficients c_n for n < n_trunc, evaluated in log space so large
/// amplitudes never overflow. Throws std::invalid_argument if n_trunc < 1.
FockVector to_fock(const CoherentSuperposition &state, std::size_t n_trunc);
FockVector to_fock(const CoherentSuperposition &state);

/// Exact <a^dag a> of a normalized state.
double mean_excitation(const CoherentSuperposition &state);

}  // namespace subplanck
