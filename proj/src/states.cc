#include "subplanck/states.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace subplanck {

complex coherent_overlap(complex a, complex b) {
    return std::exp(-0.5 * (std::norm(a) + std::norm(b)) + std::conj(a) * b);
}

CoherentSuperposition::CoherentSuperposition(std::vector<CoherentTerm> terms) : terms_(std::move(terms)) {
}

CoherentSuperposition CoherentSuperposition::coherent(complex amplitude) {
    return CoherentSuperposition({{1.0, amplitude}});
}

double CoherentSuperposition::norm_squared() const {
    double total = 0;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        total += std::norm(terms_[k].weight);
        for (std::size_t l = k + 1; l < terms_.size(); ++l) {
            complex g = std::conj(terms_[k].weight) * terms_[l].weight *
                        coherent_overlap(terms_[k].amplitude, terms_[l].amplitude);
            total += 2 * g.real();
        }
    }
    return total;
}

CoherentSuperposition CoherentSuperposition::normalized() const {
    double n2 = norm_squared();
    if (!(n2 > 1e-300) || !std::isfinite(n2)) {
        throw std::domain_error("cannot normalize a null coherent superposition");
    }
    return scaled(1.0 / std::sqrt(n2));
}

CoherentSuperposition CoherentSuperposition::scaled(complex factor) const {
    std::vector<CoherentTerm> out = terms_;
    for (auto &t : out) {
        t.weight *= factor;
    }
    return CoherentSuperposition(std::move(out));
}

CoherentSuperposition CoherentSuperposition::simplified(double tol) const {
    std::vector<CoherentTerm> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
        auto hit = std::find_if(out.begin(), out.end(), [&](const CoherentTerm &u) {
            return std::abs(u.amplitude - t.amplitude) <= tol;
        });
        if (hit != out.end()) {
            hit->weight += t.weight;
        } else {
            out.push_back(t);
        }
    }
    std::erase_if(out, [&](const CoherentTerm &t) { return std::abs(t.weight) <= tol; });
    return CoherentSuperposition(std::move(out));
}

double CoherentSuperposition::max_amplitude() const {
    double m = 0;
    for (const auto &t : terms_) {
        m = std::max(m, std::abs(t.amplitude));
    }
    return m;
}

CoherentSuperposition operator+(const CoherentSuperposition &a, const CoherentSuperposition &b) {
    std::vector<CoherentTerm> out(a.terms_.begin(), a.terms_.end());
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return CoherentSuperposition(std::move(out));
}

double FockVector::norm_squared() const {
    double total = 0;
    for (auto c : coefficients) {
        total += std::norm(c);
    }
    return total;
}

CoherentSuperposition make_circular_state(complex alpha, int m, std::span<const double> gammas) {
    if (m < 1) {
        throw std::invalid_argument("circular state needs M >= 1, got " + std::to_string(m));
    }
    if (gammas.size() != static_cast<std::size_t>(m)) {
        throw std::invalid_argument(
            "circular state needs " + std::to_string(m) + " phases, got " + std::to_string(gammas.size()));
    }
    std::vector<CoherentTerm> terms;
    terms.reserve(m);
    for (int k = 1; k <= m; ++k) {
        double phi = 2 * std::numbers::pi * k / m;
        terms.push_back({std::polar(1.0, gammas[k - 1]), std::polar(1.0, phi) * alpha});
    }
    return CoherentSuperposition(std::move(terms)).normalized();
}

CoherentSuperposition make_circular_state(complex alpha, int m) {
    std::vector<double> gammas(std::max(m, 0), 0.0);
    return make_circular_state(alpha, m, gammas);
}

CoherentSuperposition displace(const CoherentSuperposition &state, complex beta) {
    std::vector<CoherentTerm> out(state.terms().begin(), state.terms().end());
    for (auto &t : out) {
        t.weight *= std::polar(1.0, (beta * std::conj(t.amplitude)).imag());
        t.amplitude += beta;
    }
    return CoherentSuperposition(std::move(out));
}

CoherentSuperposition rotate(const CoherentSuperposition &state, double theta) {
    complex phase = std::polar(1.0, theta);
    std::vector<CoherentTerm> out(state.terms().begin(), state.terms().end());
    for (auto &t : out) {
        t.amplitude *= phase;
    }
    return CoherentSuperposition(std::move(out));
}

complex inner_product(const CoherentSuperposition &a, const CoherentSuperposition &b) {
    complex total = 0;
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            total += std::conj(ta.weight) * tb.weight * coherent_overlap(ta.amplitude, tb.amplitude);
        }
    }
    return total;
}

double fidelity(const CoherentSuperposition &a, const CoherentSuperposition &b) {
    return std::norm(inner_product(a, b));
}

std::size_t default_truncation(const CoherentSuperposition &state) {
    double r = state.max_amplitude();
    return static_cast<std::size_t>(std::ceil(r * r + 6 * r + 10));
}

FockVector to_fock(const CoherentSuperposition &state, std::size_t n_trunc) {
    if (n_trunc < 1) {
        throw std::invalid_argument("Fock truncation must be >= 1");
    }
    FockVector out;
    out.coefficients.assign(n_trunc, complex{0, 0});
    for (const auto &t : state.terms()) {
        double r = std::abs(t.amplitude);
        if (r == 0) {
            out.coefficients[0] += t.weight;
            continue;
        }
        double log_r = std::log(r);
        double arg = std::arg(t.amplitude);
        // log|c_n| = -r^2/2 + n log r - lgamma(n+1)/2
        for (std::size_t n = 0; n < n_trunc; ++n) {
            double nd = static_cast<double>(n);
            double log_mag = -0.5 * r * r + nd * log_r - 0.5 * std::lgamma(nd + 1);
            if (log_mag < -745) {
                continue;
            }
            out.coefficients[n] += t.weight * std::polar(std::exp(log_mag), nd * arg);
        }
    }
    double total = state.norm_squared();
    out.leakage = std::max(0.0, 1.0 - out.norm_squared() / total);
    return out;
}

FockVector to_fock(const CoherentSuperposition &state) {
    return to_fock(state, default_truncation(state));
}

double mean_excitation(const CoherentSuperposition &state) {
    // <a_l| a^dag a |a_k> = a_l* a_k <a_l|a_k>
    complex total = 0;
    for (const auto &tl : state.terms()) {
        for (const auto &tk : state.terms()) {
            total += std::conj(tl.weight) * tk.weight * std::conj(tl.amplitude) * tk.amplitude *
                     coherent_overlap(tl.amplitude, tk.amplitude);
        }
    }
    return total.real() / state.norm_squared();
}

}  // namespace subplanck
