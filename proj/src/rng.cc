#include "subplanck/rng.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subplanck {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ splitmix64(index);
    return splitmix64(s);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
    for (auto &word : s_) {
        word = splitmix64(seed);
    }
}

std::uint64_t Xoshiro256::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

BinomialSampler::BinomialSampler(std::int64_t trials, double p) : trials_(trials), p_(p) {
    if (trials < 1) {
        throw std::invalid_argument("binomial sampler needs R >= 1");
    }
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("binomial probability must lie in [0, 1]");
    }
    if (p == 0 || p == 1 || trials > kInversionLimit) {
        return;
    }
    const double n = static_cast<double>(trials);
    const double lp = std::log(p), lq = std::log1p(-p);
    const double lgn = std::lgamma(n + 1);
    cdf_.resize(trials + 1);
    double acc = 0;
    for (std::int64_t k = 0; k <= trials; ++k) {
        double kd = static_cast<double>(k);
        double log_pmf = lgn - std::lgamma(kd + 1) - std::lgamma(n - kd + 1) + kd * lp + (n - kd) * lq;
        acc += std::exp(log_pmf);
        cdf_[k] = acc;
    }
}

std::int64_t BinomialSampler::operator()(Xoshiro256 &rng) const {
    if (p_ == 0) {
        return 0;
    }
    if (p_ == 1) {
        return trials_;
    }
    if (cdf_.empty()) {
        // Box-Muller on two uniforms; 1 - u keeps the log argument in (0, 1].
        double u1 = 1.0 - rng.uniform();
        double u2 = rng.uniform();
        double z = std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
        double n = static_cast<double>(trials_);
        double r = std::round(n * p_ + std::sqrt(n * p_ * (1 - p_)) * z);
        return static_cast<std::int64_t>(std::clamp(r, 0.0, n));
    }
    double u = rng.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::int64_t>(it - cdf_.begin(), trials_);
}

}  // namespace subplanck
