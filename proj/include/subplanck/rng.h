#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace subplanck {

/// SplitMix64 step; also used to derive per-trial seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t &state);

/// Seed for trial `index` of a run with `master` seed. Depends only on the
/// pair, never on evaluation order.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

/// xoshiro256** (Blackman & Vigna), state expanded from the seed by
/// SplitMix64. Bit-identical on every platform.
class Xoshiro256 {
   public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);

    std::uint64_t operator()();
    /// Uniform in [0, 1) from the top 53 bits.
    double uniform();

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

   private:
    std::array<std::uint64_t, 4> s_;
};

/// Binomial(R, p) sampler. For R <= 1e5 draws by inversion of a CDF table
/// built once per (R, p); above that, rounds a normal approximation.
/// The table is read-only after construction, so one sampler can be shared
/// across threads.
class BinomialSampler {
   public:
    static constexpr std::int64_t kInversionLimit = 100000;

    BinomialSampler(std::int64_t trials, double p);

    std::int64_t operator()(Xoshiro256 &rng) const;

    std::int64_t trials() const { return trials_; }
    double probability() const { return p_; }

   private:
    std::int64_t trials_;
    double p_;
    std::vector<double> cdf_;
};

}  // namespace subplanck
