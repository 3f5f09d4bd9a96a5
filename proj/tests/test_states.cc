#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/fock_oracle.h"
#include "subplanck/states.h"

using namespace subplanck;
using std::numbers::pi;

namespace {

CoherentSuperposition random_state(std::mt19937_64 &gen, double max_amp, int max_terms) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::vector<CoherentTerm> terms;
    int n = count(gen);
    for (int k = 0; k < n; ++k) {
        complex a{u(gen), u(gen)};
        if (std::abs(a) > 1) {
            a /= std::abs(a);
        }
        terms.push_back({{u(gen), u(gen)}, a * max_amp});
    }
    return CoherentSuperposition(terms).normalized();
}

}  // namespace

TEST(CoherentOverlap, MatchesNumberBasisSum) {
    const complex a{1.2, -0.7}, b{-0.4, 2.1};
    auto fa = oracle::coherent_fock(a, 80), fb = oracle::coherent_fock(b, 80);
    complex expected = oracle::dot(fa, fb);
    EXPECT_NEAR(std::abs(coherent_overlap(a, b) - expected), 0.0, 1e-13);
}

TEST(CircularState, SingleCoherentState) {
    std::vector<double> g{0};
    auto s = make_circular_state(3.0, 1, g);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(std::abs(s.terms()[0].amplitude - complex(3, 0)), 0.0, 1e-14);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(CircularState, CatAmplitudes) {
    auto cat = make_circular_state({0, 4}, 2);
    ASSERT_EQ(cat.size(), 2u);
    EXPECT_NEAR(std::abs(cat.terms()[0].amplitude - complex(0, -4)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(cat.terms()[1].amplitude - complex(0, 4)), 0.0, 1e-14);
}

TEST(CircularState, CompassAmplitudes) {
    auto compass = make_circular_state({0, 4}, 4);
    ASSERT_EQ(compass.size(), 4u);
    const complex expected[] = {{-4, 0}, {0, -4}, {4, 0}, {0, 4}};
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(compass.terms()[k].amplitude - expected[k]), 0.0, 1e-13);
    }
}

TEST(CircularState, GramNormalizationAtSmallAmplitude) {
    // Even cat: unnormalized norm 2(1 + e^{-2|a|^2}); 1/sqrt(2) would be wrong.
    const double a = 0.5;
    auto cat = make_circular_state(a, 2);
    double w = std::abs(cat.terms()[0].weight);
    EXPECT_NEAR(w, 1.0 / std::sqrt(2 * (1 + std::exp(-2 * a * a))), 1e-14);
    EXPECT_NEAR(cat.norm_squared(), 1.0, 1e-12);
}

TEST(CircularState, RejectsBadArguments) {
    std::vector<double> two{0, 0};
    EXPECT_THROW(make_circular_state(1.0, 3, two), std::invalid_argument);
    EXPECT_THROW(make_circular_state(1.0, 0), std::invalid_argument);
}

TEST(Normalize, NullVectorThrows) {
    CoherentSuperposition s({{1.0, 1.0}, {-1.0, 1.0}});
    EXPECT_THROW(s.normalized(), std::domain_error);
}

TEST(Displace, Vacuum) {
    auto s = displace(CoherentSuperposition::coherent(0), {0.3, -1.1});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(std::abs(s.terms()[0].weight - complex(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.terms()[0].amplitude - complex(0.3, -1.1)), 0.0, 1e-15);
}

TEST(Displace, BackToVacuumHasNoPhase) {
    const complex a{1.5, 2.5};
    auto s = displace(CoherentSuperposition::coherent(a), -a);
    EXPECT_NEAR(std::abs(s.terms()[0].amplitude), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.terms()[0].weight - complex(1, 0)), 0.0, 1e-15);
}

TEST(Displace, MatchesTaylorSeriesOfGenerator) {
    const complex a{0.8, -1.3}, beta{-0.6, 0.9};
    const std::size_t n = 90;
    auto numeric = oracle::displace(oracle::coherent_fock(a, n), beta);
    auto analytic = to_fock(displace(CoherentSuperposition::coherent(a), beta), n).coefficients;
    for (std::size_t k = 0; k < n; ++k) {
        EXPECT_NEAR(std::abs(numeric[k] - analytic[k]), 0.0, 1e-12) << "n=" << k;
    }
}

TEST(Displace, CatOverlapAtTenthOfUnit) {
    const complex alpha{0, 4};
    auto cat = make_circular_state(alpha, 2);
    complex beta = complex(0, 1) * alpha / std::abs(alpha) * 0.1;
    double overlap = std::norm(inner_product(cat, displace(cat, beta)));
    // e^{-s^2} cos^2(2 s |a|), up to O(e^{-32}).
    EXPECT_NEAR(overlap, std::exp(-0.01) * std::pow(std::cos(0.8), 2), 1e-12);
    EXPECT_NEAR(overlap, (1 + std::cos(1.6)) / 2, 5e-3);
}

TEST(Rotate, IdentityAndHalfTurn) {
    auto cat = make_circular_state({1, 2}, 3);
    auto same = rotate(cat, 0);
    for (std::size_t k = 0; k < cat.size(); ++k) {
        EXPECT_EQ(same.terms()[k].amplitude, cat.terms()[k].amplitude);
        EXPECT_EQ(same.terms()[k].weight, cat.terms()[k].weight);
    }
    auto flipped = rotate(CoherentSuperposition::coherent({2, 1}), pi);
    EXPECT_NEAR(fidelity(flipped, CoherentSuperposition::coherent({-2, -1})), 1.0, 1e-14);
}

TEST(Rotate, MultipliesFockCoefficientsByPhase) {
    auto s = make_circular_state({0.7, 1.1}, 3);
    const double theta = 0.37;
    auto base = to_fock(s, 60).coefficients;
    auto rotated = to_fock(rotate(s, theta), 60).coefficients;
    for (std::size_t k = 0; k < base.size(); ++k) {
        EXPECT_NEAR(std::abs(rotated[k] - std::polar(1.0, theta * k) * base[k]), 0.0, 1e-13);
    }
}

TEST(Rotate, DisplacedCatBecomesQuasiOrthogonal) {
    auto s = displace(make_circular_state({0, 4}, 2), {0, 4});
    EXPECT_LT(fidelity(s, rotate(s, pi / 64)), 0.02);
}

TEST(InnerProduct, Basics) {
    const complex a{1.1, -0.3};
    auto ka = CoherentSuperposition::coherent(a);
    EXPECT_NEAR(std::abs(inner_product(ka, ka) - complex(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(CoherentSuperposition::coherent(0), ka) -
                         complex(std::exp(-std::norm(a) / 2), 0)),
                0.0, 1e-15);
}

TEST(InnerProduct, QuarterFringeIsQuasiOrthogonal) {
    const complex alpha{0, 4};
    auto cat = make_circular_state(alpha, 2);
    complex beta = complex(0, 1) * alpha / 4.0 * (pi / 16);
    EXPECT_LT(std::norm(inner_product(cat, displace(cat, beta))), 1e-12);
}

TEST(ToFock, Vacuum) {
    auto f = to_fock(CoherentSuperposition::coherent(0), 4);
    ASSERT_EQ(f.dimension(), 4u);
    EXPECT_NEAR(std::abs(f.coefficients[0] - complex(1, 0)), 0.0, 1e-15);
    for (int k = 1; k < 4; ++k) {
        EXPECT_EQ(f.coefficients[k], complex(0, 0));
    }
}

TEST(ToFock, UnitAmplitudeCoefficients) {
    auto f = to_fock(CoherentSuperposition::coherent(1.0), 32);
    EXPECT_NEAR(f.coefficients[0].real(), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(f.coefficients[1].real(), std::exp(-0.5), 1e-15);
    EXPECT_LT(f.leakage, 1e-15);
}

TEST(ToFock, EvenCatHasNoOddComponents) {
    auto f = to_fock(make_circular_state(2.0, 2), 40);
    for (std::size_t k = 1; k < f.dimension(); k += 2) {
        EXPECT_LT(std::abs(f.coefficients[k]), 1e-14);
    }
}

TEST(ToFock, LargeAmplitudeStaysFinite) {
    auto s = make_circular_state({30, 10}, 3);
    auto f = to_fock(s);
    EXPECT_GE(f.dimension(), default_truncation(s));
    for (const auto &c : f.coefficients) {
        ASSERT_TRUE(std::isfinite(c.real()) && std::isfinite(c.imag()));
    }
    // Below the input tolerance of the numeric JC evolution.
    EXPECT_LT(f.leakage, 1e-8);
    EXPECT_THROW(to_fock(s, 0), std::invalid_argument);
}

TEST(ToFock, DefaultTruncationBoundsLeakage) {
    for (double r : {0.5, 2.0, 5.0, 9.0}) {
        auto s = make_circular_state(complex(0, r), 4);
        EXPECT_EQ(default_truncation(s), static_cast<std::size_t>(std::ceil(r * r + 6 * r + 10)));
        auto f = to_fock(s);
        EXPECT_LT(f.leakage, 1e-10) << r;
        EXPECT_NEAR(f.norm_squared() + f.leakage, 1.0, 1e-12);
    }
}

TEST(MeanExcitation, CoherentAndCats) {
    EXPECT_NEAR(mean_excitation(CoherentSuperposition::coherent(3.0)), 9.0, 1e-12);
    EXPECT_NEAR(mean_excitation(make_circular_state({0, 4}, 2)), 16.0, 1e-10);
    auto small = make_circular_state(0.5, 2);
    double n = mean_excitation(small);
    EXPECT_NEAR(n, oracle::mean_number(oracle::superposition_fock(small.terms(), 40)), 1e-13);
    EXPECT_NEAR(n, 0.25 * std::tanh(0.25), 1e-14);
    EXPECT_GT(std::abs(n - 0.25), 0.1);
}

TEST(Simplified, MergesCoincidentAmplitudes) {
    CoherentSuperposition s({{1.0, 2.0}, {0.5, {1, 1}}, {2.0, 2.0}, {1e-16, 3.0}});
    auto t = s.simplified();
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t.terms()[0].weight, complex(3, 0));
}

// Properties over random states.

TEST(StateProperties, DisplacementAndRotationAreUnitary) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_state(gen, 4, 5);
        complex beta{u(gen), u(gen)};
        EXPECT_NEAR(displace(s, beta).norm_squared(), 1.0, 1e-12);
        EXPECT_NEAR(rotate(s, u(gen)).norm_squared(), 1.0, 1e-12);
    }
}

TEST(StateProperties, DisplacementsCompose) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_state(gen, 3, 4);
        auto probe = random_state(gen, 3, 4);
        complex b1{u(gen), u(gen)}, b2{u(gen), u(gen)};
        auto twice = displace(displace(s, b1), b2);
        auto once = displace(s, b1 + b2);
        EXPECT_NEAR(std::abs(inner_product(probe, twice)), std::abs(inner_product(probe, once)), 1e-12);
        EXPECT_NEAR(fidelity(twice, once), 1.0, 1e-12);
    }
}

TEST(StateProperties, InnerProductMatchesNumberBasis) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_state(gen, 5, 4), b = random_state(gen, 5, 4);
        std::size_t n = default_truncation(CoherentSuperposition::coherent(5.0)) + 20;
        auto fa = oracle::superposition_fock(a.terms(), n), fb = oracle::superposition_fock(b.terms(), n);
        EXPECT_NEAR(std::abs(inner_product(a, b)), std::abs(oracle::dot(fa, fb)), 1e-8);
        EXPECT_LE(std::abs(inner_product(a, b)), 1 + 1e-10);
    }
}

TEST(StateProperties, SmallRotationOfDisplacedCatIsADisplacement) {
    for (double r : {2.0, 4.0, 6.0}) {
        const complex alpha{0, r};
        auto shifted = displace(make_circular_state(alpha, 2), alpha);
        for (double theta : {0.001 / r, 0.005 / r, 0.01 / r}) {
            auto rotated = rotate(shifted, theta);
            auto displaced = displace(shifted, complex(0, theta) * alpha);
            EXPECT_GE(fidelity(rotated, displaced), 0.999) << r << " " << theta;
        }
    }
}
