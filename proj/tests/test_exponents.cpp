#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "rational_oracle.hpp"
#include "swirlmhd/exponents.hpp"

using namespace swirlmhd;
using oracle::Rational;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("epsilon_of_p endpoints against the exact rational oracle") {
    // p = 63/61 is the right endpoint; the oracle reduces the value to 1/7.
    CHECK(oracle::epsilon_exact(Rational(63, 61)) == Rational(1, 7));
    CHECK(epsilon_of_p(63.0 / 61.0) == doctest::Approx(1.0 / 7.0).epsilon(1e-13));

    // p -> 1+ limit is 2/7.
    CHECK(std::fabs(epsilon_of_p(1.0 + 1e-9) - 2.0 / 7.0) < 1e-8);

    // Spec sample point p = 1.02 = 51/50.
    const Rational expected = oracle::epsilon_exact(Rational(51, 50));
    CHECK(epsilon_of_p(1.02) == doctest::Approx(expected.value()).epsilon(1e-13));
    CHECK(epsilon_of_p(1.02) == doctest::Approx(0.199134).epsilon(1e-5));
}

TEST_CASE("a_frak_of_p endpoints against the exact rational oracle") {
    CHECK(oracle::a_frak_exact(Rational(63, 61)) == Rational(168, 1525));
    CHECK(a_frak_of_p(63.0 / 61.0) ==
          doctest::Approx(168.0 / 1525.0).epsilon(1e-13));
    CHECK(std::fabs(a_frak_of_p(1.0 + 1e-9) - 1.0 / 12.0) < 1e-8);

    const Rational expected = oracle::a_frak_exact(Rational(51, 50));
    CHECK(a_frak_of_p(1.02) == doctest::Approx(expected.value()).epsilon(1e-13));
    CHECK(a_frak_of_p(1.02) == doctest::Approx(0.099975).epsilon(1e-4));
}

TEST_CASE("domain errors name the admissible interval") {
    CHECK_THROWS_AS(epsilon_of_p(1.0), std::domain_error);
    CHECK_THROWS_AS(epsilon_of_p(1.04), std::domain_error);
    CHECK_THROWS_AS(a_frak_of_p(0.5), std::domain_error);
    CHECK_THROWS_WITH_AS(epsilon_of_p(2.0), doctest::Contains("]1, 63/61]"),
                         std::domain_error);
}

TEST_CASE("epsilon is decreasing, a_frak increasing, both within stated ranges") {
    const int n = 10000;
    double prev_eps = 2.0 / 7.0 + 1e-15;
    double prev_a = 1.0 / 12.0 - 1e-15;
    for (int i = 1; i <= n; ++i) {
        const double p = 1.0 + (kPMax - 1.0) * i / n;
        const double eps = epsilon_of_p(p);
        const double a = a_frak_of_p(p);
        CHECK(eps >= 1.0 / 7.0 - 1e-14);
        CHECK(eps < 2.0 / 7.0);
        CHECK(eps < prev_eps);
        CHECK(a > 1.0 / 12.0);
        CHECK(a <= 168.0 / 1525.0 + 1e-15);
        CHECK(a > prev_a);
        prev_eps = eps;
        prev_a = a;
    }
}

TEST_CASE("q1, q2 are Hoelder conjugate and q2 matches 1 + 8/(7(2-eps))") {
    for (int i = 1; i <= 200; ++i) {
        const double p = 1.0 + (kPMax - 1.0) * i / 200.0;
        const ExponentSet e = exponents_for(p);
        CHECK(std::fabs(1.0 / e.q1 + 1.0 / e.q2 - 1.0) < 1e-14);
        CHECK(e.q2 == doctest::Approx(1.0 + 8.0 / (7.0 * (2.0 - e.epsilon)))
                          .epsilon(1e-13));
        CHECK(e.s == doctest::Approx(6.0 * p / (3.0 + p)));
        CHECK(e.s > 1.5);
        CHECK(e.s <= 63.0 / 41.0 + 1e-15);
    }
}

TEST_CASE("radial norm index and its 25p-21 variant") {
    const double p = 1.02;
    CHECK(radial_norm_index(p) ==
          doctest::Approx(a_frak_of_p(p) / (p - 1.0)).epsilon(1e-14));
    const double alt = radial_norm_index_alt(p);
    CHECK(alt == doctest::Approx(radial_norm_index(p) * (25.0 * p - 21.0) /
                                 (23.0 * p - 21.0))
                     .epsilon(1e-14));
    CHECK(alt > radial_norm_index(p));  // 25p-21 > 23p-21
}

TEST_CASE("lambda_interp closed-form points") {
    // q = 3p gives (p-1)/2 + 1/2 = p/2.
    CHECK(lambda_interp(1.02, 3.0 * 1.02) == doctest::Approx(0.51).epsilon(1e-14));
    // Direct arithmetic oracle at p = 2, q = 12: 1/2 + 6/24 = 0.75.
    CHECK(lambda_interp(2.0, 12.0) == doctest::Approx(0.75).epsilon(1e-14));
    // q = infinity drops the second term.
    CHECK(lambda_interp(2.0, kInf) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(lambda_interp(2.0, 5.9), std::domain_error);  // 3p/(3-p) = 6
    CHECK_THROWS_AS(lambda_interp(3.0, 100.0), std::domain_error);
}

TEST_CASE("compute_M0 examples") {
    CHECK(compute_M0(0, 0, 0, 1.02) == 0.0);
    CHECK(compute_M0(1, 1, 1, 1.02) == doctest::Approx(3.0).epsilon(1e-14));
    // (2, 1, 1) at p = 1.02: 2^1.02 + 1 + 1.
    CHECK(compute_M0(2, 1, 1, 1.02) ==
          doctest::Approx(std::pow(2.0, 1.02) + 2.0).epsilon(1e-14));
    CHECK(compute_M0(2, 1, 1, 1.02) == doctest::Approx(4.02792).epsilon(1e-5));
    CHECK_THROWS_AS(compute_M0(-1, 0, 0, 1.02), std::domain_error);
}

TEST_CASE("compute_N0 examples") {
    CHECK(compute_N0(0, 0, 0, 1.0, 1.02) == 0.0);
    CHECK(compute_N0(1, 1, 0, 0.0, 1.02) == doctest::Approx(2.0).epsilon(1e-14));
    const double p = 1.02;
    const double e1 = 3.0 * (39.0 * p - 37.0) / (16.0 * (2.0 * p - 1.0));
    const double e2 = -3.0 * (p + 2.0) / (4.0 * (2.0 * p - 1.0));
    const double expected =
        1.0 + 8.0 + std::pow(0.5, e1) * std::pow(2.0, e2);
    CHECK(compute_N0(1, 2, 0.5, 1.0, p) == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(compute_N0(1, 1, 0.5, 0.0, 1.02), std::domain_error);
}

TEST_CASE("check_smallness on all-zero data passes with infinite margins") {
    InitialNormBundle norms{0, 0, 0, 0, 0};
    const SmallnessReport rep = check_smallness(1.02, 1e-3, norms);
    CHECK(rep.passed);
    CHECK(rep.margins.first == kInf);
    CHECK(rep.margins.second == kInf);
    CHECK(rep.lhs_swirl == 0.0);
}

TEST_CASE("check_smallness: zero B data passes even with a degenerate M0") {
    // M0 = inf makes the B bound a 0 * inf product; the vacuous condition
    // ||B||_{3/2} = 0 <= anything must still pass.
    InitialNormBundle norms{1e300, 1e300, 0.0, 0.0, kInf};
    const SmallnessReport rep = check_smallness(1.02, 1e-3, norms);
    CHECK_FALSE(rep.passed);  // the swirl condition is violated
    CHECK(rep.margins.second == kInf);
    CHECK_FALSE(std::isnan(rep.rhs_B));
}

TEST_CASE("check_smallness detects a constructed violation") {
    // Large swirl sup against small c0 and O(1) bundle.
    InitialNormBundle norms{10.0, 1.0, 0.0, 1.0, 1.0};
    const SmallnessReport rep = check_smallness(1.02, 1e-3, norms);
    CHECK_FALSE(rep.passed);
    CHECK(rep.margins.first < 1.0);
}

TEST_CASE("check_smallness agrees with a direct re-evaluation of the bounds") {
    const double p = 1.02, c0 = 1e-3;
    // A handful of fixed bundles standing in for randomized small data.
    const InitialNormBundle bundles[] = {
        {1e-6, 2e-4, 3e-5, 4e-4, 1e-3},
        {5e-4, 1e-2, 1e-3, 2e-2, 5e-2},
        {0.0, 0.0, 1e-5, 1e-3, 1e-4},
    };
    for (const auto& n : bundles) {
        const SmallnessReport rep = check_smallness(p, c0, n);
        const double two_M0 = 2.0 * n.M0;
        const double b1 = std::pow(p - 1.0, 20.0 * p / (7.0 * (3.0 - p))) *
                          std::pow(two_M0, -4.0 * (p + 2.0) / (7.0 * (3.0 - p)));
        const double b2 = n.swirl_a_norm == 0.0
                              ? kInf
                              : std::pow(p - 1.0, 8.0) *
                                    std::pow(two_M0, -2.0 * (p - 1.0) / p) *
                                    std::pow(n.swirl_a_norm,
                                             -(23.0 * p - 21.0) / (2.0 * p));
        const double bB = std::pow(p - 1.0, 8.0) *
                          std::pow(two_M0, -2.0 * (p - 1.0) / p) *
                          std::pow(n.B_l3p2, -3.0);
        CHECK(rep.rhs_swirl == doctest::Approx(c0 * std::min(b1, b2)).epsilon(1e-13));
        CHECK(rep.rhs_B == doctest::Approx(c0 * bB).epsilon(1e-13));
        CHECK(rep.passed == (rep.lhs_swirl <= rep.rhs_swirl && rep.lhs_B <= rep.rhs_B));
    }
}

TEST_CASE("scaling the swirl and B norms down never un-passes the check") {
    const double p = 1.02, c0 = 1e-3;
    // The (p-1)^8 factor makes the admissible amplitudes genuinely tiny at
    // p = 1.02; this bundle sits just inside the bounds.
    InitialNormBundle base{3e-20, 6e-4, 2e-20, 8e-4, 2e-3};
    SmallnessReport rep0 = check_smallness(p, c0, base);
    REQUIRE(rep0.passed);
    for (double t : {0.9, 0.5, 0.1, 1e-3, 0.0}) {
        InitialNormBundle scaled = base;
        scaled.swirl_sup *= t;
        scaled.swirl_a_norm *= t;
        scaled.B_l32 *= t;
        scaled.B_l3p2 *= t;
        CHECK(check_smallness(p, c0, scaled).passed);
    }
}
