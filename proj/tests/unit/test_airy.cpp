#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "semisum/airy.hpp"

using namespace semisum;

namespace {

// Reference zeros of Ai on the negative axis, computed independently with
// mpmath (airyaizero) at 41 significant digits.
struct ZeroRef { int m; const char* value; };
const ZeroRef kZeros[] = {
    {1, "-2.3381074104597670384891972524467354406385"},
    {2, "-4.0879494441309706166369887014573910602248"},
    {3, "-5.5205598280955510591298555129312935737972"},
    {5, "-7.9441335871208531231382805557982685321407"},
    {10, "-12.828776752865757200406729407241824477386"},
    {25, "-23.871564455535918567118576209159784170264"},   // Taylor side of the switch
    {26, "-24.510301236589677489817287209173626258552"},   // asymptotic side
    {100, "-60.455557274116698707316143204035707259328"},
};

// Sum of the first ten half-well levels in Hartree, via mpmath.
const char* kE10Hartree = "64.69738733344814052894124445544939941308";

} // namespace

TEST_CASE("airy zeros against independent references") {
    const PrecisionConfig prec = PrecisionConfig::for_digits(40);
    for (const auto& ref : kZeros) {
        const big_float want(ref.value);
        const big_float got = airy_zero(ref.m, prec);
        CHECK(abs(got - want) < big_float("1e-37") * abs(want));
    }
}

TEST_CASE("zero residual certificate") {
    const PrecisionConfig prec = PrecisionConfig::for_digits(40);
    for (int m : {1, 10, 26}) {
        const big_float z = airy_zero(m, prec);
        const auto [ai, aip] = airy_ai_pair_big(z);
        CHECK(abs(ai) < big_float("1e-40") * abs(aip));
    }
}

TEST_CASE("half-well eigenvalues") {
    CHECK(airy_eigenvalue(0) == Catch::Approx(1.8557570814892385).epsilon(1e-13));
    const PrecisionConfig prec = PrecisionConfig::for_digits(30);
    const big_float a1 = airy_zero(1, prec);
    const big_float e0 = airy_eigenvalue_big(0, prec);
    CHECK(abs(e0 * pow(big_float(2), big_float(1) / 3) + a1) < big_float("1e-28"));
}

TEST_CASE("eigenvalue sums") {
    const PrecisionConfig prec = PrecisionConfig::for_digits(40);
    CHECK(big_float_fixed(airy_zero_magnitude_sum(10, prec), 36) ==
          "81.513600174613249757575849944135032733");
    const big_float want(kE10Hartree);
    CHECK(abs(airy_eigenvalue_sum_big(10, prec) - want) < big_float("1e-36"));
}

TEST_CASE("WKB becomes relatively exact for high levels") {
    const PrecisionConfig prec = PrecisionConfig::for_digits(20);
    const double c = std::pow(3.0 * M_PI / (2.0 * std::sqrt(2.0)), 2.0 / 3.0);
    double prev = 1.0;
    for (int j : {10, 100, 1000}) {
        const double exact = airy_eigenvalue(j, prec);
        const double wkb0 = c * std::pow(j + 0.75, 2.0 / 3.0);
        const double rel = std::abs(exact - wkb0) / exact;
        CHECK(rel < prev);
        prev = rel;
    }
}

TEST_CASE("precision configuration is enforced") {
    PrecisionConfig bad;
    bad.working_digits = bad.target_digits + 4;
    CHECK_THROWS_AS(bad.validate(), argument_error);
    CHECK_THROWS_AS(airy_zero(1, PrecisionConfig::for_digits(60)), argument_error);
    CHECK_THROWS_AS(airy_zero(0, PrecisionConfig::for_digits(20)), argument_error);

    PrecisionConfig starved = PrecisionConfig::for_digits(40);
    starved.max_iterations = 2;
    CHECK_THROWS_AS(airy_zero(1, starved), precision_failure_error);
}

TEST_CASE("airy modulus and the continuous level flow") {
    // x'(m) = pi^2 M^2 at the zeros; coefficients validated against an
    // independent mpmath computation of the same flow at m = 5.
    const auto c = airy_level_taylor_coeffs(5, 6);
    CHECK(c[0] == Catch::Approx(7.9441335871208531).epsilon(1e-12));
    CHECK(c[1] == Catch::Approx(1.11427447893061).epsilon(1e-9));
    CHECK(c[2] == Catch::Approx(-0.0390010277572115).epsilon(1e-8));
    CHECK(c[3] == Catch::Approx(0.00363361837787295).epsilon(1e-7));

    // the flow derivative is the phase-measure Jacobian
    CHECK(M_PI * M_PI * airy_modulus_sq(7.9441335871208531) ==
          Catch::Approx(c[1]).epsilon(1e-10));

    // integral of x(m) between the first and tenth zero (mpmath reference)
    CHECK(airy_level_integral(1, 10) ==
          Catch::Approx(74.025005057649243).epsilon(1e-9));
}
