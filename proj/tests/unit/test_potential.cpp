#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "semisum/potential.hpp"

using namespace semisum;

TEST_CASE("catalog values") {
    const auto pt = Potential::poschl_teller(10.0);
    CHECK(pt.value(0.0) == -10.0);
    CHECK(std::abs(pt.value(10.0)) < 1e-7);
    CHECK(std::abs(pt.value(-10.0)) < 1e-7);

    const auto lin = Potential::linear_half_well();
    CHECK(lin.value(2.5) == 2.5);
    CHECK_THROWS_AS(lin.value(-0.1), domain_error);

    const auto box = Potential::box(1.0);
    CHECK(box.value(0.3) == 0.0);
    CHECK_THROWS_AS(box.value(1.2), domain_error);

    const auto harm = Potential::harmonic(2.0);
    CHECK(harm.value(1.0) == Catch::Approx(2.0));

    const auto q = Potential::quartic(0.5, 1.0);
    CHECK(q.value(2.0) == Catch::Approx(0.5 * 16.0 + 4.0));
}

TEST_CASE("parameter invariants") {
    CHECK_THROWS_AS(Potential::poschl_teller(0.0), argument_error);
    CHECK_THROWS_AS(Potential::poschl_teller(-3.0), argument_error);
    CHECK_THROWS_AS(Potential::box(0.0), argument_error);
    CHECK_THROWS_AS(Potential::harmonic(-1.0), argument_error);
    CHECK_THROWS_AS(Potential::quartic(0.0, 1.0), argument_error);
}

TEST_CASE("closed-form derivatives") {
    const auto harm = Potential::harmonic(1.0);
    CHECK(harm.derivative(3.0, 2) == Catch::Approx(1.0));
    const auto lin = Potential::linear_half_well();
    CHECK(lin.derivative(1.0, 2) == 0.0);
    CHECK(lin.derivative(1.0, 1) == 1.0);
    const auto pt = Potential::poschl_teller(10.0);
    CHECK(pt.derivative(0.0, 2) == Catch::Approx(20.0));
    CHECK_THROWS_AS(pt.derivative(0.0, 3), argument_error);
    CHECK_THROWS_AS(pt.derivative(0.0, 0), argument_error);
}

TEST_CASE("derivatives agree with central differences at random points") {
    struct Range { Potential pot; double lo, hi; };
    const Range cases[] = {
        {Potential::poschl_teller(10.0), -3.0, 3.0},
        {Potential::harmonic(1.3), -4.0, 4.0},
        {Potential::box(1.0), 0.05, 0.95},
        {Potential::linear_half_well(), 0.1, 5.0},
        {Potential::quartic(0.5, 1.0), -2.0, 2.0},
    };
    std::mt19937 rng(42);
    const double h = 1e-4;
    for (const auto& c : cases) {
        std::uniform_real_distribution<double> dist(c.lo, c.hi);
        for (int i = 0; i < 100; ++i) {
            const double x = dist(rng);
            const double fd1 = (c.pot.value(x + h) - c.pot.value(x - h)) / (2 * h);
            const double fd2 =
                (c.pot.value(x + h) - 2 * c.pot.value(x) + c.pot.value(x - h)) / (h * h);
            const double d1 = c.pot.derivative(x, 1);
            const double d2 = c.pot.derivative(x, 2);
            CHECK(std::abs(d1 - fd1) <= 1e-6 * std::max(1.0, std::abs(fd1)));
            CHECK(std::abs(d2 - fd2) <= 1e-5 * std::max(1.0, std::abs(fd2)));
        }
    }
}

TEST_CASE("classical momentum") {
    const auto pt = Potential::poschl_teller(10.0);
    CHECK(pt.classical_momentum(-8.0, 0.0) == Catch::Approx(2.0));
    CHECK(pt.classical_momentum(-11.0, 0.0) == 0.0);   // below the minimum
    CHECK(pt.classical_momentum(-11.0, 2.0) == 0.0);
    const auto lin = Potential::linear_half_well();
    CHECK(lin.classical_momentum(1.855757, 1.0) ==
          Catch::Approx(1.30824844735241).epsilon(1e-12));
}

TEST_CASE("turning points") {
    SECTION("harmonic") {
        const auto tp = turning_points(Potential::harmonic(1.0), 2.0);
        REQUIRE(tp.points.size() == 2);
        CHECK(tp.points[0].x == Catch::Approx(-2.0).margin(1e-11));
        CHECK(tp.points[1].x == Catch::Approx(2.0).margin(1e-11));
        CHECK_FALSE(tp.points[0].wall);
        REQUIRE(tp.allowed.size() == 1);
    }
    SECTION("linear half well: wall plus smooth point") {
        const auto tp = turning_points(Potential::linear_half_well(), 5.0);
        REQUIRE(tp.points.size() == 2);
        CHECK(tp.points[0].x == 0.0);
        CHECK(tp.points[0].wall);
        CHECK(tp.points[1].x == Catch::Approx(5.0).margin(1e-10));
        CHECK_FALSE(tp.points[1].wall);
    }
    SECTION("poschl-teller") {
        const auto tp = turning_points(Potential::poschl_teller(10.0), -8.0);
        REQUIRE(tp.points.size() == 2);
        CHECK(tp.points[1].x == Catch::Approx(0.4812118250596034).margin(1e-10));
        CHECK(tp.points[0].x == Catch::Approx(-0.4812118250596034).margin(1e-10));
    }
    SECTION("box walls") {
        const auto tp = turning_points(Potential::box(2.0), 1.0);
        REQUIRE(tp.points.size() == 2);
        CHECK(tp.points[0].wall);
        CHECK(tp.points[1].wall);
        CHECK(tp.points[1].x == 2.0);
    }
    SECTION("below the infimum") {
        CHECK_THROWS_AS(turning_points(Potential::poschl_teller(10.0), -10.5),
                        no_allowed_region_error);
        CHECK_THROWS_AS(turning_points(Potential::harmonic(1.0), -0.1),
                        no_allowed_region_error);
    }
}

TEST_CASE("momentum vanishes at smooth turning points and region is symmetric") {
    const auto pt = Potential::poschl_teller(10.0);
    for (double eps : {-8.0, -4.5, -0.9, -0.03}) {
        const auto tp = turning_points(pt, eps);
        REQUIRE(tp.allowed.size() == 1);
        CHECK(std::abs(tp.allowed.front().lo + tp.allowed.front().hi) < 1e-9);
        for (const auto& p : tp.points) {
            CHECK(pt.classical_momentum(eps, p.x) < 1e-5);
            const double inside = p.x - 1e-3 * (p.x > 0 ? 1 : -1);
            CHECK(pt.classical_momentum(eps, inside) > 0.0);
        }
    }
}

TEST_CASE("maslov indices") {
    CHECK(Potential::box(1.0).maslov_index().value() == 1.0);
    CHECK(Potential::harmonic(1.0).maslov_index().value() == 0.5);
    CHECK(Potential::poschl_teller(5.0).maslov_index().value() == 0.5);
    CHECK(Potential::quartic(1.0, 0.0).maslov_index().value() == 0.5);
    const MaslovIndex lin = Potential::linear_half_well().maslov_index();
    CHECK(lin.num == 3);
    CHECK(lin.den == 4);
}

TEST_CASE("potential spec grammar") {
    CHECK(parse_potential("pt:D=10").kind() == PotentialKind::poschl_teller);
    CHECK(parse_potential("pt:D=10").depth() == 10.0);
    CHECK(parse_potential("box:L=2.5").box_length() == 2.5);
    CHECK(parse_potential("harm:w=0.5").omega() == 0.5);
    CHECK(parse_potential("linwell").kind() == PotentialKind::linear_half_well);
    const auto q = parse_potential("quartic:a=1,b=0.5");
    CHECK(q.quartic_a() == 1.0);
    CHECK(q.quartic_b() == 0.5);

    CHECK_THROWS_MATCHES(parse_potential("pt:D="), parse_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("pt:D=")));
    CHECK_THROWS_AS(parse_potential("pt:d=10"), parse_error);
    CHECK_THROWS_AS(parse_potential("foo:L=1"), parse_error);
    CHECK_THROWS_AS(parse_potential("box"), parse_error);
    CHECK_THROWS_AS(parse_potential("quartic:a=1"), parse_error);
    CHECK_THROWS_AS(parse_potential("pt:D=1x"), parse_error);

    // round trip through the grammar
    CHECK(parse_potential(Potential::poschl_teller(12.5).spec_string()).depth() == 12.5);
}
