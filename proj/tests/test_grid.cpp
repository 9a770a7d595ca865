#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dvdm/grid.hpp"

using namespace dvdm;

TEST_CASE("make_grid computes spacings by direct division") {
    const Grid g = make_grid(40.0, 400, 1.0, 1000);
    CHECK(g.dx == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.dt == doctest::Approx(0.001).epsilon(1e-15));
    CHECK(g.K == 400);
    CHECK(g.M == 1000);

    const Grid tiny = make_grid(1.0, 5, 1.0, 1);
    CHECK(tiny.dx == doctest::Approx(0.2));
    CHECK(tiny.dt == doctest::Approx(1.0));
}

TEST_CASE("make_grid rejects degenerate parameters") {
    CHECK_THROWS_AS(make_grid(1.0, 4, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 8, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 8, -1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 8, 1.0, 0), std::invalid_argument);
}

TEST_CASE("equation spec validation") {
    EquationSpec spec;
    CHECK_NOTHROW(validate(spec));
    spec.beta = 0.0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
    spec.beta = -1.0;
    spec.family = Family::GeneralizedKdV;
    spec.p = 0;
    CHECK_THROWS_AS(validate(spec), std::invalid_argument);
}

TEST_CASE("lp_norm matches hand values") {
    CHECK(lp_norm({3.0, 4.0}, 2.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lp_norm({1.0, -2.0, 3.0}, kInfNorm, 0.7) == doctest::Approx(3.0));
    CHECK(lp_norm({1.0, 1.0, 1.0, 1.0}, 1.0, 0.25) == doctest::Approx(1.0));
    CHECK(lp_norm({}, 2.0, 1.0) == 0.0);
}

TEST_CASE("inner_product matches hand values") {
    CHECK(inner_product({1.0, 2.0}, {3.0, 4.0}, 0.5) == doctest::Approx(5.5).epsilon(1e-15));
    CHECK(inner_product({1.0, 0.0}, {0.0, 1.0}, 1.0) == 0.0);
    const double self = inner_product({2.0, 2.0}, {2.0, 2.0}, 0.5);
    CHECK(self == doctest::Approx(4.0));
    CHECK(self == doctest::Approx(lp_norm({2.0, 2.0}, 2.0, 0.5) * lp_norm({2.0, 2.0}, 2.0, 0.5)));
}

TEST_CASE("h1_norm: constant vectors and a hand stencil") {
    // constant: gradient term vanishes, sqrt(c^2 L)
    const State c4(8, 3.0);
    CHECK(h1_norm(c4, 0.5) == doctest::Approx(std::sqrt(9.0 * 4.0)).epsilon(1e-14));
    CHECK(h1_norm(State(8, 0.0), 0.5) == 0.0);
    // [0,1,0,0], dx=0.5: ||v||^2 = 0.5, d+v = [2,-2,0,0], ||d+v||^2 = 4
    CHECK(h1_norm({0.0, 1.0, 0.0, 0.0}, 0.5) ==
          doctest::Approx(std::sqrt(4.5)).epsilon(1e-14));
}

TEST_CASE("sobolev_constant") {
    CHECK(sobolev_constant(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(sobolev_constant(4.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(sobolev_constant(0.25) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("sup_norm") {
    CHECK(sup_norm({1.0, -5.0, 3.0}) == 5.0);
    CHECK(sup_norm(State(4, 0.0)) == 0.0);
}

TEST_CASE("family_name round trip") {
    CHECK(family_name(Family::KdV) == "kdv");
    CHECK(family_name(Family::GeneralizedKdV) == "gkdv");
    CHECK(family_name(Family::Ostrovsky) == "ostrovsky");
}
