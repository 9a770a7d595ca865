#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dvdm/invariants.hpp"
#include "dvdm/operators.hpp"

using namespace dvdm;

TEST_CASE("mass hand values and the telescoping property") {
    CHECK(mass({1.0, 2.0, 3.0, 4.0}, 0.5) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(mass(State(6, 0.0), 0.3) == 0.0);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    State w(11);
    for (auto& x : w) x = dist(rng);
    const State dw = stencil_apply(StencilKind::CDiff1, w, 0.2);
    CHECK(std::abs(mass(dw, 0.2)) < 1e-13);
}

TEST_CASE("l2_invariant") {
    CHECK(l2_invariant({3.0, 4.0}, 1.0) == doctest::Approx(25.0).epsilon(1e-15));
    CHECK(l2_invariant(State(4, 0.0), 0.5) == 0.0);
    const State v = {1.0, -2.0, 0.5};
    CHECK(l2_invariant({3.0, -6.0, 1.5}, 0.25) ==
          doctest::Approx(9.0 * l2_invariant(v, 0.25)).epsilon(1e-14));
}

TEST_CASE("energy hand values") {
    EquationSpec kdv;
    kdv.alpha = 6.0;
    kdv.beta = 1.0;
    // constant vector: gradient term vanishes, (6/6) * 4 * 1 * 0.5 = 2
    CHECK(energy(kdv, State(4, 1.0), 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(energy(kdv, State(4, 0.0), 0.5) == 0.0);

    EquationSpec ost;
    ost.family = Family::Ostrovsky;
    ost.alpha = 6.0;
    ost.beta = 1.0;
    ost.gamma = 0.0;
    // Ostrovsky(gamma=0) energy is the KdV energy times 2/beta
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    State v(9);
    for (auto& x : v) x = dist(rng);
    CHECK(energy(ost, v, 0.25) ==
          doctest::Approx((2.0 / kdv.beta) * energy(kdv, v, 0.25)).epsilon(1e-12));
}

TEST_CASE("error_energy_A hand values") {
    EquationSpec kdv;
    kdv.alpha = 6.0;
    kdv.beta = 1.0;
    CHECK(error_energy_A(kdv, State(5, 0.0), 0.5) == 0.0);
    CHECK(error_energy_A(kdv, {1.0, -1.0}, 0.5) == doctest::Approx(0.0));
    EquationSpec k3 = kdv;
    k3.alpha = 3.0;
    CHECK(error_energy_A(k3, {1.0, 1.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("theta_min per family") {
    EquationSpec kdv;
    kdv.alpha = 6.0;
    kdv.beta = 1.0;
    CHECK(theta_min(kdv, 2.0, 1.0) == doctest::Approx(9.0).epsilon(1e-14));

    EquationSpec g2;
    g2.family = Family::GeneralizedKdV;
    g2.alpha = 6.0;
    g2.beta = 1.0;
    g2.p = 2;
    CHECK(theta_min(g2, 2.0, 1.0) == doctest::Approx(9.0).epsilon(1e-14));

    EquationSpec lin;
    lin.alpha = 0.0;
    CHECK(theta_min(lin, 2.0, 1.0) == doctest::Approx(1.0));

    EquationSpec ost;
    ost.family = Family::Ostrovsky;
    ost.alpha = 6.0;
    ost.beta = 1.0;
    ost.gamma = 0.5;
    // 1 + (32*6*2*1 + 3*0.5*16) / 48 = 1 + 408/48 = 9.5
    CHECK(theta_min(ost, 2.0, 1.0, 4.0) == doctest::Approx(9.5).epsilon(1e-14));
}

TEST_CASE("modified_error_energy composes its three pieces") {
    EquationSpec kdv;
    const State e = {0.2, -0.1, 0.05, 0.0, -0.3};
    const double dx = 0.5, theta = 9.0;
    const double expected = theta * l2_invariant(e, dx) +
                            l2_invariant(stencil_apply(StencilKind::FwdDiff, e, dx), dx) +
                            error_energy_A(kdv, e, dx);
    CHECK(modified_error_energy(kdv, e, dx, theta) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(modified_error_energy(kdv, State(5, 0.0), dx, theta) == 0.0);
}

TEST_CASE("uncompensated error energy can be negative") {
    EquationSpec kdv;  // alpha = 6, beta = -1
    State e(8, 0.0);
    e[3] = 8.0;  // large spike: the cubic term dominates and is negative here
    CHECK(modified_error_energy(kdv, e, 0.5, 0.0) < 0.0);
    // with the compensation weight it is nonnegative inside the ball
    State small = e;
    for (auto& x : small) x *= 0.5;  // sup norm 4 = 2qr with q=2, r=1
    const double theta = theta_min(kdv, 2.0, 1.0);
    CHECK(modified_error_energy(kdv, small, 0.5, theta) >= 0.0);
}

TEST_CASE("A bound for KdV on random vectors") {
    EquationSpec kdv;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        State e(16);
        for (auto& x : e) x = dist(rng);
        const double a = std::abs(error_energy_A(kdv, e, 0.25));
        const double bound = (std::abs(kdv.alpha) / (3.0 * std::abs(kdv.beta))) * sup_norm(e) *
                             l2_invariant(e, 0.25);
        CHECK(a <= bound * (1.0 + 1e-13));
    }
}

TEST_CASE("invariant_report matches the individual functions") {
    EquationSpec kdv;
    const State v = {0.5, -0.25, 0.1, 0.7, -0.3};
    const double dx = 0.4;
    const InvariantReport rep = invariant_report(kdv, v, dx);
    CHECK(rep.mass == doctest::Approx(mass(v, dx)));
    CHECK(rep.energy == doctest::Approx(energy(kdv, v, dx)));
    CHECK(rep.l2 == doctest::Approx(l2_invariant(v, dx)));
    CHECK(rep.sup == doctest::Approx(sup_norm(v)));
}
