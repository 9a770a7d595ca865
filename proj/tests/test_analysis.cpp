#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dvdm/analysis.hpp"
#include "dvdm/grid.hpp"
#include "dvdm/operators.hpp"

using namespace dvdm;

TEST_CASE("soliton closed form: peak, translation, periodic wrap") {
    CHECK(exact_soliton(1.0, 0.0, 6.0, -1.0, 40.0, 0.0, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-15));
    const double v1 = exact_soliton(1.0, 5.0, 6.0, -1.0, 40.0, 2.0, 9.0);
    const double v2 = exact_soliton(1.0, 5.0, 6.0, -1.0, 40.0, 0.0, 7.0);
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-14));
    const double w1 = exact_soliton(1.0, 20.0, 6.0, -1.0, 40.0, 0.3, 3.0);
    const double w2 = exact_soliton(1.0, 20.0, 6.0, -1.0, 40.0, 0.3, 43.0);
    CHECK(w1 == doctest::Approx(w2).epsilon(1e-14));
}

TEST_CASE("soliton parameter domain is enforced") {
    CHECK_THROWS_AS(soliton_solution(-1.0, 0.0, 6.0, -1.0, 40.0), std::invalid_argument);
    CHECK_THROWS_AS(soliton_solution(1.0, 0.0, 6.0, 1.0, 40.0), std::invalid_argument);
    CHECK_THROWS_AS(soliton_solution(1.0, 0.0, 0.0, -1.0, 40.0), std::invalid_argument);
}

TEST_CASE("soliton profile satisfies the PDE to high order") {
    // independent check: u_t + alpha u u_x - beta u_xxx = 0, via
    // 4th-order centered finite differences in t and x
    const double alpha = 6.0, beta = -1.0, c = 1.0, L = 40.0;
    auto u = [&](double t, double x) { return exact_soliton(c, 20.0, alpha, beta, L, t, x); };
    const double h = 1e-2;
    double worst = 0.0;
    for (double x : {18.0, 19.5, 20.0, 21.0, 23.0}) {
        const double t = 0.4;
        auto d1 = [&](auto f, double s) {
            return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h);
        };
        const double ut = d1([&](double s) { return u(s, x); }, t);
        const double ux = d1([&](double s) { return u(t, s); }, x);
        auto ux_at = [&](double s) { return d1([&](double y) { return u(t, y); }, s); };
        auto uxx_at = [&](double s) { return d1(ux_at, s); };
        const double uxxx = d1(uxx_at, x);
        worst = std::max(worst, std::abs(ut + alpha * u(t, x) * ux - beta * uxxx));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("sample hits the grid nodes") {
    const Grid grid = make_grid(40.0, 80, 1.0, 10);
    const State s = sample(soliton_solution(1.0, 20.0, 6.0, -1.0, 40.0), grid, 0.0);
    REQUIRE(s.size() == 80);
    CHECK(s[40] == doctest::Approx(0.5).epsilon(1e-13));  // node at x = 20
}

TEST_CASE("linear evolution is a single-mode phase rotation") {
    EquationSpec spec;
    spec.alpha = 0.0;
    spec.beta = -1.0;
    const Grid grid = make_grid(8.0, 64, 1.0, 10);
    const double kappa = 2.0 * std::numbers::pi / 8.0;
    const double omega = -spec.beta * kappa * kappa * kappa;
    State u0(64);
    for (int k = 0; k < 64; ++k) u0[k] = 0.3 * std::cos(kappa * k * grid.dx);
    const double t = 0.7;
    const State ut = linear_exact_evolution(spec, u0, grid, t);
    for (int k = 0; k < 64; ++k)
        CHECK(ut[k] == doctest::Approx(0.3 * std::cos(kappa * k * grid.dx + omega * t))
                           .epsilon(1e-10));
}

TEST_CASE("spectral oracle: t=0 identity and the linear closed form") {
    EquationSpec spec;
    spec.alpha = 0.0;
    const Grid fine = make_grid(8.0, 64, 1.0, 10);
    State u0(64);
    for (int k = 0; k < 64; ++k)
        u0[k] = 0.2 * std::sin(2.0 * std::numbers::pi * k / 64.0) +
                0.05 * std::cos(6.0 * std::numbers::pi * k / 64.0);
    const State at0 = spectral_reference(spec, u0, fine, 0.0);
    for (int k = 0; k < 64; ++k) CHECK(at0[k] == doctest::Approx(u0[k]).epsilon(1e-15));

    const State oracle = spectral_reference(spec, u0, fine, 0.5);
    const State closed = linear_exact_evolution(spec, u0, fine, 0.5);
    for (int k = 0; k < 64; ++k)
        CHECK(std::abs(oracle[k] - closed[k]) < 1e-10);
}

TEST_CASE("spectral oracle reproduces the soliton") {
    EquationSpec spec;  // alpha = 6, beta = -1
    const Grid fine = make_grid(40.0, 1024, 0.25, 10);
    const SpaceTimeFn sol = soliton_solution(1.0, 20.0, 6.0, -1.0, 40.0);
    const State u0 = sample(sol, fine, 0.0);
    const State oracle = spectral_reference(spec, u0, fine, 0.25);
    const State ref = sample(sol, fine, 0.25);
    double worst = 0.0;
    for (int k = 0; k < 1024; ++k) worst = std::max(worst, std::abs(oracle[k] - ref[k]));
    CHECK(worst < 1e-8);
}

TEST_CASE("restrict_state") {
    const State fine = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    const State coarse = restrict_state(fine, 4);
    REQUIRE(coarse.size() == 4);
    CHECK(coarse[0] == 0.0);
    CHECK(coarse[1] == 2.0);
    CHECK(coarse[3] == 6.0);
    CHECK_THROWS_AS(restrict_state(fine, 3), std::invalid_argument);
}

TEST_CASE("truncation error: constants and second-order refinement") {
    EquationSpec spec;
    const SpaceTimeFn constant = [](double, double) { return 0.7; };
    const Grid g = make_grid(40.0, 100, 4.0, 100);
    const State xi0 = truncation_error(spec, g, constant, 0);
    for (double x : xi0) CHECK(std::abs(x) < 1e-14);

    // fast soliton: its sech^2 tail at the periodic seam is ~1e-17, so the
    // 1/dx^3 stencil does not amplify wrap error at fine levels
    const SpaceTimeFn sol = soliton_solution(4.0, 20.0, 6.0, -1.0, 40.0);
    double prev_norm = 0.0, prev_dnorm = 0.0;
    for (int lvl = 0; lvl < 3; ++lvl) {
        const Grid grid = make_grid(40.0, 400 << lvl, 2.0, 400 << lvl);
        const State xi = truncation_error(spec, grid, sol, 0);
        const double n = lp_norm(xi, 2.0, grid.dx);
        const double dn = lp_norm(stencil_apply(StencilKind::FwdDiff, xi, grid.dx), 2.0, grid.dx);
        if (lvl > 0) {
            CHECK(prev_norm / n == doctest::Approx(4.0).epsilon(0.15));
            CHECK(prev_dnorm / dn == doctest::Approx(4.0).epsilon(0.15));
        }
        prev_norm = n;
        prev_dnorm = dn;
    }
}

TEST_CASE("h1_error basics") {
    CHECK(h1_error({1.0, 2.0, 3.0, 4.0}, {1.0, 2.0, 3.0, 4.0}, 0.5) == 0.0);
    CHECK(h1_error({0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}, 0.5) ==
          doctest::Approx(std::sqrt(4.5)).epsilon(1e-14));
    CHECK(h1_error({0.0, 1.0, 0.0}, {0.0, 1.0, 0.0}, 0.5) ==
          doctest::Approx(h1_error({0.0, 1.0, 0.0}, {0.0, 1.0, 0.0}, 0.5)));
    CHECK_THROWS_AS(h1_error({1.0}, {1.0, 2.0}, 0.5), std::invalid_argument);
}

TEST_CASE("convergence study on the linear equation is second order") {
    EquationSpec spec;
    spec.alpha = 0.0;
    spec.beta = -1.0;
    const double L = 8.0;
    const double kappa = 2.0 * std::numbers::pi / L;
    const double omega = -spec.beta * kappa * kappa * kappa;
    const SpaceTimeFn exact = [=](double t, double x) {
        return 0.3 * std::cos(kappa * x + omega * t);
    };
    const Grid base = make_grid(L, 32, 0.5, 32);
    SolverConfig cfg;
    cfg.method = Method::Newton;
    cfg.tol = 1e-13;
    const ConvergenceTable table = convergence_study(spec, exact, base, 3, cfg, 2);
    REQUIRE(table.size() == 3);
    CHECK(std::isnan(table[0].order_estimate));
    for (std::size_t j = 1; j < table.size(); ++j) {
        CHECK(table[j].converged);
        CHECK(table[j].order_estimate > 1.5);
        CHECK(table[j].order_estimate < 2.5);
        CHECK(table[j].dx == doctest::Approx(table[j - 1].dx / 2.0));
        CHECK(table[j].dt == doctest::Approx(table[j - 1].dt / 2.0));
    }
}

TEST_CASE("gronwall checker classifies the three reference sequences") {
    const double c = 1.0, d = 4.0, dt = 0.01, T = 1.0;
    const int M = 100;

    // all-zero sequence: premise everywhere, conclusion holds
    {
        const std::vector<double> v(M + 1, 0.0);
        const GronwallReport rep = gronwall_check(v, c, d, dt, T);
        CHECK(rep.preconditions_ok);
        CHECK(rep.premise_holds_through == M - 1);
        CHECK(rep.first_failure_index == -1);
        CHECK(rep.conclusion_holds);
    }
    // linear growth at the additive rate: premise exact, conclusion holds
    {
        std::vector<double> v(M + 1);
        for (int m = 0; m <= M; ++m) v[static_cast<std::size_t>(m)] = d * m * dt;
        const GronwallReport rep = gronwall_check(v, c, d, dt, T);
        CHECK(rep.preconditions_ok);
        CHECK(rep.premise_holds_through == M - 1);
        CHECK(rep.conclusion_holds);
    }
    // super-exponential growth: the checker localizes the first failure
    {
        std::vector<double> v(M + 1);
        for (int m = 0; m <= M; ++m)
            v[static_cast<std::size_t>(m)] = std::exp(3.0 * c * m * dt) - 1.0;
        const GronwallReport rep = gronwall_check(v, c, d, dt, T);
        CHECK(rep.preconditions_ok);
        CHECK(rep.premise_holds_through == 13);
        CHECK(rep.first_failure_index == 14);
    }
}

TEST_CASE("gronwall precondition reporting") {
    const GronwallReport bad0 = gronwall_check({1.0, 2.0}, 1.0, 1.0, 0.1, 0.2);
    CHECK(!bad0.preconditions_ok);
    const GronwallReport badc = gronwall_check({0.0, 0.1}, -1.0, 1.0, 0.1, 0.2);
    CHECK(!badc.preconditions_ok);
    const GronwallReport badneg = gronwall_check({0.0, -0.1}, 1.0, 1.0, 0.1, 0.2);
    CHECK(!badneg.preconditions_ok);
}

TEST_CASE("theory constants hand values") {
    EquationSpec spec;
    spec.alpha = 6.0;
    spec.beta = 1.0;
    // T is tiny: the composed Gronwall exponent is astronomically
    // conservative and overflows for order-one horizons
    const TheoryConstants tc =
        theory_constants(spec, 2.0, 1.0, 0.5, 0.5, 0.5, 0.5, 40.0, 1e-4, 1.0);
    CHECK(tc.C1 == doctest::Approx(163.0).epsilon(1e-14));
    CHECK(tc.theta == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(tc.C2 > 0.0);
    CHECK(tc.Cqr_bound > 0.0);
    CHECK(tc.dx_max_defined);
    CHECK(tc.dx_max == doctest::Approx(std::sqrt((1.0 - 0.5) /
                                                 (2.0 * sobolev_constant(40.0) * tc.Cqr_bound)))
                           .epsilon(1e-12));

    EquationSpec lin;
    lin.alpha = 0.0;
    const TheoryConstants tl = theory_constants(lin, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0);
    CHECK(tl.C1 == doctest::Approx(1.0));

    // doubling r quadruples the dominant r^2 branch of C1
    const TheoryConstants t2 =
        theory_constants(spec, 2.0, 2.0, 0.5, 0.5, 0.5, 0.5, 40.0, 1e-4, 1.0);
    CHECK(t2.C1 == doctest::Approx(3.0 * 6.0 * 9.0 * 4.0 + 1.0).epsilon(1e-14));

    // r below the sup leaves the grid restriction undefined
    const TheoryConstants tu =
        theory_constants(spec, 2.0, 0.25, 0.5, 0.5, 0.5, 0.5, 40.0, 1e-4, 1.0);
    CHECK(!tu.dx_max_defined);
    CHECK(!tu.reason.empty());

    // order-one horizons overflow the composed constant; reported, not thrown
    const TheoryConstants tbig =
        theory_constants(spec, 2.0, 1.0, 0.5, 0.5, 0.5, 0.5, 40.0, 1.0, 1.0);
    CHECK(!tbig.dx_max_defined);
}
