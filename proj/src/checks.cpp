#include "dvdm/checks.hpp"

#include <array>
#include <cmath>
#include <random>

#include "dvdm/grid.hpp"
#include "dvdm/invariants.hpp"
#include "dvdm/operators.hpp"
#include "dvdm/schemes.hpp"

namespace dvdm {

namespace {

State random_state(std::mt19937_64& rng, int K, double amplitude = 1.0) {
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    State v(static_cast<std::size_t>(K));
    for (auto& x : v) x = dist(rng);
    return v;
}

double rel_diff(const State& a, const State& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num = std::max(num, std::abs(a[k] - b[k]));
        den = std::max({den, std::abs(a[k]), std::abs(b[k])});
    }
    return den > 0.0 ? num / den : num;
}

double rel_diff(double a, double b, double scale) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale, 1e-300});
}

struct Recorder {
    std::vector<PropertyResult> results;
    void add(const std::string& name, double worst, double tol) {
        results.push_back({name, worst <= tol, worst, tol});
    }
};

constexpr std::array<StencilKind, 6> kAllStencils = {
    StencilKind::FwdDiff,  StencilKind::BwdDiff,     StencilKind::CDiff1,
    StencilKind::CDiff2,   StencilKind::FwdAvgSpace, StencilKind::CAvg1};

constexpr std::array<int, 4> kSizes = {5, 8, 64, 257};

}  // namespace

std::vector<PropertyResult> check_operators(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Recorder rec;
    const double tol = 1e-13;
    const int pairs = 100;

    double commute = 0.0, split1 = 0.0, split2 = 0.0, product = 0.0;
    double skew_fwd = 0.0, skew_c1 = 0.0, sbp = 0.0, temporal = 0.0;
    for (int K : kSizes) {
        const double dx = 1.0 / K;
        for (int s = 0; s < pairs; ++s) {
            State v = random_state(rng, K);
            State w = random_state(rng, K);

            for (std::size_t i = 0; i < kAllStencils.size(); ++i) {
                for (std::size_t j = i + 1; j < kAllStencils.size(); ++j) {
                    State ab = stencil_apply(kAllStencils[i],
                                             stencil_apply(kAllStencils[j], v, dx), dx);
                    State ba = stencil_apply(kAllStencils[j],
                                             stencil_apply(kAllStencils[i], v, dx), dx);
                    commute = std::max(commute, rel_diff(ab, ba));
                }
            }
            {
                // spatial stencils applied levelwise commute with the
                // temporal average and difference
                const double dt = 0.25;
                State d1 = stencil_apply(StencilKind::CDiff1,
                                         temporal_pair(TemporalOp::FwdAvgT, v, w, dt), dx);
                State d2 = temporal_pair(TemporalOp::FwdAvgT,
                                         stencil_apply(StencilKind::CDiff1, v, dx),
                                         stencil_apply(StencilKind::CDiff1, w, dx), dt);
                temporal = std::max(temporal, rel_diff(d1, d2));
            }
            {
                State c1 = stencil_apply(StencilKind::CDiff1, v, dx);
                State f = stencil_apply(StencilKind::FwdDiff, v, dx);
                State b = stencil_apply(StencilKind::BwdDiff, v, dx);
                State half(f.size());
                for (std::size_t k = 0; k < half.size(); ++k) half[k] = 0.5 * (f[k] + b[k]);
                split1 = std::max(split1, rel_diff(c1, half));

                State c2 = stencil_apply(StencilKind::CDiff2, v, dx);
                State fb = stencil_apply(StencilKind::FwdDiff, b, dx);
                State bf = stencil_apply(StencilKind::BwdDiff, f, dx);
                split2 = std::max({split2, rel_diff(c2, fb), rel_diff(c2, bf)});
            }
            {
                State vw(v.size());
                for (std::size_t k = 0; k < vw.size(); ++k) vw[k] = v[k] * w[k];
                State lhs = stencil_apply(StencilKind::FwdDiff, vw, dx);
                State dv = stencil_apply(StencilKind::FwdDiff, v, dx);
                State dw = stencil_apply(StencilKind::FwdDiff, w, dx);
                State rhs(v.size());
                const std::size_t n = v.size();
                for (std::size_t k = 0; k < n; ++k)
                    rhs[k] = dv[k] * w[(k + 1) % n] + v[k] * dw[k];
                product = std::max(product, rel_diff(lhs, rhs));
            }
            {
                State dv = stencil_apply(StencilKind::FwdDiff, v, dx);
                State dw = stencil_apply(StencilKind::BwdDiff, w, dx);
                double lhs = inner_product(dv, w, dx);
                double rhs = -inner_product(v, dw, dx);
                double scale = lp_norm(v, 2, dx) * lp_norm(w, 2, dx) / dx;
                skew_fwd = std::max(skew_fwd, rel_diff(lhs, rhs, scale));

                State cv = stencil_apply(StencilKind::CDiff1, v, dx);
                State cw = stencil_apply(StencilKind::CDiff1, w, dx);
                lhs = inner_product(cv, w, dx);
                rhs = -inner_product(v, cw, dx);
                skew_c1 = std::max(skew_c1, rel_diff(lhs, rhs, scale));
            }
            {
                // <a d<1> b, d<2> b> = -(1/2) <(d+ a)(d+ b), d+ b>
                const State& a = v;
                const State& b = w;
                State d1b = stencil_apply(StencilKind::CDiff1, b, dx);
                State d2b = stencil_apply(StencilKind::CDiff2, b, dx);
                State ad1b(a.size());
                for (std::size_t k = 0; k < a.size(); ++k) ad1b[k] = a[k] * d1b[k];
                double lhs = inner_product(ad1b, d2b, dx);
                State da = stencil_apply(StencilKind::FwdDiff, a, dx);
                State db = stencil_apply(StencilKind::FwdDiff, b, dx);
                State dadb(a.size());
                for (std::size_t k = 0; k < a.size(); ++k) dadb[k] = da[k] * db[k];
                double rhs = -0.5 * inner_product(dadb, db, dx);
                double scale = lp_norm(da, kInfNorm, dx) * inner_product(db, db, dx);
                sbp = std::max(sbp, rel_diff(lhs, rhs, scale));
            }
        }
    }
    rec.add("operators.commute_pairwise", commute, tol);
    rec.add("operators.commute_with_temporal", temporal, tol);
    rec.add("operators.cdiff1_is_average_of_onesided", split1, tol);
    rec.add("operators.cdiff2_is_fwd_bwd_composition", split2, tol);
    rec.add("operators.forward_product_rule", product, tol);
    rec.add("operators.skew_symmetry_fwd_bwd", skew_fwd, tol);
    rec.add("operators.skew_symmetry_cdiff1", skew_c1, tol);
    rec.add("operators.sbp_reduction_identity", sbp, tol);
    return rec.results;
}

std::vector<PropertyResult> check_invariants(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Recorder rec;

    double sobolev_violation = 0.0;
    for (int K : kSizes) {
        for (double L : {0.25, 1.0, 40.0}) {
            const double dx = L / K;
            const double lhat = sobolev_constant(L);
            for (int s = 0; s < 1000; ++s) {
                State v = random_state(rng, K);
                const double lhs = lp_norm(v, kInfNorm, dx);
                const double rhs = lhat * h1_norm(v, dx);
                sobolev_violation = std::max(sobolev_violation, (lhs - rhs) / rhs);
            }
        }
    }
    rec.add("invariants.discrete_sobolev_bound", sobolev_violation, 0.0);

    double cs = 0.0, par = 0.0;
    for (int K : kSizes) {
        const double dx = 1.0 / K;
        for (int s = 0; s < 200; ++s) {
            State v = random_state(rng, K);
            State w = random_state(rng, K);
            const double nv = inner_product(v, v, dx);
            const double nw = inner_product(w, w, dx);
            cs = std::max(cs, (2.0 * inner_product(v, w, dx) - (nv + nw)) /
                                  std::max(nv + nw, 1e-300));
            State sum(v.size());
            for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = v[k] + w[k];
            par = std::max(par, (inner_product(sum, sum, dx) - 2.0 * (nv + nw)) /
                                    std::max(nv + nw, 1e-300));
        }
    }
    rec.add("invariants.young_inequality", cs, 1e-12);
    rec.add("invariants.sum_square_bound", par, 1e-12);

    double flux_sym = 0.0;
    for (int s = 0; s < 200; ++s) {
        State a = random_state(rng, 64, 2.0);
        State b = random_state(rng, 64, 2.0);
        for (Family fam : {Family::KdV, Family::GeneralizedKdV, Family::Ostrovsky}) {
            EquationSpec spec;
            spec.family = fam;
            spec.p = 3;
            flux_sym = std::max(flux_sym,
                                rel_diff(dvdm_flux(spec, a, b), dvdm_flux(spec, b, a)));
        }
    }
    rec.add("invariants.flux_symmetry", flux_sym, 1e-13);

    double agree = 0.0;
    {
        const Grid g = make_grid(2.0, 32, 1.0, 100);
        EquationSpec kdv{Family::KdV, 6.0, -1.0, 2, 0.0};
        EquationSpec gkdv{Family::GeneralizedKdV, 6.0, -1.0, 2, 0.0};
        for (int s = 0; s < 100; ++s) {
            State a = random_state(rng, g.K);
            State b = random_state(rng, g.K);
            agree = std::max(agree, rel_diff(scheme_residual(kdv, g, a, b),
                                             scheme_residual(gkdv, g, a, b)));
        }
    }
    rec.add("invariants.kdv_gkdv_p2_residual_agreement", agree, 1e-14);
    return rec.results;
}

std::vector<PropertyResult> check_bounds(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Recorder rec;
    const double q = 2.0, r = 1.0;
    const double L = 4.0;
    const int K = 64;
    const double dx = L / K;

    EquationSpec kdv{Family::KdV, 6.0, -1.0, 2, 0.0};
    EquationSpec gkdv{Family::GeneralizedKdV, 6.0, -1.0, 3, 0.0};
    EquationSpec ostrovsky{Family::Ostrovsky, 6.0, -1.0, 2, 0.5};

    for (const auto& spec : {kdv, gkdv, ostrovsky}) {
        const double theta = theta_min(spec, q, r, L);
        double violation = 0.0;
        for (int s = 0; s < 1000; ++s) {
            State e = random_state(rng, K, 2.0 * q * r);
            const double h1 = h1_norm(e, dx);
            const double mod = modified_error_energy(spec, e, dx, theta);
            violation = std::max(violation, (h1 * h1 - mod) / std::max(h1 * h1, 1e-300));
        }
        rec.add("bounds.modified_energy_dominates_h1." + family_name(spec.family),
                violation, 0.0);
    }

    {
        double violation = 0.0;
        for (int s = 0; s < 500; ++s) {
            State e = random_state(rng, K, 2.0 * q * r);
            const double a = std::abs(error_energy_A(kdv, e, dx));
            const double bound = std::abs(kdv.alpha) / (3.0 * std::abs(kdv.beta)) *
                                 sup_norm(e) * l2_invariant(e, dx);
            violation = std::max(violation, (a - bound) / std::max(bound, 1e-300));
        }
        rec.add("bounds.kdv_error_energy_A_bound", violation, 1e-14);
    }
    {
        double violation = 0.0;
        const double coeff = (32.0 * std::abs(ostrovsky.alpha) * q * r +
                              3.0 * std::abs(ostrovsky.gamma) * L * L) /
                             (48.0 * std::abs(ostrovsky.beta));
        for (int s = 0; s < 500; ++s) {
            State e = random_state(rng, K, 2.0 * q * r);
            const double a = std::abs(error_energy_A(ostrovsky, e, dx));
            const double bound = coeff * l2_invariant(e, dx);
            violation = std::max(violation, (a - bound) / std::max(bound, 1e-300));
        }
        rec.add("bounds.ostrovsky_error_energy_A_bound", violation, 1e-14);
    }

    {
        // The L/4 norm bound is an even-K statement: the spectral inverse of
        // the first central difference keeps its smallest nonzero symbol at
        // sin(2 pi / K)/dx only when K is even (the bound is tight at K = 4).
        // For odd K the near-half-period mode pushes the norm toward L/pi.
        double worst = 0.0;
        for (double Lv : {0.25, 1.0, 4.0, 40.0}) {
            for (int Kv : {4, 8, 16, 64, 256}) {
                const double dxv = Lv / Kv;
                const double norm = operator_norm_estimate(
                    [dxv](const State& v) { return fd_inverse(v, dxv); }, Kv);
                worst = std::max(worst, (norm - Lv / 4.0) / (Lv / 4.0));
            }
        }
        rec.add("bounds.fd_inverse_norm_L_over_4", worst, 1e-7);
    }
    {
        double comp = 0.0, mean_worst = 0.0;
        for (int s = 0; s < 200; ++s) {
            const int Kv = (s % 2 == 0) ? 64 : 65;  // even and odd lengths
            State v = random_state(rng, Kv);
            State c1 = stencil_apply(StencilKind::CDiff1, v, dx);
            State back = stencil_apply(StencilKind::CDiff1, fd_inverse(c1, dx), dx);
            comp = std::max(comp, rel_diff(back, c1));
            mean_worst = std::max(mean_worst, std::abs(mass(fd_inverse(v, dx), dx)));
        }
        rec.add("bounds.fd_inverse_composition", comp, 1e-12);
        rec.add("bounds.fd_inverse_zero_mean", mean_worst, 1e-13);
    }
    return rec.results;
}

}  // namespace dvdm
