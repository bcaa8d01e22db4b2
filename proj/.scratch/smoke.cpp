#include <cstdio>

#include "weylab/exp_sum.hpp"
#include "weylab/kernel_decomp.hpp"
#include "weylab/level_set.hpp"
#include "weylab/mean_value.hpp"
#include "weylab/rational.hpp"
#include "weylab/weyl_bounds.hpp"

using namespace weylab;

int main() {
    // eval_kernel examples
    {
        Cplx v = eval_kernel(KernelParams{2, 3}, TorusPoint(0.0), TorusPoint(0.0));
        std::printf("K(d2,N3,t0,x0) = %.12f %+.12fi (want 3+0i)\n", v.real(), v.imag());
        v = eval_kernel(KernelParams{2, 2}, TorusPoint(0.5), TorusPoint(0.5));
        std::printf("K(d2,N2,t.5,x.5) = %.12f %+.12fi (want 2+0i)\n", v.real(), v.imag());
        v = eval_kernel(KernelParams{2, 2}, RationalPhase(1, 4), TorusPoint(0.0));
        std::printf("K(d2,N2,t1/4,x0) = %.12f %+.12fi (want 1+1i)\n", v.real(), v.imag());
    }
    // grid
    {
        auto g = eval_kernel_x_grid(KernelParams{2, 2}, Phase(TorusPoint(0.0)), 4);
        std::printf("grid[0] = %.12f (want 2)\n", g[0].real());
        auto g2 = eval_kernel_x_grid(KernelParams{2, 2}, Phase(RationalPhase(1, 4)), 8);
        std::printf("grid8[0] = %.12f %+.12fi (want 1+1i)\n", g2[0].real(), g2[0].imag());
        double maxdiff = 0;
        auto g3 = eval_kernel_x_grid(KernelParams{3, 17}, Phase(TorusPoint(0.37)), 100);
        for (int j = 0; j < 100; ++j) {
            Cplx direct = eval_kernel(KernelParams{3, 17}, TorusPoint(0.37), TorusPoint(j / 100.0));
            maxdiff = std::max(maxdiff, std::abs(direct - g3[(size_t)j]));
        }
        std::printf("grid-vs-direct maxdiff = %.3e (want < 1e-10)\n", maxdiff);
    }
    // max
    {
        auto m = max_modulus_over_x(KernelParams{2, 5}, Phase(TorusPoint(0.0)));
        std::printf("max(N5,t0): m=%.12f x*=%.3e (want 5 at 0)\n", m.modulus, m.x_star.value());
        auto m2 = max_modulus_over_x(KernelParams{2, 2}, Phase(RationalPhase(1, 4)));
        std::printf("max(N2,t1/4): m=%.12f x*=%.12f (want 2 at 0.25)\n", m2.modulus, m2.x_star.value());
        auto m3 = max_modulus_over_x(KernelParams{2, 1}, Phase(TorusPoint(0.7131)));
        std::printf("max(N1): m=%.12f (want 1)\n", m3.modulus);
    }
    // poly sum
    {
        Cplx v = eval_poly_sum(PolynomialSpec({0.0, 0.25}), 2);
        std::printf("poly(0,1/4),N2 = %.12f %+.12fi (want 1+1i)\n", v.real(), v.imag());
        v = eval_poly_sum(PolynomialSpec({0.5}), 2);
        std::printf("poly(1/2),N2 = %.3e %+.3ei (want 0)\n", v.real(), v.imag());
    }
    // Parseval d=2 N=5
    {
        KernelParams p{2, 5};
        std::size_t Mx = 11, Mt = 51;
        double acc = 0;
        for (std::size_t k = 0; k < Mt; ++k)
            for (std::size_t j = 0; j < Mx; ++j)
                acc += std::norm(eval_kernel(p, TorusPoint((double)k / Mt), TorusPoint((double)j / Mx)));
        std::printf("parseval avg = %.12f (want 5)\n", acc / (Mx * Mt));
    }
    // convergents
    {
        auto cv = convergents(M_PI, 200);
        for (auto& c : cv) std::printf("pi conv %lld/%lld err=%.3e\n", c.a, c.q, c.error_bound);
        auto cg = convergents((1.0 + std::sqrt(5.0)) / 2.0, 10);
        for (auto& c : cg) std::printf("phi conv %lld/%lld\n", c.a, c.q);
    }
    // primes
    {
        auto pr = primes_in_range(10, 20);
        std::printf("primes[10,20]:");
        for (auto q : pr.primes) std::printf(" %llu", q);
        std::printf(" (want 11 13 17 19)\n");
        auto pr2 = primes_in_range(2, 2);
        std::printf("primes[2,2] count=%zu\n", pr2.primes.size());
    }
    // bounds
    {
        std::printf("rhs_conj(2,4,4)=%.6f (want 2.828427)\n", rhs_conjectured(2, 4, 4, 0, 1));
        std::printf("rhs_weyl(2,4,4)=%.6f (want 3.464102)\n", rhs_weyl(2, 4, 4, 0, 1));
        std::printf("rhs_vino(2,4,4)=%.6f\n", rhs_vinogradov(2, 4, 4, 0, 1));
        double expect = 4.0 * std::sqrt(0.25 + std::log(4.0) / 4.0 + 4.0 * std::log(4.0) / 16.0);
        std::printf("rhs_vino direct = %.6f\n", expect);
    }
    // conjecture1_ratio
    {
        auto r = conjecture1_ratio(2, 2, 3, 1);
        std::printf("c1(2,2,3,1): max=%.9f ratio=%.9f x*=%.6f in_window=%d (want 2, 1.154701)\n",
                    r.max_modulus, r.ratio, r.x_star, (int)r.in_window);
    }
    // mean value
    {
        auto c = count_solutions(2, 2, 2);
        std::printf("S(2,2)=%s (want 6)\n", c.exact_value.str().c_str());
        auto c2 = count_solutions(2, 3, 2);
        std::printf("S(3,2)=%s (want 15)\n", c2.exact_value.str().c_str());
        auto b = brute_force_count(2, 2, 2);
        std::printf("bf(2,2,2)=%s\n", b.str().c_str());
        auto q = quadrature_integer_p(2, 2, 2);
        std::printf("quad(2,2,2)=%.12f (want 6)\n", q.float_value);
        auto q2 = quadrature_integer_p(2, 3, 2);
        std::printf("quad(2,3,2)=%.12f (want 15)\n", q2.float_value);
        auto mc = monte_carlo(2, 1, 2.5, 1000, 42);
        std::printf("mc(N1)=%.12f stderr=%.3e (want 1, 0)\n", mc.float_value, mc.stderr_value);
        auto fit = exponent_fit(2, 1, {4, 8, 16, 32});
        std::printf("fit(p=1) slope=%.6f (want 1)\n", fit.slope);
    }
    // level set closed form N=2
    {
        EstimatorConfig cfg;
        cfg.Mx = 64;
        cfg.Mt = 4096;
        auto m = measure_level_set(2, 2, 1.9, cfg);
        double closed = std::acos(1.9 * 1.9 / 2.0 - 1.0) / M_PI;
        std::printf("measure(1.9) grid=%.6f closed=%.6f\n", m.measure, closed);
        EstimatorConfig mc_cfg;
        mc_cfg.kind = EstimatorKind::monte_carlo;
        mc_cfg.samples = 200000;
        mc_cfg.seed = 7;
        auto mm = measure_level_set(2, 2, 1.9, mc_cfg);
        std::printf("measure(1.9) mc=%.6f +- %.2e\n", mm.measure, mm.uncertainty);
    }
    // duality
    {
        auto rep = duality_audit(2, 2, 1.5);
        std::printf("duality N2 l1.5: lhs=%.6f mid=%.6f rhs=%.6f+%.1ei lhs_ok=%d pair_ok=%d\n",
                    rep.refined.lhs, rep.refined.mid, rep.refined.rhs.real(), rep.refined.rhs.imag(),
                    (int)rep.lhs_ok, (int)rep.pairing_ok);
        auto rep0 = duality_audit(2, 2, 0.0);
        std::printf("duality l0: lhs=%.3e mid=%.6f rhs=%.6f\n", rep0.refined.lhs, rep0.refined.mid,
                    rep0.refined.rhs.real());
        auto repN = duality_audit(2, 2, 2.5);
        std::printf("duality l2.5: lhs=%.3e mid=%.3e rhs=%.3e\n", repN.refined.lhs, repN.refined.mid,
                    repN.refined.rhs.real());
    }
    // kernel decomp basics
    {
        BumpSpec bump;
        std::printf("bump(1/300)=%.3e bump(3/400)=%.12f bump(a0+1e-9)=%.3e\n",
                    bump_eval(bump, 1.0 / 300.0), bump_eval(bump, 3.0 / 400.0),
                    bump_eval(bump, bump.a0 + 1e-9));
        DecompositionContext ctx(20.0);
        std::printf("Q=20 primes=%zu fphi0=%.9f phihat0=%.9f\n", ctx.primes().size(), ctx.fphi0(),
                    ctx.phi_hat0());
        std::printf("Phi(0)=%.3e (want 0)\n", phi_comb_eval(ctx, TorusPoint(0.0)));
        unsigned long long q0 = ctx.primes()[2];
        double tpk = 1.0 / (double)q0 + (3.0 / 400.0) / ((double)q0 * (double)q0);
        std::printf("Phi(peak q=%llu a=1)=%.9f (want ~1)\n", q0, phi_comb_eval(ctx, TorusPoint(tpk)));
        // phi_hat(7) vs direct quadrature over supports
        Cplx ph7 = phi_hat(ctx, 7);
        Cplx direct = integrate_against_phi(ctx, [&](double t) { return unit(-7.0 * t); }, 1e-11);
        std::printf("phi_hat(7) closed=%.10e%+.10ei direct=%.10e%+.10ei diff=%.2e\n", ph7.real(),
                    ph7.imag(), direct.real(), direct.imag(), std::abs(ph7 - direct));
    }
    std::printf("done\n");
    return 0;
}
