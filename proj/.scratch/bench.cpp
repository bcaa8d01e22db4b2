#include <chrono>
#include <cstdio>

#include "weylab/exp_sum.hpp"
#include "weylab/kernel_decomp.hpp"
#include "weylab/level_set.hpp"
#include "weylab/mean_value.hpp"
#include "weylab/weyl_bounds.hpp"

using namespace weylab;
using Clock = std::chrono::steady_clock;

static double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main() {
    // exponent fits
    {
        auto t0 = Clock::now();
        auto fit3 = exponent_fit(2, 3, {8, 16, 32, 64});
        auto t1 = Clock::now();
        std::printf("fit d2 p3: slope=%.4f intercept=%.4f (%.2fs)\n", fit3.slope, fit3.intercept,
                    secs(t0, t1));
        for (auto& pt : fit3.points)
            std::printf("  N=%lld S=%s resid=%.4f\n", pt.N, pt.S.str().c_str(), pt.residual);
        auto fit2 = exponent_fit(2, 2, {8, 16, 32, 64});
        std::printf("fit d2 p2: slope=%.4f\n", fit2.slope);
    }
    // quadrature acceptance sweep
    {
        auto t0 = Clock::now();
        double worst = 0;
        for (int d : {2, 3})
            for (int p : {1, 2, 3})
                for (long long N = 1; N <= 8; ++N) {
                    auto c = count_solutions(d, N, p);
                    auto q = quadrature_integer_p(d, N, p, 0, 0, 2);
                    double rel = std::abs(q.float_value - c.float_value) / c.float_value;
                    worst = std::max(worst, rel);
                }
        auto t1 = Clock::now();
        std::printf("quad-vs-count d{2,3} p{1,2,3} N<=8: worst rel=%.2e (%.2fs)\n", worst, secs(t0, t1));
    }
    // scan d2 N4 exhaustive + dense oracle
    {
        auto t0 = Clock::now();
        auto scan = scan_conjecture1(2, 4, QPolicy{true, 0}, APolicy{true, 0}, 1, 2);
        auto t1 = Clock::now();
        std::printf("scan d2 N4: %zu records max_ratio=%.6f at q=%llu a=%lld (%.2fs)\n",
                    scan.records.size(), scan.summary.max_ratio, scan.summary.argmax_q,
                    scan.summary.argmax_a, secs(t0, t1));
        double worst = 0;
        for (auto& rec : scan.records) {
            // dense-grid direct maximization oracle
            KernelParams params{2, 4};
            std::size_t M = 1 << 14;
            double best = 0;
            std::size_t bj = 0;
            for (std::size_t j = 0; j < M; ++j) {
                Cplx v = eval_kernel(params, RationalPhase(rec.a, rec.q),
                                     TorusPoint((double)j / (double)M));
                if (std::abs(v) > best) {
                    best = std::abs(v);
                    bj = j;
                }
            }
            worst = std::max(worst, std::abs(best - rec.max_modulus));
        }
        auto t2 = Clock::now();
        std::printf("  dense raw-grid vs refined: worst=%.2e (%.2fs)\n", worst, secs(t1, t2));
    }
    // lemma 2.1 sweeps
    for (double Q : {50.0, 100.0, 200.0, 400.0}) {
        auto t0 = Clock::now();
        DecompositionContext ctx(Q);
        auto rep = verify_lemma21(ctx, 10000, 2);
        auto t1 = Clock::now();
        std::printf("lemma21 Q=%.0f: primes=%zu sup=%.6e argmax=%lld (%.2fs)\n", Q,
                    rep.prime_count, rep.sup_ratio, rep.argmax_k, secs(t0, t1));
    }
    // phihat0 asymptotic
    {
        auto t0 = Clock::now();
        auto rows = verify_phihat0_asymptotic({1e3, 1e4, 1e5});
        auto t1 = Clock::now();
        for (auto& r : rows)
            std::printf("phihat0 Q=%.0f: primes=%zu ratio=%.6f\n", r.Q, r.prime_count, r.ratio);
        std::printf("  (%.2fs)\n", secs(t0, t1));
    }
    // lemma 2.2 closed vs numeric, d2 N3 Q12
    {
        auto t0 = Clock::now();
        DecompositionContext ctx(12.0, 2, 3);
        double worst = 0;
        int pairs = 0;
        for (long long n1 = 1; n1 <= 3; ++n1) {
            for (long long n2 : {n1 * n1, n1 * n1 + 1, n1 * n1 - 3, 2ll, -9ll, 9ll, -13ll + n1 * n1, 5ll}) {
                Cplx closed = k2q_hat_closed_form(ctx, n1, n2);
                Cplx numeric = k2q_hat_numeric(ctx, n1, n2, 1e-9);
                worst = std::max(worst, std::abs(closed - numeric));
                ++pairs;
            }
        }
        auto t1 = Clock::now();
        std::printf("lemma22 closed-vs-numeric %d pairs: worst=%.2e (%.2fs)\n", pairs, worst,
                    secs(t0, t1));
        auto rep = verify_lemma22(ctx, -9, 9, 2);
        std::printf("lemma22 sweep: sup=%.6e ratio=%.4f argmax=(%lld,%lld)\n", rep.sup_abs,
                    rep.ratio, rep.argmax_n1, rep.argmax_n2);
    }
    // decay fit
    {
        auto t0 = Clock::now();
        EstimatorConfig cfg;
        cfg.Mx = 256;
        cfg.Mt = 8192;
        cfg.parallelism = 2;
        auto fit = conditional_decay_fit(2, 16, 5.0, 15.0, 8, cfg);
        auto t1 = Clock::now();
        std::printf("decay fit d2 N16 [5,15]: slope=%.4f pts=%zu (%.2fs)\n", fit.slope,
                    fit.points_used, secs(t0, t1));
    }
    // level profile N=2 closed form, grid + mc
    {
        EstimatorConfig cfg;
        cfg.Mx = 64;
        cfg.Mt = 4096;
        EstimatorConfig mc;
        mc.kind = EstimatorKind::monte_carlo;
        mc.samples = 1'000'000;
        mc.seed = 20260810;
        double worst_grid = 0, worst_mc_sigma = 0;
        for (int i = 1; i <= 10; ++i) {
            double lam = 2.0 * i / 11.0;
            double closed = std::acos(lam * lam / 2.0 - 1.0) / M_PI;
            auto g = measure_level_set(2, 2, lam, cfg);
            auto m = measure_level_set(2, 2, lam, mc);
            worst_grid = std::max(worst_grid, std::abs(g.measure - closed));
            worst_mc_sigma =
                std::max(worst_mc_sigma, std::abs(m.measure - closed) / m.uncertainty);
        }
        std::printf("profile N2: worst grid err=%.2e worst mc sigma=%.2f\n", worst_grid,
                    worst_mc_sigma);
    }
    // Phi partial series probe tuning
    {
        auto t0 = Clock::now();
        DecompositionContext ctx(4.0);  // primes 5,7,11
        long long K = 60000;
        // partial sum at a few t via closed-form coefficients
        std::vector<Cplx> coef(static_cast<std::size_t>(K) + 1);
        for (long long k = 0; k <= K; ++k) coef[(size_t)k] = phi_hat(ctx, k);
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            double t = counter_unit(99, (uint64_t)i);
            Cplx s = coef[0];
            for (long long k = 1; k <= K; ++k) {
                Cplx e = unit(k * t);
                s += coef[(size_t)k] * e + std::conj(coef[(size_t)k] * e);
            }
            double direct = phi_comb_eval(ctx, TorusPoint(t));
            worst = std::max(worst, std::abs(s.real() - direct));
        }
        double tail = 0;
        for (long long k = K + 1; k <= K + 2000; ++k) tail = std::max(tail, std::abs(phi_hat(ctx, k)));
        auto t1 = Clock::now();
        std::printf("series probe Q=4 K=%lld: worst=%.3e tail_max=%.3e 10*tail=%.3e (%.2fs)\n", K,
                    worst, tail, 10 * tail, secs(t0, t1));
    }
    return 0;
}
