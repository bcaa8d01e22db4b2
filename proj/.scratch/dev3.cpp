#include <cstdio>
#include "weylab/kernel_decomp.hpp"
#include "weylab/level_set.hpp"
using namespace weylab;
int main() {
    // dominance: Q=50, k = 2*53 = 106 (divisible only by q=53 in [50,150])
    {
        DecompositionContext ctx(50.0);
        Cplx full = phi_hat(ctx, 106);
        double q = 53.0;
        Cplx dom = ctx.fphi(106.0 / (q * q)) * ((q - 1.0) / (q * q));
        std::printf("k=106: |full|=%.6e |dominant|=%.6e ratio=%.3f\n", std::abs(full),
                    std::abs(dom), std::abs(full) / std::abs(dom));
    }
    // lemma21 small sweeps for unit test freeze
    for (double Q : {50.0, 100.0}) {
        DecompositionContext ctx(Q);
        auto rep = verify_lemma21(ctx, 4000, 2);
        std::printf("lemma21 Q=%.0f kmax=4000: sup=%.9e argmax=%lld\n", Q, rep.sup_ratio, rep.argmax_k);
    }
    // lemma22 ratio across Q (d=2, N=3, window [-9,9])
    for (double Q : {50.0, 100.0, 200.0}) {
        DecompositionContext ctx(Q, 2, 3);
        auto rep = verify_lemma22(ctx, -9, 9, 2);
        std::printf("lemma22 Q=%.0f: sup=%.6e ratio=%.6e argmax=(%lld,%lld)\n", Q, rep.sup_abs,
                    rep.ratio, rep.argmax_n1, rep.argmax_n2);
    }
    // series probe envelope (head sup) at Q=4
    {
        DecompositionContext ctx(4.0);
        double sup_head = 0;
        long long argm = 0;
        for (long long k = 1; k <= 60000; ++k) {
            double a = std::abs(phi_hat(ctx, k));
            if (a > sup_head) { sup_head = a; argm = k; }
        }
        std::printf("Q=4 sup_head=%.6e at k=%lld -> tol=%.3e\n", sup_head, argm, 10 * sup_head);
    }
    // decay fit degenerate window: N=4, lambda in [3.9, 3.99]
    {
        EstimatorConfig cfg;
        try {
            auto fit = conditional_decay_fit(2, 4, 3.9, 3.99, 4, cfg);
            std::printf("decay N4 [3.9,3.99]: slope=%.3f pts=%zu (no error)\n", fit.slope, fit.points_used);
        } catch (const std::exception& e) {
            std::printf("decay N4 [3.9,3.99]: error: %s\n", e.what());
        }
    }
    // level-set profile N=2 monotonicity + endpoints, minimal grid lam=0
    {
        EstimatorConfig cfg;
        auto prof = level_profile(2, 2, {0.0, 2.0}, cfg);
        std::printf("N2 lam0 measure=%.6f unc=%.4f lamN measure=%.6f\n",
                    prof.entries[0].est.measure, prof.entries[0].est.uncertainty,
                    prof.entries[1].est.measure);
    }
    // chebyshev full profile d in {2,3}, N in {2,4,8}
    {
        for (int d : {2, 3})
            for (long long N : {2ll, 4ll, 8ll}) {
                EstimatorConfig cfg;
                cfg.parallelism = 2;
                std::vector<double> lams;
                for (int i = 0; i <= 6; ++i) lams.push_back(N * i / 6.0);
                auto prof = level_profile(d, N, lams, cfg);
                auto rep = chebyshev_check(prof);
                std::printf("cheb d=%d N=%lld: max_ratio=%.4f all_pass=%d\n", d, N, rep.max_ratio,
                            (int)rep.all_pass);
            }
    }
    return 0;
}
