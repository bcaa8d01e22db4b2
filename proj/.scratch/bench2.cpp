#include <chrono>
#include <cstdio>
#include "weylab/kernel_decomp.hpp"
#include "weylab/rng.hpp"
using namespace weylab;
using Clock = std::chrono::steady_clock;
static double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}
int main() {
    for (double Q : {50.0, 100.0, 200.0, 400.0}) {
        auto t0 = Clock::now();
        DecompositionContext ctx(Q);
        auto rep = verify_lemma21(ctx, 10000, 2);
        auto t1 = Clock::now();
        std::printf("lemma21 Q=%.0f: primes=%zu sup=%.9e argmax=%lld (%.2fs)\n", Q, rep.prime_count,
                    rep.sup_ratio, rep.argmax_k, secs(t0, t1));
    }
    {
        auto t0 = Clock::now();
        DecompositionContext ctx(4.0);
        long long K = 60000;
        std::vector<Cplx> coef(static_cast<std::size_t>(K) + 1);
        for (long long k = 0; k <= K; ++k) coef[(size_t)k] = phi_hat(ctx, k);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
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
        std::printf("series probe Q=4 K=%lld (100 t): worst=%.3e 10*tailmax=%.3e (%.2fs)\n", K, worst,
                    10 * tail, secs(t0, t1));
    }
    {
        // lemma22 numeric re-check with GL path
        auto t0 = Clock::now();
        DecompositionContext ctx(12.0, 2, 3);
        double worst = 0;
        for (long long n1 = 1; n1 <= 3; ++n1)
            for (long long n2 : {n1 * n1, n1 * n1 + 1, 2ll, -9ll, 9ll}) {
                Cplx closed = k2q_hat_closed_form(ctx, n1, n2);
                Cplx numeric = k2q_hat_numeric(ctx, n1, n2, 1e-9);
                worst = std::max(worst, std::abs(closed - numeric));
            }
        auto t1 = Clock::now();
        std::printf("lemma22 closed-vs-numeric worst=%.2e (%.2fs)\n", worst, secs(t0, t1));
    }
    return 0;
}
