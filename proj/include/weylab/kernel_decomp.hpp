#pragma once

// Prime-rational comb decomposition of the kernel.
//
// phi is a smooth bump supported on [1/200, 1/100] with peak value 1:
//
//     phi(u) = exp(1 - (b0-a0)^2 / (4 (u-a0)(b0-u))),   u in (a0, b0).
//
// The comb over primes q in [Q, 3Q] is
//
//     Phi(t) = sum_{q prime in [Q,3Q]} sum_{a=1}^{q-1} phi(q^2 (t - a/q)),
//
// periodized over the torus (each bump sits inside (0,1), so periodization
// never wraps).  Its Fourier coefficients have the closed form
//
//     Phi_hat(k) = sum_q q^{-2} Fphi(k/q^2) (q [q|k] - 1),
//
// from sum_{a=1}^{q-1} e(-ak/q) = q [q|k] - 1 at prime q, where Fphi is the
// real-line Fourier transform of phi.  The kernel splits as
//
//     K_{1,Q} = K_N Phi / Phi_hat(0),      K_{2,Q} = K_N - K_{1,Q},
//
// whose (n1, n2) Fourier coefficient vanishes on the diagonal n2 = n1^d and
// equals -Phi_hat(n2 - n1^d)/Phi_hat(0) elsewhere in the band 1 <= n1 <= N
// (and vanishes outside the band, where K_N itself has no spectrum).
//
// The verify_* routines only measure; the pass thresholds live in the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "weylab/exp_sum.hpp"
#include "weylab/parallel.hpp"
#include "weylab/quadrature.hpp"
#include "weylab/rational.hpp"

namespace weylab {

struct BumpSpec {
    double a0 = 1.0 / 200.0;
    double b0 = 1.0 / 100.0;
};

inline double bump_eval(const BumpSpec& spec, double u) {
    if (!(u > spec.a0) || !(u < spec.b0)) return 0.0;
    double w = spec.b0 - spec.a0;
    double denom = 4.0 * (u - spec.a0) * (spec.b0 - u);
    return std::exp(1.0 - w * w / denom);
}

// Fphi(xi) = int phi(u) e(-xi u) du, quadrature refined to 1e-12 absolute.
// Panel doubling starts at 4: the bump needs that much resolution anyway.
inline Cplx bump_fourier(const BumpSpec& spec, double xi, double tol = 1e-12) {
    return integrate_gl_doubling(
        [&](double u) { return bump_eval(spec, u) * unit(-xi * u); }, spec.a0, spec.b0, tol, 4);
}

// Comb context: the prime list for [Q, 3Q], the bump, and a memo of Fphi
// values (each needed xi = k/q^2 is computed once by quadrature, exactly; no
// interpolation so the tolerance accounting stays clean).  d, N are optional
// and only needed for the K_{1,Q}/K_{2,Q} operations.
class DecompositionContext {
  public:
    explicit DecompositionContext(double Q, int d = 0, long long N = 0, BumpSpec bump = {})
        : Q_(Q), d_(d), N_(N), bump_(bump) {
        if (!(Q >= 2.0)) throw std::invalid_argument("DecompositionContext: Q must be >= 2");
        if (3.0 * Q > static_cast<double>(kPrimeRangeCap))
            throw std::invalid_argument("DecompositionContext: 3Q exceeds the sieve guard");
        auto pr = primes_in_range(static_cast<unsigned long long>(std::ceil(Q)),
                                  static_cast<unsigned long long>(std::floor(3.0 * Q)));
        primes_ = std::move(pr.primes);
        if (primes_.empty()) throw std::runtime_error("DecompositionContext: no primes in [Q, 3Q]");
        fphi0_ = bump_fourier(bump_, 0.0).real();
        double s = 0.0;
        for (unsigned long long q : primes_) {
            double qd = static_cast<double>(q);
            s += (qd - 1.0) / (qd * qd);
        }
        phi_hat0_ = fphi0_ * s;
    }

    double Q() const { return Q_; }
    int d() const { return d_; }
    long long N() const { return N_; }
    const BumpSpec& bump() const { return bump_; }
    const std::vector<unsigned long long>& primes() const { return primes_; }
    double fphi0() const { return fphi0_; }
    double phi_hat0() const { return phi_hat0_; }

    bool has_kernel() const { return d_ >= 2 && N_ >= 1; }
    bool in_theorem_window() const {
        if (!has_kernel()) return false;
        double nd = std::pow(static_cast<double>(N_), d_);
        return Q_ >= std::sqrt(nd) && Q_ <= nd;
    }

    // memoized Fphi(xi)
    Cplx fphi(double xi) const {
        std::uint64_t key;
        static_assert(sizeof(key) == sizeof(xi));
        std::memcpy(&key, &xi, sizeof(key));
        {
            std::lock_guard<std::mutex> lock(memo_mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Cplx v = bump_fourier(bump_, xi);
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.emplace(key, v);
        return v;
    }

  private:
    double Q_;
    int d_;
    long long N_;
    BumpSpec bump_;
    std::vector<unsigned long long> primes_;
    double fphi0_ = 0.0;
    double phi_hat0_ = 0.0;
    mutable std::unordered_map<std::uint64_t, Cplx> memo_;
    mutable std::mutex memo_mutex_;
};

// Phi(t).  The support of the (a, q) bump has width 1/(100 q^2), far below
// the 1/q spacing, so for each q at most the residue a = floor(t q) can
// contribute.
inline double phi_comb_eval(const DecompositionContext& ctx, const TorusPoint& t) {
    double tau = t.value();
    double total = 0.0;
    for (unsigned long long q : ctx.primes()) {
        double qd = static_cast<double>(q);
        double a = std::floor(tau * qd);
        if (a < 1.0 || a > qd - 1.0) continue;
        double u = qd * (qd * tau - a);  // q^2 (t - a/q)
        total += bump_eval(ctx.bump(), u);
    }
    return total;
}

// Closed-form Phi_hat(k).
inline Cplx phi_hat(const DecompositionContext& ctx, long long k) {
    Cplx total(0.0, 0.0);
    for (unsigned long long q : ctx.primes()) {
        double qd = static_cast<double>(q);
        double xi = static_cast<double>(k) / (qd * qd);
        Cplx f = ctx.fphi(xi);
        bool divides = (k % static_cast<long long>(q)) == 0;
        double character_sum = divides ? qd - 1.0 : -1.0;
        total += f * (character_sum / (qd * qd));
    }
    return total;
}

struct Lemma21Report {
    double Q = 0.0;
    long long k_max = 0;
    std::size_t prime_count = 0;
    double sup_ratio = 0.0;     // max over 1 <= k <= k_max of |Phi_hat(k)| * Q
    long long argmax_k = 0;
    std::vector<double> sweep;  // per-k ratios when requested, sweep[k-1]
};

inline Lemma21Report verify_lemma21(const DecompositionContext& ctx, long long k_max,
                                    unsigned parallelism = 0, bool keep_sweep = false) {
    if (k_max < 1) throw std::invalid_argument("verify_lemma21: k_max must be >= 1");
    Lemma21Report rep;
    rep.Q = ctx.Q();
    rep.k_max = k_max;
    rep.prime_count = ctx.primes().size();
    std::vector<double> ratios(static_cast<std::size_t>(k_max));
    parallel_for(static_cast<std::size_t>(k_max), parallelism, [&](std::size_t i) {
        long long k = static_cast<long long>(i) + 1;
        ratios[i] = std::abs(phi_hat(ctx, k)) * ctx.Q();
    });
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i] > rep.sup_ratio) {
            rep.sup_ratio = ratios[i];
            rep.argmax_k = static_cast<long long>(i) + 1;
        }
    }
    if (keep_sweep) rep.sweep = std::move(ratios);
    return rep;
}

struct PhiHat0Row {
    double Q = 0.0;
    std::size_t prime_count = 0;
    double phi_hat0 = 0.0;
    double ratio = 0.0;  // Phi_hat(0) ln Q / (Fphi(0) ln 3), expected -> 1
};

inline std::vector<PhiHat0Row> verify_phihat0_asymptotic(const std::vector<double>& Q_list,
                                                         BumpSpec bump = {}) {
    std::vector<PhiHat0Row> rows;
    rows.reserve(Q_list.size());
    const double ln3 = std::log(3.0);
    for (double Q : Q_list) {
        DecompositionContext ctx(Q, 0, 0, bump);
        PhiHat0Row row;
        row.Q = Q;
        row.prime_count = ctx.primes().size();
        row.phi_hat0 = ctx.phi_hat0();
        row.ratio = ctx.phi_hat0() * std::log(Q) / (ctx.fphi0() * ln3);
        rows.push_back(row);
    }
    return rows;
}

// K_{1,Q}(x, t) = K_N(x, t) Phi(t) / Phi_hat(0).
inline Cplx k1q_eval(const DecompositionContext& ctx, const TorusPoint& x, const TorusPoint& t) {
    if (!ctx.has_kernel()) throw std::invalid_argument("k1q_eval: context lacks d, N");
    if (ctx.phi_hat0() < 1e-300) throw std::runtime_error("k1q_eval: degenerate context, Phi_hat(0) ~ 0");
    double phi_t = phi_comb_eval(ctx, t);
    if (phi_t == 0.0) return {0.0, 0.0};
    Cplx k = eval_kernel(KernelParams{ctx.d(), ctx.N()}, Phase(t), x);
    return k * (phi_t / ctx.phi_hat0());
}

inline Cplx k2q_eval(const DecompositionContext& ctx, const TorusPoint& x, const TorusPoint& t) {
    Cplx k = eval_kernel(KernelParams{ctx.d(), ctx.N()}, Phase(t), x);
    return k - k1q_eval(ctx, x, t);
}

// Fourier coefficient of K_{2,Q} in closed form.
inline Cplx k2q_hat_closed_form(const DecompositionContext& ctx, long long n1, long long n2) {
    if (!ctx.has_kernel()) throw std::invalid_argument("k2q_hat_closed_form: context lacks d, N");
    if (ctx.phi_hat0() < 1e-300)
        throw std::runtime_error("k2q_hat_closed_form: degenerate context, Phi_hat(0) ~ 0");
    if (n1 < 1 || n1 > ctx.N()) return {0.0, 0.0};  // K_N has no spectrum off the band
    unsigned __int128 n1d =
        KernelParams::pow_u128_checked(static_cast<unsigned long long>(n1), ctx.d());
    long long diff_k = n2 - static_cast<long long>(n1d);
    if (diff_k == 0) return {0.0, 0.0};
    return -phi_hat(ctx, diff_k) / ctx.phi_hat0();
}

struct Lemma22Report {
    double Q = 0.0;
    long long n2_lo = 0, n2_hi = 0;
    std::size_t prime_count = 0;
    double sup_abs = 0.0;        // sup over the band of |K2Q_hat(n1, n2)|
    double ratio = 0.0;          // sup_abs * Q / ln Q
    long long argmax_n1 = 0, argmax_n2 = 0;
};

inline Lemma22Report verify_lemma22(const DecompositionContext& ctx, long long n2_lo,
                                    long long n2_hi, unsigned parallelism = 0) {
    if (!ctx.has_kernel()) throw std::invalid_argument("verify_lemma22: context lacks d, N");
    if (n2_hi < n2_lo) throw std::invalid_argument("verify_lemma22: empty n2 window");
    Lemma22Report rep;
    rep.Q = ctx.Q();
    rep.n2_lo = n2_lo;
    rep.n2_hi = n2_hi;
    rep.prime_count = ctx.primes().size();

    std::size_t band = static_cast<std::size_t>(ctx.N());
    std::vector<double> best(band, 0.0);
    std::vector<long long> best_n2(band, 0);
    parallel_for(band, parallelism, [&](std::size_t i) {
        long long n1 = static_cast<long long>(i) + 1;
        for (long long n2 = n2_lo; n2 <= n2_hi; ++n2) {
            double a = std::abs(k2q_hat_closed_form(ctx, n1, n2));
            if (a > best[i]) {
                best[i] = a;
                best_n2[i] = n2;
            }
        }
    });
    for (std::size_t i = 0; i < band; ++i) {
        if (best[i] > rep.sup_abs) {
            rep.sup_abs = best[i];
            rep.argmax_n1 = static_cast<long long>(i) + 1;
            rep.argmax_n2 = best_n2[i];
        }
    }
    rep.ratio = rep.sup_abs * ctx.Q() / std::log(ctx.Q());
    return rep;
}

// --------------------------------------------------------------------------
// numerical cross-checks
// --------------------------------------------------------------------------

// The bump supports of Phi, as intervals [a/q + a0/q^2, a/q + b0/q^2].
inline std::vector<std::pair<double, double>> phi_support_intervals(const DecompositionContext& ctx) {
    std::size_t total = 0;
    for (unsigned long long q : ctx.primes()) total += static_cast<std::size_t>(q - 1);
    if (total > 2'000'000)
        throw std::runtime_error("phi_support_intervals: too many bump intervals at this Q");
    std::vector<std::pair<double, double>> out;
    out.reserve(total);
    for (unsigned long long q : ctx.primes()) {
        double q2 = static_cast<double>(q) * static_cast<double>(q);
        for (unsigned long long a = 1; a < q; ++a) {
            double center = static_cast<double>(a) / static_cast<double>(q);
            out.emplace_back(center + ctx.bump().a0 / q2, center + ctx.bump().b0 / q2);
        }
    }
    return out;
}

// Integral over the torus of F(t) Phi(t): Phi vanishes off its supports, so
// integrate F * Phi bump by bump.  Per-interval tolerance is tol spread over
// the interval count.
template <typename F>
Cplx integrate_against_phi(const DecompositionContext& ctx, const F& f, double tol = 1e-10) {
    auto intervals = phi_support_intervals(ctx);
    double per = tol / static_cast<double>(std::max<std::size_t>(1, intervals.size()));
    Cplx total(0.0, 0.0);
    for (const auto& [lo, hi] : intervals) {
        total += integrate_gl_doubling(
            [&](double t) { return f(t) * phi_comb_eval(ctx, TorusPoint(t)); }, lo, hi, per);
    }
    return total;
}

// Quadrature oracle for K2Q_hat(n1, n2), independent of the closed form:
// the K_N part by exact Nyquist averaging in both variables, the K_{1,Q}
// part with its x-integral on an exact equispaced grid and its t-integral
// summed bump by bump.
inline Cplx k2q_hat_numeric(const DecompositionContext& ctx, long long n1, long long n2,
                            double tol = 1e-9) {
    if (!ctx.has_kernel()) throw std::invalid_argument("k2q_hat_numeric: context lacks d, N");
    const KernelParams params{ctx.d(), ctx.N()};
    const long long N = ctx.N();

    // K_N_hat(n1, n2): average of K_N(x,t) e(-n1 x - n2 t) over a grid that
    // clears every frequency in play.
    unsigned __int128 nd = params.n_to_d();
    long long ndl = static_cast<long long>(nd);
    std::size_t Mx = static_cast<std::size_t>(2 * (N + std::llabs(n1)) + 1);
    std::size_t Mt = static_cast<std::size_t>(2 * (ndl + std::llabs(n2)) + 1);
    Cplx kn_hat(0.0, 0.0);
    for (std::size_t k = 0; k < Mt; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(Mt);
        Cplx row(0.0, 0.0);
        for (std::size_t j = 0; j < Mx; ++j) {
            double x = static_cast<double>(j) / static_cast<double>(Mx);
            row += eval_kernel(params, Phase(TorusPoint(t)), TorusPoint(x)) *
                   unit(-(static_cast<double>(n1) * x));
        }
        kn_hat += row * unit(-(static_cast<double>(n2) * t));
    }
    kn_hat /= static_cast<double>(Mx) * static_cast<double>(Mt);

    // K1Q_hat(n1, n2) = (1/Phi_hat(0)) int Phi(t) e(-n2 t) [x-average] dt,
    // where the inner x-average of K_N(x,t) e(-n1 x) is exact once the grid
    // beats N + |n1|.
    std::size_t Mx_inner = static_cast<std::size_t>(2 * (N + std::llabs(n1)) + 1);
    auto x_average = [&](double t) {
        Cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < Mx_inner; ++j) {
            double x = static_cast<double>(j) / static_cast<double>(Mx_inner);
            acc += eval_kernel(params, Phase(TorusPoint(t)), TorusPoint(x)) *
                   unit(-(static_cast<double>(n1) * x));
        }
        return acc / static_cast<double>(Mx_inner);
    };
    Cplx k1q_hat = integrate_against_phi(
        ctx, [&](double t) { return x_average(t) * unit(-(static_cast<double>(n2) * t)); }, tol);
    k1q_hat /= ctx.phi_hat0();

    return kn_hat - k1q_hat;
}

}  // namespace weylab
