#pragma once

// Superlevel sets of the kernel modulus,
//
//   G_lambda = { (x, t) : |K_N(x, t)| > lambda },
//
// measured either on an equispaced grid (Mx >= 8N, Mt >= 8N^d) or by seeded
// Monte Carlo with binomial error bars.  chebyshev_check audits the identity
// lambda^2 |G_lambda| <= int |K_N|^2 = N;  conditional_decay_fit reads the
// log-log decay slope of a profile (reported against the Chebyshev slope -2;
// steeper decay is an observation, never an assertion);  duality_audit
// checks, at small N, the chain
//
//   lambda |G_lambda|  <=  int_{G_lambda} |K_N|  =  Re sum_{n<=N} f_hat(n, n^d)
//
// with f = 1_{G_lambda} K_N / |K_N|, on two grid resolutions combined by
// first-order Richardson extrapolation (f is discontinuous, so plain grid
// sums converge only at first order).
//
// Membership uses the strict inequality |K_N| > lambda; grid points landing
// exactly on lambda are excluded (a measure-zero tie in exact arithmetic).

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylab/exp_sum.hpp"
#include "weylab/parallel.hpp"
#include "weylab/rng.hpp"

namespace weylab {

enum class EstimatorKind { grid, monte_carlo };

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::grid;
    std::size_t Mx = 0;                 // 0 -> minimal 8N
    std::size_t Mt = 0;                 // 0 -> minimal 8N^d
    std::size_t samples = 1'000'000;    // monte carlo
    std::uint64_t seed = 0;
    std::size_t max_grid_points = std::size_t(1) << 26;  // guard before MC fallback
    unsigned parallelism = 0;
};

struct MeasureEstimate {
    double measure = 0.0;
    double uncertainty = 0.0;
    EstimatorKind used = EstimatorKind::grid;
    bool mc_fallback = false;  // grid was requested but tripped the resource guard
    std::size_t Mx = 0, Mt = 0, samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct GridSpec {
    std::size_t Mx, Mt;
};

inline GridSpec level_grid_spec(int d, long long N, const EstimatorConfig& cfg) {
    unsigned __int128 nd = KernelParams{d, N}.n_to_d();
    std::size_t min_mx = static_cast<std::size_t>(8 * N);
    if (nd > (static_cast<unsigned __int128>(1) << 40))
        throw std::invalid_argument("level_set: N^d too large for a grid estimator");
    std::size_t min_mt = static_cast<std::size_t>(8 * static_cast<unsigned long long>(nd));
    GridSpec g{cfg.Mx ? cfg.Mx : min_mx, cfg.Mt ? cfg.Mt : min_mt};
    if (g.Mx < min_mx || g.Mt < min_mt)
        throw std::invalid_argument("level_set: grid below the 8N x 8N^d minimum");
    return g;
}

// Row-by-row evaluation of |K|^2 on the exact rational grid (j/Mx, k/Mt).
// Calls visit(j, k, mod2) for every grid point of row k.
template <typename Visit>
void scan_grid_row(const KernelParams& params, std::size_t Mx, std::size_t Mt, std::size_t k,
                   const std::vector<Cplx>& wx, Visit&& visit) {
    std::vector<Cplx> c(static_cast<std::size_t>(params.N) + 1);
    for (long long n = 1; n <= params.N; ++n) {
        unsigned long long r = powmod_u64(static_cast<unsigned long long>(n),
                                          static_cast<unsigned long long>(params.d),
                                          static_cast<unsigned long long>(Mt));
        unsigned long long num = mulmod_u64(static_cast<unsigned long long>(k), r,
                                            static_cast<unsigned long long>(Mt));
        c[static_cast<std::size_t>(n)] = unit(static_cast<double>(num) / static_cast<double>(Mt));
    }
    for (std::size_t j = 0; j < Mx; ++j) {
        Cplx K(0.0, 0.0);
        std::size_t idx = 0;
        for (long long n = 1; n <= params.N; ++n) {
            idx += j;
            if (idx >= Mx) idx -= Mx;
            K += c[static_cast<std::size_t>(n)] * wx[idx];
        }
        visit(j, K);
    }
}

}  // namespace detail

inline MeasureEstimate measure_level_set(int d, long long N, double lambda,
                                         const EstimatorConfig& cfg) {
    KernelParams params{d, N};
    params.validate();
    if (!(lambda >= 0.0)) throw std::invalid_argument("measure_level_set: lambda must be >= 0");

    MeasureEstimate est;
    bool use_grid = cfg.kind == EstimatorKind::grid;
    detail::GridSpec grid{0, 0};
    if (use_grid) {
        grid = detail::level_grid_spec(d, N, cfg);
        if (grid.Mx > cfg.max_grid_points / grid.Mt) {
            use_grid = false;  // resource guard: fall back to MC, flagged
            est.mc_fallback = true;
        }
    }

    if (use_grid) {
        est.used = EstimatorKind::grid;
        est.Mx = grid.Mx;
        est.Mt = grid.Mt;
        std::vector<Cplx> wx(grid.Mx);
        for (std::size_t m = 0; m < grid.Mx; ++m)
            wx[m] = unit(static_cast<double>(m) / static_cast<double>(grid.Mx));
        const double lambda2 = lambda * lambda;
        std::vector<std::uint64_t> row_counts(grid.Mt, 0);
        parallel_for(grid.Mt, cfg.parallelism, [&](std::size_t k) {
            std::uint64_t count = 0;
            detail::scan_grid_row(params, grid.Mx, grid.Mt, k, wx, [&](std::size_t, const Cplx& K) {
                if (std::norm(K) > lambda2) ++count;
            });
            row_counts[k] = count;
        });
        std::uint64_t total = 0;
        for (std::uint64_t c : row_counts) total += c;
        est.measure = static_cast<double>(total) /
                      (static_cast<double>(grid.Mx) * static_cast<double>(grid.Mt));
        // discretization scale of the boundary strips
        est.uncertainty = 2.0 * (1.0 / static_cast<double>(grid.Mx) + 1.0 / static_cast<double>(grid.Mt));
        return est;
    }

    est.used = EstimatorKind::monte_carlo;
    est.samples = cfg.samples;
    est.seed = cfg.seed;
    if (cfg.samples < 100) throw std::invalid_argument("measure_level_set: need at least 100 samples");
    const double lambda2 = lambda * lambda;
    constexpr std::size_t kChunk = 8192;
    std::size_t chunks = (cfg.samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> hits(chunks, 0);
    parallel_for(chunks, cfg.parallelism, [&](std::size_t ci) {
        std::size_t lo = ci * kChunk;
        std::size_t hi = std::min(cfg.samples, lo + kChunk);
        std::uint64_t h = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            double x = counter_unit(cfg.seed, 2 * i);
            double t = counter_unit(cfg.seed, 2 * i + 1);
            Cplx K = eval_kernel(params, Phase(TorusPoint(t)), TorusPoint(x));
            if (std::norm(K) > lambda2) ++h;
        }
        hits[ci] = h;
    });
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;
    double n = static_cast<double>(cfg.samples);
    double phat = static_cast<double>(total) / n;
    est.measure = phat;
    est.uncertainty = std::sqrt(std::max(phat * (1.0 - phat), 1.0 / n) / n);
    return est;
}

struct LevelEntry {
    double lambda = 0.0;
    MeasureEstimate est;
};

struct LevelProfile {
    int d = 0;
    long long N = 0;
    std::vector<LevelEntry> entries;
};

inline LevelProfile level_profile(int d, long long N, const std::vector<double>& lambdas,
                                  const EstimatorConfig& cfg) {
    LevelProfile profile;
    profile.d = d;
    profile.N = N;
    profile.entries.reserve(lambdas.size());
    for (double lambda : lambdas)
        profile.entries.push_back(LevelEntry{lambda, measure_level_set(d, N, lambda, cfg)});
    return profile;
}

struct ChebyshevEntry {
    double lambda = 0.0;
    double measure = 0.0;
    double ratio = 0.0;  // lambda^2 measure / N
    bool pass = true;
};

struct ChebyshevReport {
    double max_ratio = 0.0;
    bool all_pass = true;
    std::vector<ChebyshevEntry> entries;
};

// lambda^2 |G_lambda| <= N exactly; the estimator gets 5x its own relative
// error of slack.
inline ChebyshevReport chebyshev_check(const LevelProfile& profile) {
    ChebyshevReport rep;
    const double N = static_cast<double>(profile.N);
    for (const LevelEntry& e : profile.entries) {
        ChebyshevEntry ce;
        ce.lambda = e.lambda;
        ce.measure = e.est.measure;
        ce.ratio = e.lambda * e.lambda * e.est.measure / N;
        double rel_err = e.est.measure > 0.0 ? e.est.uncertainty / e.est.measure : 0.0;
        ce.pass = e.lambda * e.lambda * e.est.measure <= N * (1.0 + 5.0 * rel_err);
        rep.all_pass = rep.all_pass && ce.pass;
        rep.max_ratio = std::max(rep.max_ratio, ce.ratio);
        rep.entries.push_back(ce);
    }
    return rep;
}

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points_used = 0;
    std::vector<std::pair<double, double>> loglog;  // (log lambda, log measure)
};

// Log-log slope of the profile over [lambda_lo, lambda_hi] in (sqrt N, N).
inline DecayFit conditional_decay_fit(int d, long long N, double lambda_lo, double lambda_hi,
                                      std::size_t n_points, const EstimatorConfig& cfg) {
    double sqrtN = std::sqrt(static_cast<double>(N));
    if (!(lambda_lo > sqrtN) || !(lambda_hi <= static_cast<double>(N)) || !(lambda_hi > lambda_lo))
        throw std::invalid_argument("conditional_decay_fit: window must lie inside (sqrt N, N]");
    if (n_points < 3) throw std::invalid_argument("conditional_decay_fit: need >= 3 lambda points");

    std::vector<double> lambdas(n_points);
    double llo = std::log(lambda_lo), lhi = std::log(lambda_hi);
    for (std::size_t i = 0; i < n_points; ++i)
        lambdas[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                        static_cast<double>(n_points - 1));
    LevelProfile profile = level_profile(d, N, lambdas, cfg);

    DecayFit fit;
    for (const LevelEntry& e : profile.entries)
        if (e.est.measure > 0.0)
            fit.loglog.emplace_back(std::log(e.lambda), std::log(e.est.measure));
    fit.points_used = fit.loglog.size();
    if (fit.points_used < 3)
        throw std::runtime_error("conditional_decay_fit: fewer than 3 nonzero-measure points");
    double n = static_cast<double>(fit.points_used);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : fit.loglog) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

// --------------------------------------------------------------------------
// duality audit
// --------------------------------------------------------------------------

struct DualityGridValues {
    double measure = 0.0;
    double lhs = 0.0;  // lambda |G_lambda|
    double mid = 0.0;  // int_{G_lambda} |K_N|
    Cplx rhs{0.0, 0.0};  // sum_{n<=N} f_hat(n, n^d)
};

struct DualityReport {
    int d = 0;
    long long N = 0;
    double lambda = 0.0;
    double tol = 0.0;
    DualityGridValues coarse, fine, refined;
    bool lhs_ok = false;      // lhs <= mid (1 + tol)
    bool pairing_ok = false;  // |mid - Re rhs| <= tol * mid
};

namespace detail {

inline DualityGridValues duality_on_grid(const KernelParams& params, double lambda,
                                         std::size_t Mx, std::size_t Mt, unsigned parallelism) {
    const long long N = params.N;
    std::vector<Cplx> wx(Mx);
    for (std::size_t m = 0; m < Mx; ++m)
        wx[m] = unit(static_cast<double>(m) / static_cast<double>(Mx));
    const double lambda2 = lambda * lambda;

    struct RowAcc {
        std::uint64_t count = 0;
        double sum_abs = 0.0;
        std::vector<Cplx> pair_n;  // per-n pairing partials
    };
    std::vector<RowAcc> rows(Mt);
    parallel_for(Mt, parallelism, [&](std::size_t k) {
        RowAcc acc;
        acc.pair_n.assign(static_cast<std::size_t>(N), Cplx(0.0, 0.0));
        std::vector<Cplx> terms(static_cast<std::size_t>(N) + 1);
        std::vector<Cplx> c(static_cast<std::size_t>(N) + 1);
        for (long long n = 1; n <= N; ++n) {
            unsigned long long r = powmod_u64(static_cast<unsigned long long>(n),
                                              static_cast<unsigned long long>(params.d),
                                              static_cast<unsigned long long>(Mt));
            unsigned long long num = mulmod_u64(static_cast<unsigned long long>(k), r,
                                                static_cast<unsigned long long>(Mt));
            c[static_cast<std::size_t>(n)] = unit(static_cast<double>(num) / static_cast<double>(Mt));
        }
        for (std::size_t j = 0; j < Mx; ++j) {
            Cplx K(0.0, 0.0);
            std::size_t idx = 0;
            for (long long n = 1; n <= N; ++n) {
                Cplx v = c[static_cast<std::size_t>(n)];
                idx += j;
                if (idx >= Mx) idx -= Mx;
                v *= wx[idx];
                terms[static_cast<std::size_t>(n)] = v;
                K += v;
            }
            double m2 = std::norm(K);
            if (m2 > lambda2 && m2 > 0.0) {
                double mod = std::sqrt(m2);
                ++acc.count;
                acc.sum_abs += mod;
                Cplx f = K / mod;
                // f_hat(n, n^d) term: f(x,t) e(-(n x + n^d t)) = f * conj(term_n)
                for (long long n = 1; n <= N; ++n)
                    acc.pair_n[static_cast<std::size_t>(n - 1)] +=
                        f * std::conj(terms[static_cast<std::size_t>(n)]);
            }
        }
        rows[k] = std::move(acc);
    });

    DualityGridValues out;
    double inv = 1.0 / (static_cast<double>(Mx) * static_cast<double>(Mt));
    std::uint64_t count = 0;
    double sum_abs = 0.0;
    Cplx pairing(0.0, 0.0);
    for (const RowAcc& acc : rows) {
        count += acc.count;
        sum_abs += acc.sum_abs;
        for (const Cplx& v : acc.pair_n) pairing += v;
    }
    out.measure = static_cast<double>(count) * inv;
    out.lhs = lambda * out.measure;
    out.mid = sum_abs * inv;
    out.rhs = pairing * inv;
    return out;
}

}  // namespace detail

// Audit the duality inequality at one lambda.  Mx, Mt = 0 selects 32x the
// Nyquist box of K_N; explicit grids must be at least 4x Nyquist.
inline DualityReport duality_audit(int d, long long N, double lambda, std::size_t Mx = 0,
                                   std::size_t Mt = 0, double tol = 1e-3,
                                   unsigned parallelism = 0) {
    KernelParams params{d, N};
    params.validate();
    if (d != 2 || N > 4)
        throw std::invalid_argument("duality_audit: supported domain is d = 2, N <= 4");
    if (!(lambda >= 0.0)) throw std::invalid_argument("duality_audit: lambda must be >= 0");
    unsigned __int128 nd = params.n_to_d();
    std::size_t nyq_x = static_cast<std::size_t>(2 * N + 1);
    std::size_t nyq_t = static_cast<std::size_t>(2 * static_cast<unsigned long long>(nd) + 1);
    if (Mx == 0) Mx = 32 * nyq_x;
    if (Mt == 0) Mt = 32 * nyq_t;
    if (Mx < 4 * nyq_x || Mt < 4 * nyq_t)
        throw std::invalid_argument("duality_audit: grid must be >= 4x the Nyquist box");

    DualityReport rep;
    rep.d = d;
    rep.N = N;
    rep.lambda = lambda;
    rep.tol = tol;
    rep.coarse = detail::duality_on_grid(params, lambda, Mx, Mt, parallelism);
    rep.fine = detail::duality_on_grid(params, lambda, 2 * Mx, 2 * Mt, parallelism);
    rep.refined.measure = 2.0 * rep.fine.measure - rep.coarse.measure;
    rep.refined.lhs = 2.0 * rep.fine.lhs - rep.coarse.lhs;
    rep.refined.mid = 2.0 * rep.fine.mid - rep.coarse.mid;
    rep.refined.rhs = 2.0 * rep.fine.rhs - rep.coarse.rhs;

    double scale = std::max(rep.refined.mid, 1e-12);
    rep.lhs_ok = rep.refined.lhs <= rep.refined.mid * (1.0 + tol) + 1e-12;
    rep.pairing_ok = std::abs(rep.refined.mid - rep.refined.rhs.real()) <= tol * scale;
    return rep;
}

// --------------------------------------------------------------------------
// regime helpers (reported, never baked into assertions)
// --------------------------------------------------------------------------

// Lower end 100 N^{1/2 + eps^2} of the conditional-decay regime.
inline double decay_window_lo(long long N, double eps = 0.1) {
    return 100.0 * std::pow(static_cast<double>(N), 0.5 + eps * eps);
}

// The scale choice Q^{1/d} = N^{-eps^2} lambda / 100, solved for Q.
inline double q_for_lambda(int d, long long N, double lambda, double eps = 0.1) {
    double base = std::pow(static_cast<double>(N), -eps * eps) * lambda / 100.0;
    return std::pow(base, d);
}

}  // namespace weylab
