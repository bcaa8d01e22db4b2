#pragma once

// The 2p-th moment of |K_N| over the torus,
//
//   S(N, p) = int_{T^2} |K_N(x, t)|^{2p} dx dt,
//
// computed by three routes that must agree:
//
//   count:       for integer p, orthogonality turns S(N,p) into the number of
//                solutions of  sum n_i = sum m_i,  sum n_i^d = sum m_i^d  with
//                all variables in [1, N].  We build the distribution
//                r_p(s, t) = #{(n_1..n_p) : sum n_i = s, sum n_i^d = t} by
//                p-fold convolution of the unit masses at (n, n^d) and return
//                sum r_p(s,t)^2 exactly in arbitrary precision.
//   quadrature:  |K_N|^{2p} is a trigonometric polynomial with x-frequencies
//                in [-pN, pN] and t-frequencies in [-pN^d, pN^d], so the
//                equispaced average over a (2pN+1) x (2pN^d+1) grid is exact.
//   monte_carlo: seeded uniform sampling, the only route for non-integer p.
//
// Counting never overflows: counts are cpp_int throughout (S passes 2^64 at
// quite moderate N, p).

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "weylab/exp_sum.hpp"
#include "weylab/parallel.hpp"
#include "weylab/rng.hpp"

namespace weylab {

using BigInt = boost::multiprecision::cpp_int;

enum class MeanValueMethod { count, quadrature, monte_carlo };

inline const char* method_name(MeanValueMethod m) {
    switch (m) {
        case MeanValueMethod::count: return "count";
        case MeanValueMethod::quadrature: return "quadrature";
        default: return "monte_carlo";
    }
}

struct MeanValueResult {
    int d = 0;
    long long N = 0;
    double p = 0.0;
    MeanValueMethod method = MeanValueMethod::count;
    bool has_exact = false;
    BigInt exact_value = 0;
    double float_value = 0.0;
    double stderr_value = 0.0;   // monte_carlo only
    std::uint64_t seed = 0;      // monte_carlo only
};

// natural log of a positive BigInt, safe for values far beyond double range
inline double log_bigint(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log_bigint: value must be positive");
    unsigned bits = boost::multiprecision::msb(v);
    if (bits <= 900) return std::log(v.convert_to<double>());
    BigInt top = v >> (bits - 64);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 64) * 0.6931471805599453;
}

// --------------------------------------------------------------------------
// exact counting
// --------------------------------------------------------------------------

// r_p(s, t) with keys packed as (s << 50) | t.
struct CountTable {
    int d = 0;
    long long N = 0;
    int p = 0;
    std::unordered_map<std::uint64_t, BigInt> r;

    static constexpr int kShift = 50;

    static std::uint64_t pack(std::uint64_t s, std::uint64_t t) { return (s << kShift) | t; }
    static std::uint64_t unpack_s(std::uint64_t key) { return key >> kShift; }
    static std::uint64_t unpack_t(std::uint64_t key) { return key & ((1ull << kShift) - 1); }
};

namespace detail {

inline void check_count_args(int d, long long N, int p) {
    KernelParams{d, N}.validate();
    if (p < 1) throw std::invalid_argument("mean_value: p must be >= 1");
    if (static_cast<long long>(p) * N > 10000)
        throw std::invalid_argument("mean_value: p*N = " +
                                    std::to_string(static_cast<long long>(p) * N) +
                                    " exceeds the 10^4 table guard");
    unsigned __int128 tmax =
        static_cast<unsigned __int128>(p) *
        KernelParams::pow_u128_checked(static_cast<unsigned long long>(N), d);
    if (tmax >= (static_cast<unsigned __int128>(1) << CountTable::kShift))
        throw std::invalid_argument("mean_value: p*N^d exceeds the 2^50 key guard");
}

}  // namespace detail

// p-fold convolution of the unit masses at (n, n^d), 1 <= n <= N.
inline CountTable convolution_table(int d, long long N, int p) {
    detail::check_count_args(d, N, p);
    CountTable table;
    table.d = d;
    table.N = N;
    table.p = p;

    std::vector<std::uint64_t> powers(static_cast<std::size_t>(N) + 1, 0);
    for (long long n = 1; n <= N; ++n)
        powers[static_cast<std::size_t>(n)] = static_cast<std::uint64_t>(
            KernelParams::pow_u128_checked(static_cast<unsigned long long>(n), d));

    table.r.reserve(static_cast<std::size_t>(N));
    for (long long n = 1; n <= N; ++n)
        table.r[CountTable::pack(static_cast<std::uint64_t>(n), powers[static_cast<std::size_t>(n)])] = 1;

    for (int step = 2; step <= p; ++step) {
        std::unordered_map<std::uint64_t, BigInt> next;
        next.reserve(table.r.size() * 2);
        for (const auto& [key, cnt] : table.r) {
            std::uint64_t s = CountTable::unpack_s(key);
            std::uint64_t t = CountTable::unpack_t(key);
            for (long long n = 1; n <= N; ++n) {
                std::uint64_t k = CountTable::pack(s + static_cast<std::uint64_t>(n),
                                                   t + powers[static_cast<std::size_t>(n)]);
                next[k] += cnt;
            }
        }
        table.r = std::move(next);
    }
    return table;
}

// S(N, p) = sum over (s,t) of r_p(s,t)^2, exactly.
inline MeanValueResult count_solutions(int d, long long N, int p) {
    CountTable table = convolution_table(d, N, p);
    BigInt total = 0;
    for (const auto& [key, cnt] : table.r) total += cnt * cnt;
    MeanValueResult res;
    res.d = d;
    res.N = N;
    res.p = static_cast<double>(p);
    res.method = MeanValueMethod::count;
    res.has_exact = true;
    res.exact_value = total;
    res.float_value = total.convert_to<double>();
    return res;
}

// Independent oracle: literal enumeration of [1,N]^{2p}.  Guarded by
// N^{2p} <= 10^8.
inline BigInt brute_force_count(int d, long long N, int p) {
    KernelParams{d, N}.validate();
    if (p < 1) throw std::invalid_argument("brute_force_count: p must be >= 1");
    double size = std::pow(static_cast<double>(N), 2 * p);
    if (size > 1e8)
        throw std::invalid_argument("brute_force_count: N^{2p} = " + std::to_string(size) +
                                    " exceeds the 10^8 guard");

    std::vector<std::uint64_t> powers(static_cast<std::size_t>(N) + 1, 0);
    for (long long n = 1; n <= N; ++n)
        powers[static_cast<std::size_t>(n)] = static_cast<std::uint64_t>(
            KernelParams::pow_u128_checked(static_cast<unsigned long long>(n), d));

    std::vector<long long> tup(static_cast<std::size_t>(2 * p), 1);
    BigInt count = 0;
    while (true) {
        std::uint64_t s1 = 0, t1 = 0, s2 = 0, t2 = 0;
        for (int i = 0; i < p; ++i) {
            s1 += static_cast<std::uint64_t>(tup[static_cast<std::size_t>(i)]);
            t1 += powers[static_cast<std::size_t>(tup[static_cast<std::size_t>(i)])];
        }
        for (int i = p; i < 2 * p; ++i) {
            s2 += static_cast<std::uint64_t>(tup[static_cast<std::size_t>(i)]);
            t2 += powers[static_cast<std::size_t>(tup[static_cast<std::size_t>(i)])];
        }
        if (s1 == s2 && t1 == t2) ++count;
        int pos = 0;
        while (pos < 2 * p && tup[static_cast<std::size_t>(pos)] == N) {
            tup[static_cast<std::size_t>(pos)] = 1;
            ++pos;
        }
        if (pos == 2 * p) break;
        ++tup[static_cast<std::size_t>(pos)];
    }
    return count;
}

// --------------------------------------------------------------------------
// quadrature (exact for integer p once the grid clears Nyquist)
// --------------------------------------------------------------------------

// Equispaced average of |K_N|^{2p} over an Mx x Mt grid.  Grid points are
// exact rationals j/Mx, k/Mt, with the t-phase k*n^d/Mt reduced by modular
// arithmetic, so phases carry no power-size rounding.  Mx, Mt = 0 selects the
// minimal exact grid (2pN+1, 2pN^d+1).
inline MeanValueResult quadrature_integer_p(int d, long long N, int p, std::size_t Mx = 0,
                                            std::size_t Mt = 0, unsigned parallelism = 0) {
    KernelParams params{d, N};
    params.validate();
    if (p < 1) throw std::invalid_argument("quadrature_integer_p: p must be >= 1");
    unsigned __int128 nd = params.n_to_d();
    unsigned __int128 min_mt = 2 * static_cast<unsigned __int128>(p) * nd + 1;
    std::size_t min_mx = 2 * static_cast<std::size_t>(p) * static_cast<std::size_t>(N) + 1;
    if (min_mt > (1u << 30))
        throw std::invalid_argument("quadrature_integer_p: minimal t-grid 2pN^d+1 exceeds 2^30");
    if (Mx == 0) Mx = min_mx;
    if (Mt == 0) Mt = static_cast<std::size_t>(min_mt);
    if (Mx < min_mx || Mt < static_cast<std::size_t>(min_mt))
        throw std::invalid_argument("quadrature_integer_p: grid below the exactness threshold (aliasing)");

    // x-phase table w[m] = e(m / Mx)
    std::vector<Cplx> wx(Mx);
    for (std::size_t m = 0; m < Mx; ++m)
        wx[m] = unit(static_cast<double>(m) / static_cast<double>(Mx));

    std::vector<double> row_sum(Mt, 0.0);
    parallel_for(Mt, parallelism, [&](std::size_t k) {
        std::vector<Cplx> c(static_cast<std::size_t>(N) + 1);
        for (long long n = 1; n <= N; ++n) {
            unsigned long long r = powmod_u64(static_cast<unsigned long long>(n),
                                              static_cast<unsigned long long>(d),
                                              static_cast<unsigned long long>(Mt));
            unsigned long long num = mulmod_u64(static_cast<unsigned long long>(k), r,
                                                static_cast<unsigned long long>(Mt));
            c[static_cast<std::size_t>(n)] = unit(static_cast<double>(num) / static_cast<double>(Mt));
        }
        double acc = 0.0, comp = 0.0;
        for (std::size_t j = 0; j < Mx; ++j) {
            Cplx K(0.0, 0.0);
            std::size_t idx = 0;
            for (long long n = 1; n <= N; ++n) {
                idx += j;
                if (idx >= Mx) idx -= Mx;
                K += c[static_cast<std::size_t>(n)] * wx[idx];
            }
            double m2 = std::norm(K);
            double v = 1.0;
            for (int e = 0; e < p; ++e) v *= m2;
            double y = v - comp;
            double t2 = acc + y;
            comp = (t2 - acc) - y;
            acc = t2;
        }
        row_sum[k] = acc;
    });

    double total = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < Mt; ++k) {
        double y = row_sum[k] - comp;
        double t2 = total + y;
        comp = (t2 - total) - y;
        total = t2;
    }

    MeanValueResult res;
    res.d = d;
    res.N = N;
    res.p = static_cast<double>(p);
    res.method = MeanValueMethod::quadrature;
    res.float_value = total / (static_cast<double>(Mx) * static_cast<double>(Mt));
    return res;
}

// --------------------------------------------------------------------------
// Monte Carlo (any p > 0)
// --------------------------------------------------------------------------

inline MeanValueResult monte_carlo(int d, long long N, double p, std::size_t samples,
                                   std::uint64_t seed, unsigned parallelism = 0) {
    KernelParams params{d, N};
    params.validate();
    if (!(p > 0)) throw std::invalid_argument("monte_carlo: p must be positive");
    if (samples < 100) throw std::invalid_argument("monte_carlo: need at least 100 samples");

    // fixed chunking so the reduction order is independent of the thread count
    constexpr std::size_t kChunk = 4096;
    std::size_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<double> sum1(chunks, 0.0), sum2(chunks, 0.0);
    parallel_for(chunks, parallelism, [&](std::size_t ci) {
        std::size_t lo = ci * kChunk;
        std::size_t hi = std::min(samples, lo + kChunk);
        double s1 = 0, c1 = 0, s2 = 0, c2 = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            double x = counter_unit(seed, 2 * i);
            double t = counter_unit(seed, 2 * i + 1);
            Cplx K = eval_kernel(params, Phase(TorusPoint(t)), TorusPoint(x));
            double v = std::pow(std::norm(K), p);
            double y = v - c1;
            double tt = s1 + y;
            c1 = (tt - s1) - y;
            s1 = tt;
            double y2 = v * v - c2;
            double tt2 = s2 + y2;
            c2 = (tt2 - s2) - y2;
            s2 = tt2;
        }
        sum1[ci] = s1;
        sum2[ci] = s2;
    });
    double S1 = 0, S2 = 0, c1 = 0, c2 = 0;
    for (std::size_t ci = 0; ci < chunks; ++ci) {
        double y = sum1[ci] - c1;
        double t = S1 + y;
        c1 = (t - S1) - y;
        S1 = t;
        double y2 = sum2[ci] - c2;
        double t2 = S2 + y2;
        c2 = (t2 - S2) - y2;
        S2 = t2;
    }
    double n = static_cast<double>(samples);
    double mean = S1 / n;
    double var = std::max(0.0, (S2 - n * mean * mean) / (n - 1.0));

    MeanValueResult res;
    res.d = d;
    res.N = N;
    res.p = p;
    res.method = MeanValueMethod::monte_carlo;
    res.float_value = mean;
    res.stderr_value = std::sqrt(var / n);
    res.seed = seed;
    return res;
}

// --------------------------------------------------------------------------
// exponent fit
// --------------------------------------------------------------------------

struct ExponentFitPoint {
    long long N = 0;
    BigInt S = 0;
    double logN = 0.0;
    double logS = 0.0;
    double residual = 0.0;
};

struct ExponentFit {
    int d = 0;
    int p = 0;
    double slope = 0.0;
    double intercept = 0.0;
    double conjectured_slope = 0.0;  // 2p - d - 1
    std::vector<ExponentFitPoint> points;
};

// Unweighted least squares of log S(N,p) against log N over an increasing
// N list, via exact counting.
inline ExponentFit exponent_fit(int d, int p, const std::vector<long long>& Ns,
                                unsigned parallelism = 0) {
    if (Ns.size() < 3) throw std::invalid_argument("exponent_fit: need at least 3 N values");
    for (std::size_t i = 1; i < Ns.size(); ++i)
        if (Ns[i] <= Ns[i - 1])
            throw std::invalid_argument("exponent_fit: N list must be strictly increasing");

    ExponentFit fit;
    fit.d = d;
    fit.p = p;
    fit.conjectured_slope = 2.0 * p - d - 1;
    fit.points.resize(Ns.size());
    parallel_for(Ns.size(), parallelism, [&](std::size_t i) {
        MeanValueResult r = count_solutions(d, Ns[i], p);
        ExponentFitPoint pt;
        pt.N = Ns[i];
        pt.S = r.exact_value;
        pt.logN = std::log(static_cast<double>(Ns[i]));
        pt.logS = log_bigint(r.exact_value);
        fit.points[i] = pt;
    });

    double n = static_cast<double>(fit.points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& pt : fit.points) {
        sx += pt.logN;
        sy += pt.logS;
        sxx += pt.logN * pt.logN;
        sxy += pt.logN * pt.logS;
    }
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (auto& pt : fit.points) pt.residual = pt.logS - (fit.slope * pt.logN + fit.intercept);
    return fit;
}

}  // namespace weylab
