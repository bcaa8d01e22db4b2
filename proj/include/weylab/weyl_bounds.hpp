#pragma once

// Right-hand sides of the classical pointwise Weyl-sum bounds, and a scanner
// that measures
//
//     max_x | sum_{n<=N} e((a/q) n^d + x n) |  /  q^{1/d}
//
// over primes q in [N^{d/2}, N^d] and residues a.  No epsilon fudge is ever
// applied: the raw ratio is recorded and the reader judges growth.  The
// constants C and epsilon of the bound formulas are inputs, never inferred.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "weylab/exp_sum.hpp"
#include "weylab/parallel.hpp"
#include "weylab/rational.hpp"

namespace weylab {

enum class BoundKind { conjectured, weyl, vinogradov };

inline void check_bound_args(int d, long long N, unsigned long long q) {
    if (d < 2) throw std::invalid_argument("bound formula: d must be >= 2");
    if (N < 1) throw std::invalid_argument("bound formula: N must be >= 1");
    if (q < 1) throw std::invalid_argument("bound formula: q must be >= 1");
}

// C * N^{1+eps} * (1/q + q/N^d)^{1/d}
inline double rhs_conjectured(int d, long long N, unsigned long long q, double eps, double C) {
    check_bound_args(d, N, q);
    double Nd = std::pow(static_cast<double>(N), d);
    double radicand = 1.0 / static_cast<double>(q) + static_cast<double>(q) / Nd;
    return C * std::pow(static_cast<double>(N), 1.0 + eps) * std::pow(radicand, 1.0 / d);
}

// C * N^{1+eps} * (1/q + 1/N + q/N^d)^{1/2^{d-1}}
inline double rhs_weyl(int d, long long N, unsigned long long q, double eps, double C) {
    check_bound_args(d, N, q);
    double Nd = std::pow(static_cast<double>(N), d);
    double radicand = 1.0 / static_cast<double>(q) + 1.0 / static_cast<double>(N) +
                      static_cast<double>(q) / Nd;
    return C * std::pow(static_cast<double>(N), 1.0 + eps) *
           std::pow(radicand, 1.0 / std::ldexp(1.0, d - 1));
}

// C * N^{1+eps} * (1/q + log q / N + q log q / N^d)^{1/(d(d-1))}; needs q >= 2.
inline double rhs_vinogradov(int d, long long N, unsigned long long q, double eps, double C) {
    check_bound_args(d, N, q);
    if (q < 2) throw std::invalid_argument("rhs_vinogradov: q must be >= 2 (log q vanishes)");
    double Nd = std::pow(static_cast<double>(N), d);
    double lq = std::log(static_cast<double>(q));
    double radicand = 1.0 / static_cast<double>(q) + lq / static_cast<double>(N) +
                      static_cast<double>(q) * lq / Nd;
    return C * std::pow(static_cast<double>(N), 1.0 + eps) *
           std::pow(radicand, 1.0 / (static_cast<double>(d) * (d - 1)));
}

// Prime window [ceil(N^{d/2}), N^d] of the scanner.
struct PrimeWindow {
    unsigned long long lo = 0;
    unsigned long long hi = 0;
};

inline PrimeWindow conjecture1_window(int d, long long N) {
    KernelParams{d, N}.validate();
    unsigned __int128 nd = KernelParams::pow_u128_checked(static_cast<unsigned long long>(N), d);
    if (nd > static_cast<unsigned __int128>(kPrimeRangeCap))
        throw std::invalid_argument("conjecture1_window: N^d exceeds the 2^40 sieve guard");
    unsigned long long hi = static_cast<unsigned long long>(nd);
    unsigned long long lo;
    if (d % 2 == 0) {
        lo = 1;
        for (int i = 0; i < d / 2; ++i) lo *= static_cast<unsigned long long>(N);
    } else {
        // ceil(sqrt(N^d))
        unsigned long long r = static_cast<unsigned long long>(std::sqrt(static_cast<double>(hi)));
        while (r * r > hi) --r;
        while ((r + 1) * (r + 1) <= hi) ++r;
        lo = (r * r == hi) ? r : r + 1;
    }
    return {lo, hi};
}

struct ScanRecord {
    int d = 0;
    long long N = 0;
    unsigned long long q = 0;
    long long a = 0;
    double max_modulus = 0.0;
    double ratio = 0.0;   // max_modulus / q^{1/d}
    double x_star = 0.0;
    bool in_window = true;
};

inline ScanRecord conjecture1_ratio(int d, long long N, unsigned long long q, long long a,
                                    std::size_t grid_M = 0, double tol = 1e-10) {
    KernelParams params{d, N};
    params.validate();
    if (q < 2 || !is_prime_u64(q)) throw std::invalid_argument("conjecture1_ratio: q must be prime");
    if (a < 1 || static_cast<unsigned long long>(a) > q - 1)
        throw std::invalid_argument("conjecture1_ratio: a must satisfy 1 <= a <= q-1");
    MaxResult mr = max_modulus_over_x(params, Phase(RationalPhase(a, q)), grid_M, tol);
    PrimeWindow w = conjecture1_window(d, N);
    ScanRecord rec;
    rec.d = d;
    rec.N = N;
    rec.q = q;
    rec.a = a;
    rec.max_modulus = mr.modulus;
    rec.ratio = mr.modulus / std::pow(static_cast<double>(q), 1.0 / d);
    rec.x_star = mr.x_star.value();
    rec.in_window = (q >= w.lo && q <= w.hi);
    return rec;
}

// Sampling policies.  Exhaustive takes everything; the random mode keeps a
// seeded reservoir of fixed size per dyadic q-block (the full window is far
// too large to exhaust once N >= 16, d >= 3), and for residues draws a fixed
// number of distinct a per q.
struct QPolicy {
    bool exhaustive = true;
    std::size_t per_dyadic_block = 8;
};

struct APolicy {
    bool exhaustive = true;
    std::size_t per_q = 8;
};

struct RatioHistogram {
    double bin_width = 0.1;
    std::vector<std::uint64_t> counts;  // counts[i] covers [i*w, (i+1)*w)
};

struct ScanSummary {
    double max_ratio = 0.0;
    unsigned long long argmax_q = 0;
    long long argmax_a = 0;
    std::size_t record_count = 0;
    RatioHistogram histogram;
};

struct ScanResult {
    std::vector<ScanRecord> records;  // sorted by (q, a)
    ScanSummary summary;
};

namespace detail {

inline std::vector<unsigned long long> sample_primes(const std::vector<unsigned long long>& primes,
                                                     const QPolicy& policy, std::uint64_t seed) {
    if (policy.exhaustive) return primes;
    std::vector<unsigned long long> keep;
    std::size_t i = 0;
    while (i < primes.size()) {
        // dyadic block containing primes[i]
        unsigned long long block_lo = primes[i];
        unsigned long long block_hi = block_lo;
        int lg = 0;
        while ((1ull << (lg + 1)) <= block_lo) ++lg;
        block_hi = (1ull << (lg + 1)) - 1;
        std::size_t j = i;
        while (j < primes.size() && primes[j] <= block_hi) ++j;
        std::size_t count = j - i;
        if (count <= policy.per_dyadic_block) {
            keep.insert(keep.end(), primes.begin() + static_cast<std::ptrdiff_t>(i),
                        primes.begin() + static_cast<std::ptrdiff_t>(j));
        } else {
            std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(lg + 1)));
            std::vector<unsigned long long> reservoir(
                primes.begin() + static_cast<std::ptrdiff_t>(i),
                primes.begin() + static_cast<std::ptrdiff_t>(i) + static_cast<std::ptrdiff_t>(policy.per_dyadic_block));
            for (std::size_t k = policy.per_dyadic_block; k < count; ++k) {
                std::uniform_int_distribution<std::size_t> dist(0, k);
                std::size_t r = dist(rng);
                if (r < policy.per_dyadic_block) reservoir[r] = primes[i + k];
            }
            std::sort(reservoir.begin(), reservoir.end());
            keep.insert(keep.end(), reservoir.begin(), reservoir.end());
        }
        i = j;
    }
    return keep;
}

inline std::vector<long long> sample_residues(unsigned long long q, const APolicy& policy,
                                              std::uint64_t seed) {
    std::vector<long long> out;
    if (policy.exhaustive || q - 1 <= policy.per_q) {
        out.reserve(static_cast<std::size_t>(q - 1));
        for (unsigned long long a = 1; a <= q - 1; ++a) out.push_back(static_cast<long long>(a));
        return out;
    }
    std::mt19937_64 rng(seed ^ (q * 0xD1B54A32D192ED03ull));
    std::uniform_int_distribution<unsigned long long> dist(1, q - 1);
    std::vector<unsigned long long> picked;
    while (picked.size() < policy.per_q) {
        unsigned long long a = dist(rng);
        if (std::find(picked.begin(), picked.end(), a) == picked.end()) picked.push_back(a);
    }
    std::sort(picked.begin(), picked.end());
    for (unsigned long long a : picked) out.push_back(static_cast<long long>(a));
    return out;
}

}  // namespace detail

// Scan the Conjecture-1 window.  Deterministic for a fixed seed and policy
// pair regardless of the parallelism hint: tasks are pure, results land in
// indexed slots and are emitted in (q, a) order.
inline ScanResult scan_conjecture1(int d, long long N, const QPolicy& qpol, const APolicy& apol,
                                   std::uint64_t seed, unsigned parallelism = 0,
                                   std::size_t grid_M = 0, double tol = 1e-10) {
    PrimeWindow w = conjecture1_window(d, N);
    PrimeRange pr = primes_in_range(w.lo, w.hi);
    if (pr.primes.empty()) throw std::runtime_error("scan_conjecture1: empty prime range");
    std::vector<unsigned long long> qs = detail::sample_primes(pr.primes, qpol, seed);

    std::vector<std::pair<unsigned long long, long long>> tasks;
    for (unsigned long long q : qs)
        for (long long a : detail::sample_residues(q, apol, seed)) tasks.emplace_back(q, a);

    ScanResult result;
    result.records.resize(tasks.size());
    parallel_for(tasks.size(), parallelism, [&](std::size_t i) {
        result.records[i] = conjecture1_ratio(d, N, tasks[i].first, tasks[i].second, grid_M, tol);
    });
    // task list is already (q, a)-sorted; keep the guarantee explicit
    std::sort(result.records.begin(), result.records.end(),
              [](const ScanRecord& l, const ScanRecord& r) {
                  return l.q != r.q ? l.q < r.q : l.a < r.a;
              });

    ScanSummary& s = result.summary;
    s.record_count = result.records.size();
    for (const ScanRecord& rec : result.records) {
        if (rec.ratio > s.max_ratio) {
            s.max_ratio = rec.ratio;
            s.argmax_q = rec.q;
            s.argmax_a = rec.a;
        }
    }
    s.histogram.bin_width = 0.1;
    std::size_t nbins = static_cast<std::size_t>(std::floor(s.max_ratio / s.histogram.bin_width)) + 1;
    s.histogram.counts.assign(nbins, 0);
    for (const ScanRecord& rec : result.records) {
        std::size_t b = static_cast<std::size_t>(std::floor(rec.ratio / s.histogram.bin_width));
        if (b >= nbins) b = nbins - 1;
        ++s.histogram.counts[b];
    }
    return result;
}

}  // namespace weylab
