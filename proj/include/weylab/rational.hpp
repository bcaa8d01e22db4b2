#pragma once

// Diophantine plumbing: continued-fraction convergents a/q of a real number
// (every convergent satisfies |alpha - a/q| <= 1/q^2) and prime enumeration
// over an interval via a segmented sieve.
//
// Convergents are computed from the binary64 input; the expansion is cut off
// once a partial quotient exceeds 2^31 or the denominator passes q_max.
// Denominators beyond ~2^26 begin to reflect the rounding of the input rather
// than the underlying real.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace weylab {

struct Convergent {
    long long a = 0;
    long long q = 1;
    double error_bound = 0.0;  // |alpha - a/q|
};

inline std::vector<Convergent> convergents(double alpha, long long q_max) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("convergents: alpha must be finite");
    if (q_max < 1) throw std::invalid_argument("convergents: q_max must be >= 1");

    std::vector<Convergent> out;
    long long p_prev = 1, p_prev2 = 0;  // p_{-1}, p_{-2}
    long long q_prev = 0, q_prev2 = 1;  // q_{-1}, q_{-2}
    double x = alpha;
    const double quotient_cap = 2147483648.0;  // 2^31

    for (int iter = 0; iter < 64; ++iter) {
        double af = std::floor(x);
        if (af >= quotient_cap || af <= -quotient_cap) break;
        long long ai = static_cast<long long>(af);
        long long p = ai * p_prev + p_prev2;
        long long q = ai * q_prev + q_prev2;
        if (q > q_max) break;
        out.push_back(Convergent{p, q, std::fabs(alpha - static_cast<double>(p) / static_cast<double>(q))});
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
        double fracpart = x - af;
        if (fracpart < 0x1.0p-52) break;  // input is (numerically) rational
        x = 1.0 / fracpart;
    }
    return out;
}

struct PrimeRange {
    unsigned long long lo = 0;
    unsigned long long hi = 0;
    std::vector<unsigned long long> primes;
};

namespace detail {

inline std::vector<std::uint32_t> small_primes_upto(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace detail

constexpr unsigned long long kPrimeRangeCap = 1ull << 40;

// Segmented sieve of [lo, hi], block size 2^18.  hi <= 2^40 (resource guard);
// hi < lo yields an empty range.
inline PrimeRange primes_in_range(unsigned long long lo, unsigned long long hi) {
    if (hi > kPrimeRangeCap) throw std::invalid_argument("primes_in_range: hi exceeds 2^40 guard");
    PrimeRange out;
    out.lo = lo;
    out.hi = hi;
    if (hi < lo) return out;
    if (lo < 2) lo = 2;
    if (hi < 2) return out;

    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    auto base = detail::small_primes_upto(std::max<std::uint64_t>(root, 2));

    constexpr std::uint64_t kBlock = 1ull << 18;
    std::vector<char> mark;
    for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
        std::uint64_t seg_hi = std::min<std::uint64_t>(hi, seg_lo + kBlock - 1);
        mark.assign(static_cast<std::size_t>(seg_hi - seg_lo + 1), 1);
        for (std::uint32_t p : base) {
            std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
            if (pp > seg_hi) break;
            std::uint64_t start = ((seg_lo + p - 1) / p) * p;
            if (start < pp) start = pp;
            for (std::uint64_t j = start; j <= seg_hi; j += p)
                mark[static_cast<std::size_t>(j - seg_lo)] = 0;
        }
        for (std::uint64_t v = seg_lo; v <= seg_hi; ++v)
            if (mark[static_cast<std::size_t>(v - seg_lo)]) out.primes.push_back(v);
        if (seg_hi == hi) break;
        seg_lo = seg_hi + 1;
    }
    return out;
}

// Deterministic Miller-Rabin, valid for all n < 3.3e24 with this base set.
inline bool is_prime_u64(unsigned long long n) {
    if (n < 2) return false;
    for (unsigned long long p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    unsigned long long d = n - 1;
    int r = 0;
    while ((d & 1ull) == 0) {
        d >>= 1;
        ++r;
    }
    auto mulmod = [](unsigned long long a, unsigned long long b, unsigned long long m) {
        return static_cast<unsigned long long>((static_cast<unsigned __int128>(a) * b) % m);
    };
    for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        unsigned long long x = 1, base = a % n, e = d;
        while (e) {
            if (e & 1ull) x = mulmod(x, base, n);
            base = mulmod(base, base, n);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace weylab
