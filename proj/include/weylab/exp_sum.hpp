#pragma once

// Weyl-type exponential sums
//
//   K_N(x, t) = sum_{n=1}^{N} e(t n^d + x n),      e(u) = exp(2 pi i u)
//
// evaluated three ways:
//   - pointwise, with phases reduced mod 1 before the multiply by 2pi;
//   - on the full grid x_j = j/M in one pass, as the length-M DFT of the
//     coefficient sequence c_n = e(t n^d) zero-padded to M >= N+1;
//   - maximized over x: coarse grid (default M = max(4N, 256), enough that a
//     degree-N trigonometric polynomial cannot hide a peak between grid
//     points) followed by golden-section refinement of |K|^2 in the winning
//     cell.
//
// Phase arithmetic: all phases are fractions of a full turn in [0,1).  For a
// rational t = a/q the phase of t n^d is computed exactly as
// (a * (n^d mod q) mod q) / q via binary modular exponentiation; n^d is never
// formed in floating point.  The floating path t * n^d is accurate while
// N^d * |t| < 2^52 (binary64 integer range), which callers needing large q
// avoid by passing the rational form.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "weylab/fft.hpp"

namespace weylab {

using Cplx = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

// --------------------------------------------------------------------------
// domain types
// --------------------------------------------------------------------------

struct KernelParams {
    int d = 2;           // polynomial degree, >= 2
    long long N = 1;     // sum length, >= 1

    void validate() const {
        if (d < 2) throw std::invalid_argument("KernelParams: d must be >= 2");
        if (N < 1) throw std::invalid_argument("KernelParams: N must be >= 1");
        pow_u128_checked(static_cast<unsigned long long>(N), d);  // N^d representable
    }

    static unsigned __int128 pow_u128_checked(unsigned long long base, int exp) {
        unsigned __int128 r = 1;
        for (int i = 0; i < exp; ++i) {
            if (base != 0 && r > (~static_cast<unsigned __int128>(0)) / base)
                throw std::overflow_error("KernelParams: N^d exceeds 128-bit range");
            r *= base;
        }
        return r;
    }

    unsigned __int128 n_to_d() const {
        return pow_u128_checked(static_cast<unsigned long long>(N), d);
    }
};

// A point of the torus R/Z, stored reduced to [0, 1).
class TorusPoint {
  public:
    TorusPoint() : v_(0.0) {}
    explicit TorusPoint(double x) {
        if (!std::isfinite(x)) throw std::invalid_argument("TorusPoint: non-finite value");
        v_ = x - std::floor(x);
        if (v_ >= 1.0) v_ = 0.0;  // floor rounding at the seam
    }
    double value() const { return v_; }

  private:
    double v_;
};

// Reduced fraction a/q used as an exact phase.
struct RationalPhase {
    long long a = 0;
    unsigned long long q = 1;

    RationalPhase() = default;
    RationalPhase(long long a_, unsigned long long q_) : a(a_), q(q_) {
        if (q == 0) throw std::invalid_argument("RationalPhase: q must be >= 1");
        a %= static_cast<long long>(q);
        if (a < 0) a += static_cast<long long>(q);
    }

    static RationalPhase reduced(long long a_, unsigned long long q_) {
        if (q_ == 0) throw std::invalid_argument("RationalPhase: q must be >= 1");
        RationalPhase r(a_, q_);
        unsigned long long g = std::gcd(static_cast<unsigned long long>(r.a), r.q);
        if (g > 1) {
            r.a = static_cast<long long>(static_cast<unsigned long long>(r.a) / g);
            r.q /= g;
        }
        return r;
    }

    double value() const { return static_cast<double>(a) / static_cast<double>(q); }
};

using Phase = std::variant<TorusPoint, RationalPhase>;

inline double phase_value(const Phase& p) {
    if (std::holds_alternative<TorusPoint>(p)) return std::get<TorusPoint>(p).value();
    return std::get<RationalPhase>(p).value();
}

// P(x) = sum_j alpha_j x^j with alpha_1..alpha_d stored mod 1.
struct PolynomialSpec {
    std::vector<double> coeffs;  // coeffs[j-1] = alpha_j

    explicit PolynomialSpec(std::vector<double> alpha) : coeffs(std::move(alpha)) {
        for (double& c : coeffs) {
            if (!std::isfinite(c)) throw std::invalid_argument("PolynomialSpec: non-finite coefficient");
            c -= std::floor(c);
            if (c >= 1.0) c = 0.0;
        }
    }
    int degree() const { return static_cast<int>(coeffs.size()); }
};

// --------------------------------------------------------------------------
// phase helpers
// --------------------------------------------------------------------------

inline double frac1(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

inline Cplx unit(double turns) {
    double u = frac1(turns);
    double ang = kTwoPi * u;
    return {std::cos(ang), std::sin(ang)};
}

inline unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                                     unsigned long long m) {
    return static_cast<unsigned long long>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

inline unsigned long long powmod_u64(unsigned long long base, unsigned long long exp,
                                     unsigned long long m) {
    if (m == 1) return 0;
    unsigned long long r = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1ull) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Exact phase fraction of t*n^d for t = a/q: (a * (n^d mod q) mod q) / q.
inline double rational_power_phase(const RationalPhase& t, unsigned long long n, int d) {
    unsigned long long r = powmod_u64(n, static_cast<unsigned long long>(d), t.q);
    unsigned long long num = mulmod_u64(static_cast<unsigned long long>(t.a), r, t.q);
    return static_cast<double>(num) / static_cast<double>(t.q);
}

// Floating phase fraction of t*n^d; exact integer n^d formed in 128 bits.
inline double real_power_phase(double t, unsigned long long n, int d) {
    unsigned __int128 m = KernelParams::pow_u128_checked(n, d);
    return frac1(t * static_cast<double>(m));
}

namespace detail {

struct KahanCplx {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(const Cplx& z) {
        double yr = z.real() - cre;
        double tr = re + yr;
        cre = (tr - re) - yr;
        re = tr;
        double yi = z.imag() - cim;
        double ti = im + yi;
        cim = (ti - im) - yi;
        im = ti;
    }
    Cplx value() const { return {re, im}; }
};

}  // namespace detail

// Coefficient c_n = e(t n^d), through whichever phase path t carries.
inline Cplx kernel_coefficient(const KernelParams& params, const Phase& t, unsigned long long n) {
    if (std::holds_alternative<RationalPhase>(t))
        return unit(rational_power_phase(std::get<RationalPhase>(t), n, params.d));
    return unit(real_power_phase(std::get<TorusPoint>(t).value(), n, params.d));
}

// --------------------------------------------------------------------------
// operations
// --------------------------------------------------------------------------

inline Cplx eval_kernel(const KernelParams& params, const Phase& t, const TorusPoint& x) {
    params.validate();
    const double xv = x.value();
    detail::KahanCplx acc;
    if (std::holds_alternative<RationalPhase>(t)) {
        const RationalPhase& r = std::get<RationalPhase>(t);
        for (unsigned long long n = 1; n <= static_cast<unsigned long long>(params.N); ++n) {
            double ph = rational_power_phase(r, n, params.d) + frac1(xv * static_cast<double>(n));
            acc.add(unit(ph));
        }
    } else {
        const double tv = std::get<TorusPoint>(t).value();
        for (unsigned long long n = 1; n <= static_cast<unsigned long long>(params.N); ++n) {
            double ph = real_power_phase(tv, n, params.d) + frac1(xv * static_cast<double>(n));
            acc.add(unit(ph));
        }
    }
    return acc.value();
}

inline Cplx eval_kernel(const KernelParams& params, const TorusPoint& t, const TorusPoint& x) {
    return eval_kernel(params, Phase(t), x);
}

inline Cplx eval_kernel(const KernelParams& params, const RationalPhase& t, const TorusPoint& x) {
    return eval_kernel(params, Phase(t), x);
}

// All values K_N(j/M, t), j = 0..M-1, as one DFT.  Requires M >= N+1 so the
// zero-padded coefficient sequence does not alias.
inline std::vector<Cplx> eval_kernel_x_grid(const KernelParams& params, const Phase& t,
                                            std::size_t M) {
    params.validate();
    if (M < static_cast<std::size_t>(params.N) + 1)
        throw std::invalid_argument("eval_kernel_x_grid: M must be >= N+1 (grid would alias)");
    std::vector<Cplx> a(M, Cplx(0.0, 0.0));
    for (unsigned long long n = 1; n <= static_cast<unsigned long long>(params.N); ++n)
        a[n] = kernel_coefficient(params, t, n);
    fft::dft(a, +1);  // X_j = sum_n c_n e(+ nj/M)
    return a;
}

struct MaxResult {
    TorusPoint x_star;
    double modulus = 0.0;
};

namespace detail {

inline double kernel_mod2_at(const KernelParams& params, const Phase& t, double x) {
    Cplx v = eval_kernel(params, t, TorusPoint(x));
    return v.real() * v.real() + v.imag() * v.imag();
}

}  // namespace detail

// Maximize |K_N(., t)| over the torus: coarse grid via the DFT, then
// golden-section on |K|^2 in the cell around the best grid point until the
// bracket is below tol.  Ties on the grid go to the smallest x.
inline MaxResult max_modulus_over_x(const KernelParams& params, const Phase& t,
                                    std::size_t grid_M = 0, double tol = 1e-10) {
    params.validate();
    if (!(tol > 0)) throw std::invalid_argument("max_modulus_over_x: tol must be positive");
    std::size_t M = grid_M;
    if (M == 0) M = std::max<std::size_t>(4 * static_cast<std::size_t>(params.N), 256);
    if (M < 4 * static_cast<std::size_t>(params.N))
        throw std::invalid_argument("max_modulus_over_x: grid must be >= 4N");

    std::vector<Cplx> grid = eval_kernel_x_grid(params, t, M);
    std::size_t best_j = 0;
    double best_m2 = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        double m2 = std::norm(grid[j]);
        if (m2 > best_m2) {
            best_m2 = m2;
            best_j = j;
        }
    }

    // golden-section maximization of |K|^2 on the two cells around best_j
    const double h = 1.0 / static_cast<double>(M);
    double lo = (static_cast<double>(best_j) - 1.0) * h;
    double hi = (static_cast<double>(best_j) + 1.0) * h;
    const double invphi = 0.6180339887498948482;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = detail::kernel_mod2_at(params, t, c);
    double fd = detail::kernel_mod2_at(params, t, d);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = detail::kernel_mod2_at(params, t, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = detail::kernel_mod2_at(params, t, d);
        }
    }
    double x_ref = 0.5 * (lo + hi);
    double m2_ref = detail::kernel_mod2_at(params, t, x_ref);

    // never return less than the coarse grid saw
    double x_out;
    double m2_out;
    if (m2_ref >= best_m2) {
        x_out = x_ref;
        m2_out = m2_ref;
    } else {
        x_out = static_cast<double>(best_j) * h;
        m2_out = best_m2;
    }
    double xr = frac1(x_out);
    if (1.0 - xr < tol) xr = 0.0;  // snap the wrap-around seam
    return MaxResult{TorusPoint(xr), std::sqrt(m2_out)};
}

// sum_{n=1}^{N} e(P(n)) for real coefficient phases.
inline Cplx eval_poly_sum(const PolynomialSpec& spec, long long N) {
    if (N < 1) throw std::invalid_argument("eval_poly_sum: N must be >= 1");
    if (spec.coeffs.empty()) throw std::invalid_argument("eval_poly_sum: empty coefficient list");
    detail::KahanCplx acc;
    for (unsigned long long n = 1; n <= static_cast<unsigned long long>(N); ++n) {
        double ph = 0.0;
        for (int j = 1; j <= spec.degree(); ++j) {
            double c = spec.coeffs[static_cast<std::size_t>(j - 1)];
            if (c == 0.0) continue;
            ph = frac1(ph + real_power_phase(c, n, j));
        }
        acc.add(unit(ph));
    }
    return acc.value();
}

// Exact-rational variant: every alpha_j = a_j/q_j evaluated by modular
// exponentiation, so the phases carry no power-size rounding at all.
inline Cplx eval_poly_sum(const std::vector<RationalPhase>& coeffs, long long N) {
    if (N < 1) throw std::invalid_argument("eval_poly_sum: N must be >= 1");
    if (coeffs.empty()) throw std::invalid_argument("eval_poly_sum: empty coefficient list");
    detail::KahanCplx acc;
    for (unsigned long long n = 1; n <= static_cast<unsigned long long>(N); ++n) {
        double ph = 0.0;
        for (int j = 1; j <= static_cast<int>(coeffs.size()); ++j)
            ph = frac1(ph + rational_power_phase(coeffs[static_cast<std::size_t>(j - 1)], n, j));
        acc.add(unit(ph));
    }
    return acc.value();
}

}  // namespace weylab
