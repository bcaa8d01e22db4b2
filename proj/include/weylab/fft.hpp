#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Complex DFT of any length: iterative radix-2 for powers of two, Bluestein's
// chirp-z reduction to a power-of-two convolution otherwise.

namespace weylab::fft {

using Cplx = std::complex<double>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place radix-2 Cooley-Tukey.  sign = -1 forward, +1 inverse (unscaled).
inline void c2c_pow2(std::vector<Cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("c2c_pow2: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * kTwoPi / static_cast<double>(len);
        Cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Cplx u = a[i + k];
                Cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Chirp factors e(sign * j^2 / (2n)) with the quadratic reduced mod 2n in
// integer arithmetic, so the phase stays accurate for large n.
inline Cplx chirp(std::size_t j, std::size_t n, int sign) {
    unsigned __int128 jj = static_cast<unsigned __int128>(j) * j;
    std::uint64_t r = static_cast<std::uint64_t>(jj % (2 * static_cast<unsigned __int128>(n)));
    double ang = sign * kTwoPi * (static_cast<double>(r) / (2.0 * static_cast<double>(n)));
    return {std::cos(ang), std::sin(ang)};
}

// DFT of arbitrary length via Bluestein: x_k = sum_j a_j e(sign*jk/n).
inline void bluestein(std::vector<Cplx>& a, int sign) {
    const std::size_t n = a.size();
    const std::size_t m = next_pow2(2 * n - 1);
    std::vector<Cplx> u(m, Cplx(0.0, 0.0)), v(m, Cplx(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) u[j] = a[j] * chirp(j, n, sign);
    for (std::size_t j = 0; j < n; ++j) {
        Cplx c = chirp(j, n, -sign);
        v[j] = c;
        if (j != 0) v[m - j] = c;
    }
    c2c_pow2(u, -1);
    c2c_pow2(v, -1);
    for (std::size_t j = 0; j < m; ++j) u[j] *= v[j];
    c2c_pow2(u, +1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = u[k] * chirp(k, n, sign) * scale;
}

// sign = -1: X_k = sum_j a_j e^{-2pi i jk/n};  sign = +1: conjugate kernel.
// Neither direction applies a 1/n factor.
inline void dft(std::vector<Cplx>& a, int sign) {
    if (a.empty()) return;
    if (is_pow2(a.size()))
        c2c_pow2(a, sign);
    else
        bluestein(a, sign);
}

}  // namespace weylab::fft
