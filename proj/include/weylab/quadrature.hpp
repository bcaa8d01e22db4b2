#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace weylab {

namespace detail {

template <typename F>
std::complex<double> adaptive_simpson_rec(const F& f, double a, double b,
                                          std::complex<double> fa, std::complex<double> fm,
                                          std::complex<double> fb, std::complex<double> whole,
                                          double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    std::complex<double> flm = f(lm), frm = f(rm);
    std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    std::complex<double> delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson to absolute tolerance `tol`, depth capped at 40.
template <typename F>
std::complex<double> integrate_adaptive(const F& f, double a, double b, double tol) {
    if (!(b > a)) return {0.0, 0.0};
    if (!(tol > 0)) throw std::invalid_argument("integrate_adaptive: tol must be positive");
    double m = 0.5 * (a + b);
    std::complex<double> fa = f(a), fm = f(m), fb = f(b);
    std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirror).
constexpr double kGL16Nodes[8] = {
    0.09501250983763744019, 0.28160355077925891323, 0.45801677765722738634,
    0.61787624440264374845, 0.75540440835500303390, 0.86563120238783174388,
    0.94457502307323257608, 0.98940093499164993260};
constexpr double kGL16Weights[8] = {
    0.18945061045506849629, 0.18260341504492358887, 0.16915651939500253819,
    0.14959598881657673208, 0.12462897125553387205, 0.09515851168249278481,
    0.06225352393864789286, 0.02715245941175409485};

template <typename F>
std::complex<double> gl16_panels(const F& f, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    std::complex<double> total(0.0, 0.0);
    for (std::size_t p = 0; p < panels; ++p) {
        double mid = a + h * (static_cast<double>(p) + 0.5);
        double half = 0.5 * h;
        std::complex<double> acc(0.0, 0.0);
        for (int i = 0; i < 8; ++i) {
            double dx = half * kGL16Nodes[i];
            acc += kGL16Weights[i] * (f(mid - dx) + f(mid + dx));
        }
        total += acc * half;
    }
    return total;
}

}  // namespace detail

// Composite 16-point Gauss-Legendre with panel doubling until two successive
// levels agree to `tol` (absolute).  Suited to smooth integrands; much cheaper
// than recursive Simpson at equal accuracy.
template <typename F>
std::complex<double> integrate_gl_doubling(const F& f, double a, double b, double tol,
                                           std::size_t start_panels = 1,
                                           std::size_t max_panels = 1u << 16) {
    if (!(b > a)) return {0.0, 0.0};
    if (!(tol > 0)) throw std::invalid_argument("integrate_gl_doubling: tol must be positive");
    std::complex<double> prev = detail::gl16_panels(f, a, b, start_panels);
    for (std::size_t panels = 2 * start_panels; panels <= max_panels; panels *= 2) {
        std::complex<double> cur = detail::gl16_panels(f, a, b, panels);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace weylab
