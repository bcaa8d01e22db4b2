#include <cstdio>
#include "weylab/kernel_decomp.hpp"
#include "weylab/quadrature.hpp"
using namespace weylab;
int main() {
    BumpSpec spec;
    double worst = 0;
    for (double xi : {0.0, 0.3, 1.0, 4.0, 10.0, 55.5, 300.0, 2500.0, 12345.0}) {
        auto gl = bump_fourier(spec, xi);
        auto simp = integrate_adaptive(
            [&](double u) { return bump_eval(spec, u) * unit(-xi * u); }, spec.a0, spec.b0, 1e-14);
        worst = std::max(worst, std::abs(gl - simp));
        std::printf("xi=%10.1f gl=%.15e%+.15ei diff=%.2e\n", xi, gl.real(), gl.imag(), std::abs(gl - simp));
    }
    std::printf("worst=%.3e\n", worst);
    return 0;
}
