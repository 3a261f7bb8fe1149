#pragma once

// Bessel functions needed by the Voronoi kernels: J_s and Y_s of real
// order, K and the Y-pair of purely imaginary order (via absolutely
// convergent integral representations), plus the large-argument P/Q
// decomposition used by the oscillatory transform code.

#include "shiftconv/util.hpp"

namespace shiftconv {

// J_s(x), s >= 0, x > 0. Power series below x = max(12, 2s), Hankel
// asymptotic expansion beyond, both accumulated in long double; relative
// accuracy ~1e-8 over the orders used here (s <= 12).
double bessel_j(double s, double x);

// Y_s(x), s >= 0, x > 0. Integer orders via Y0/Y1 series + upward
// recurrence, half-integer orders via closed forms, general s via the
// J-connection formula.
double bessel_y(double s, double x);

// Hankel-expansion pieces: J_s(x) = sqrt(2/(pi x)) (P cos w - Q sin w),
// Y_s(x) = sqrt(2/(pi x)) (P sin w + Q cos w), w = x - s pi/2 - pi/4.
// Usable for x >= ~max(25, s^2/4); the transform code only calls it with
// x >= 30 and s <= 12.
void bessel_pq(double s, double x, double& P, double& Q, double& w);

// K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt  (real-valued).
// Adaptive quadrature; relative error ~1e-7 for x >= 1e-2. Accuracy below
// x = 1e-2 is not guaranteed and is reported by throwing.
double bessel_k_imag(double nu, double x);

// Y_{i nu}(x) + Y_{-i nu}(x), real-valued, via
//   (2/pi) int_0^pi sin(x sin h) cosh(nu h) dh
//   - (2 (1 + cosh(nu pi)) / pi) int_0^inf exp(-x sinh t) cos(nu t) dt,
// valid for x >= 1 at ~1e-6 accuracy.
double bessel_y_imag_pair(double nu, double x);

// The real number D with Y_{i nu}(x) - Y_{-i nu}(x) = i * D.
double bessel_y_imag_diff(double nu, double x);

// log Gamma(z) for complex z (Lanczos), used for the Maass-case Gamma
// ratio and by test oracles.
cplx lgamma_complex(cplx z);

}  // namespace shiftconv
