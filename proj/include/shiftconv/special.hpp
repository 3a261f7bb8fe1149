#pragma once

// Voronoi kernels H_f^{+/-}, the Fresnel-type integral Phi_0, the raw
// theta sum F(alpha), and its major-arc approximation through the Gauss
// sum G(a,0;q).

#include "shiftconv/bessel.hpp"
#include "shiftconv/coeffs.hpp"

namespace shiftconv {

enum class Branch { Plus, Minus };

struct KernelSpec {
    FormSpec form;
    Branch branch = Branch::Plus;
};

// The Bessel kernel of the Voronoi formula for the given form:
//   holomorphic weight k:  H+ = 2 pi i^k J_{k-1},          H- = 0
//   Maass, even weight:    H+ = -pi/cosh(pi mu) {Y_{2i mu} + Y_{-2i mu}},
//                          H- = 4 cosh(pi mu) K_{2i mu}
//   Maass, odd weight:     H+ = pi/sinh(pi mu) {Y_{2i mu} - Y_{-2i mu}},
//                          H- = -4 i sinh(pi mu) K_{2i mu}
cplx kernel_H(const KernelSpec& spec, double x);

// Phi_0(beta) = int_0^{sqrt X} e(beta x^2) dx, adaptive quadrature with
// half-period subdivision. Satisfies |Phi_0| <= min(sqrt X, C/sqrt|beta|).
cplx phi0(double beta, double X);

// F(alpha) = sum_{|m| <= sqrt X} e(alpha m^2), direct summation.
cplx theta_sum_F(double alpha, double X);

// F(a/q + beta) with the rational part of the phase reduced exactly.
cplx theta_sum_F_arc(i64 a, i64 q, double beta, double X);

struct ThetaArcResult {
    cplx approx{0, 0};  // 2 G(a,0;q) Phi_0(beta) / q
    cplx actual{0, 0};  // F(a/q + beta)
    double residual = 0;
};

// Major-arc approximation of the theta sum. Requires gcd(a,q) = 1,
// q <= Q = floor(5 sqrt X) and |beta| <= 1/(q Q).
ThetaArcResult theta_major_arc(i64 a, i64 q, double beta, double X);

}  // namespace shiftconv
