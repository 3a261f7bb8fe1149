#pragma once

// One adaptive quadrature engine shared by every oscillatory integral in
// the project. Plain adaptive Gauss-Kronrod (G7,K15) with optional
// breakpoints, plus a Filon-type rule for integrals A(u) e^{i omega u} with
// slowly varying A and large omega, whose cost is independent of omega.

#include <functional>
#include <vector>

#include "shiftconv/util.hpp"

namespace shiftconv {

struct QuadResult {
    cplx value{0.0, 0.0};
    double err_est = 0.0;
    bool converged = true;
    long evals = 0;
};

struct QuadTol {
    double rel = 1e-9;
    double abs = 1e-12;
};

// Adaptive G7/K15 over [a, b].
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     QuadTol tol, int max_depth = 28);

// Adaptive G7/K15 with initial subdivision at the given sorted breakpoints
// (callers place these at phase half-periods).
QuadResult integrate_breakpoints(const std::function<cplx(double)>& f,
                                 const std::vector<double>& pts, QuadTol tol);

// Integral of B(u) e^{i omega u} over [a, b] for slowly varying B. Panels
// where |omega| * width is small fall back to Gauss-Kronrod; large panels
// use a degree-6 Filon rule with exact monomial moments. Error control by
// panel bisection.
QuadResult integrate_filon(const std::function<cplx(double)>& B, double a,
                           double b, double omega, QuadTol tol);

// Uniformly spaced breakpoints: n_half half-period points covering [a, b].
std::vector<double> phase_breakpoints(double a, double b, double total_turns);

// Low-level pieces of the degree-6 Filon rule, shared with callers that
// evaluate many integrals over one fixed panel decomposition.
namespace filon {
constexpr int PTS = 7;
// Chebyshev nodes on [-1, 1], descending.
const double* nodes();
// monomial coefficients of the degree-6 interpolant through values at nodes
void coeffs_from_values(const cplx* vals, cplx* coef);
// M_k(sigma) = int_{-1}^1 t^k e^{i sigma t} dt, k < PTS (Taylor branch for
// small sigma, boundary recurrence otherwise)
void moments(double sigma, cplx* M);
}  // namespace filon

}  // namespace shiftconv
