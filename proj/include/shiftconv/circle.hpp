#pragma once

// Both circle-method engines: the Jutila-style approximate indicator built
// from a flexible moduli set with its exact L^2 discrepancy, and the Farey
// dissection of order Q with mediant-bounded arcs.

#include <functional>
#include <vector>

#include "shiftconv/quadrature.hpp"
#include "shiftconv/util.hpp"

namespace shiftconv {

struct ModuliSet {
    i64 D = 1;
    double Q = 0;
    i64 h = 1;
    std::vector<i64> moduli;  // sorted, each of the form 4*D*p
    i64 L = 0;                // sum of phi(q) over the set
};

// Moduli 4Dp with p prime in [Q/(8D), Q/(4D)] and p coprime to 2Dh.
// Throws if the set comes out empty.
ModuliSet build_moduli_set(i64 D, double Q, i64 h);

// Testable surrogate of the totient-mass requirement; the constant is
// calibrated on the D = 1 family for Q >= 1e3.
bool moduli_mass_ok(const ModuliSet& set);

// Approximate indicator: the normalized count of fractions a/q within
// distance delta of x mod 1, divided by 2 delta L. Requires
// Q^{-2} <= delta <= Q^{-1}.
double jutila_indicator(const ModuliSet& set, double delta, double x);

// Exact integral int_0^1 |1 - I~(x)|^2 dx by a sweep over the piecewise-
// constant structure (breakpoints at a/q +- delta, wrapped mod 1).
double jutila_l2_error(const ModuliSet& set, double delta);

// Exact integral int_0^1 I~(x) dx by the same sweep (equals 1).
double jutila_mass(const ModuliSet& set, double delta);

struct Rat {
    i64 num = 0;
    i64 den = 1;
};

struct FareyArc {
    i64 a = 1, q = 1;
    Rat left, right;  // offsets: the arc is [a/q + left, a/q + right]
};

// All arcs of the Farey dissection of order Q; exact rational endpoints.
// Consecutive arcs share endpoints and the union covers an interval of
// measure exactly 1.
std::vector<FareyArc> farey_dissect(i64 Q);

struct ArcQuadResult {
    cplx total{0, 0};
    long arcs_failed = 0;
    long evals = 0;
};

// Sum over arcs of the adaptive quadrature of integrand(a, q, beta) over
// beta in [left, right].
ArcQuadResult major_arc_quadrature(
    const std::vector<FareyArc>& arcs,
    const std::function<cplx(i64, i64, double)>& integrand, QuadTol tol);

}  // namespace shiftconv
