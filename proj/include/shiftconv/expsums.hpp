#pragma once

// Complete exponential sums: quadratic Gauss sums with their closed form,
// Kloosterman and Salie sums with Weil-type bounds, the twisted sums
// C(b1,b2,h,u;q) with their CRT factorization, and the theta-multiplier
// character sums that arise at moduli q = 4Dp.
//
// Direct summation is always the ground truth; closed forms and factored
// evaluations are checked against it, never the reverse.

#include <vector>

#include "shiftconv/util.hpp"

namespace shiftconv {

struct ExpSumValue {
    cplx value{0, 0};
    i64 modulus = 1;
    double bound = 0;  // applicable Weil-type bound (infinity if none)
};

// Checked constructor: asserts |value| <= bound for finite bounds.
ExpSumValue make_expsum(cplx value, i64 modulus, double bound);

// G(a,b;q) = sum_{x mod q} e((a x^2 + b x)/q), direct O(q) summation.
cplx gauss_sum(i64 a, i64 b, i64 q);

// Closed form for gcd(2a, q) = 1 (so q odd):
// G(a,b;q) = e(-inv4*inva*b^2/q) (a/q) eps_q sqrt(q).
cplx gauss_sum_closed(i64 a, i64 b, i64 q);

// S(m,n;q) = sum_{a mod q, (a,q)=1} e((m a + n inv(a))/q); real-valued.
// bound = d(q) sqrt(q) sqrt(gcd(m,n,q)).
ExpSumValue kloosterman(i64 m, i64 n, i64 q);

// Salie sum T(m,n;p) = sum* (a/p) e((m a + n inv(a))/p), p an odd prime.
// bound = 2 sqrt(p) when p does not divide m n.
ExpSumValue salie(i64 m, i64 n, i64 p);

// C(b1,b2,h,u;q) = sum*_{a mod q} G(a,b1;q) G(a,b2;q) e((a h + inv(a) u)/q).
cplx twisted_sum_C(i64 b1, i64 b2, i64 h, i64 u, i64 q);

// Same value via the squarefull/squarefree factorization q = q1 q2 and
// C(...;q) = C(b1,b2,inv(q2)^2 h,u;q1) * C(b1,b2,inv(q1)^2 h,u;q2).
cplx twisted_sum_C_factored(i64 b1, i64 b2, i64 h, i64 u, i64 q);

// (q/d) eps_d^{-1} for odd d, the theta multiplier attached to the modulus.
cplx theta_multiplier_d(i64 q, i64 d);
// (-q/a) eps_a; equals theta_multiplier_d(q, inv(a)) when 4 | q.
cplx theta_multiplier_a(i64 q, i64 a);

struct ThetaCharSum {
    cplx total{0, 0};
    cplx part_4d{0, 0};  // factored path only
    cplx part_p{0, 0};   // factored path only; Kloosterman/Salie shaped
    i64 p = 0;
};

// sum_{a mod q, ad=1 (q)} chi_D(-d) ((q/d) eps_d^{-1})^ell e((h a + M d)/q)
// for q = 4 D p with p prime, p coprime to 2 D h. chi_d lists chi_D on
// residues 0..D-1 (defaults to the trivial character for D = 1).
ThetaCharSum theta_char_sum_direct(i64 h, i64 M, i64 q, int ell, i64 D = 1,
                                   const std::vector<cplx>& chi_d = {});

// The same sum split by CRT into its 4D-part and p-part.
ThetaCharSum theta_char_sum_factored(i64 h, i64 M, i64 q, int ell, i64 D = 1,
                                     const std::vector<cplx>& chi_d = {});

}  // namespace shiftconv
