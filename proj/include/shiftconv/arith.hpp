#pragma once

// Exact integer arithmetic: representation counts r_ell(n), quadratic
// residue symbols, the unit eps_d, modular inverses, and the
// squarefull/squarefree modulus factorization.

#include <vector>

#include "shiftconv/util.hpp"

namespace shiftconv {

// r_ell(n) = #{(n_1,...,n_ell) in Z^ell : n_1^2 + ... + n_ell^2 = n} for
// n = 0..n_max. values[0] = 1 always (the empty representation of 0).
struct ReprTable {
    int ell = 0;
    std::vector<i64> values;

    i64 n_max() const { return static_cast<i64>(values.size()) - 1; }
    i64 operator[](i64 n) const { return values[static_cast<std::size_t>(n)]; }
};

// Builds r_ell by ell-fold additive convolution with the theta coefficient
// array (1 at 0, 2 at each positive square). O(ell * n_max^{3/2}).
ReprTable repr_count(int ell, i64 n_max);

// Jacobi symbol (a/n) for odd n >= 1. Multiplicative in both arguments.
int jacobi_symbol(i64 a, i64 n);

// Kronecker symbol (a/n), the standard extension of Jacobi to all n != 0
// (and (a/0) for completeness). Needed for symbols with even lower entry.
int kronecker_symbol(i64 a, i64 n);

// chi_4, the nontrivial character mod 4.
inline int chi4(i64 n) {
    i64 r = mod_floor(n, 4);
    return r == 1 ? 1 : (r == 3 ? -1 : 0);
}

// eps_d = 1 for d = 1 (mod 4), i for d = -1 (mod 4). d must be odd; the
// residue is taken mod 4 first so negative d are fine.
cplx epsilon_unit(i64 d);

struct ModulusFactorization {
    i64 q = 1;
    i64 q1 = 1;  // 4*q1 squarefull
    i64 q2 = 1;  // odd squarefree, coprime to 2*q1
};

// The unique q = q1*q2 with (2 q1, q2) = 1, q2 squarefree and 4 q1
// squarefull. Trial division; q < 2^31 expected.
ModulusFactorization factor_squarefull_squarefree(i64 q);

// Inverse of a mod q in [1, q]. Throws if gcd(a, q) > 1.
i64 mod_inverse(i64 a, i64 q);

// Standard multiplicative helpers (trial division; adequate for q < 2^31).
i64 euler_phi(i64 n);
int moebius(i64 n);
i64 divisor_count(i64 n);
std::vector<i64> divisor_count_table(i64 n_max);

// Ramanujan sum c_q(n) = sum_{d | (n,q)} d * mu(q/d).
i64 ramanujan_sum(i64 q, i64 n);

}  // namespace shiftconv
