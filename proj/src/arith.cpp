#include "shiftconv/arith.hpp"

#include <algorithm>

namespace shiftconv {

ReprTable repr_count(int ell, i64 n_max) {
    if (ell < 1) throw std::invalid_argument("repr_count: ell must be >= 1");
    if (n_max < 0) throw std::invalid_argument("repr_count: n_max must be >= 0");

    std::size_t size = static_cast<std::size_t>(n_max) + 1;
    // theta coefficients: 1 at 0, 2 at each positive square
    std::vector<i64> squares;
    for (i64 k = 1; k * k <= n_max; ++k) squares.push_back(k * k);

    std::vector<i64> cur(size, 0), next(size, 0);
    cur[0] = 1;
    for (i64 s : squares) cur[static_cast<std::size_t>(s)] = 2;
    for (int pass = 1; pass < ell; ++pass) {
        // next = cur * theta
        for (std::size_t n = 0; n < size; ++n) next[n] = cur[n];
        for (i64 s : squares) {
            const std::size_t off = static_cast<std::size_t>(s);
            for (std::size_t n = off; n < size; ++n) {
                next[n] = checked_add(next[n], 2 * cur[n - off]);
            }
        }
        cur.swap(next);
    }
    ReprTable t;
    t.ell = ell;
    t.values = std::move(cur);
    return t;
}

int jacobi_symbol(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0)
        throw std::invalid_argument("jacobi_symbol: n must be positive and odd");
    a = mod_floor(a, n);
    int s = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

int kronecker_symbol(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    int v2 = 0;
    while (n % 2 == 0) { n /= 2; ++v2; }
    if (v2 > 0) {
        if (a % 2 == 0) return 0;
        // (a/2) = +1 for a = +-1 mod 8, -1 for a = +-3 mod 8
        i64 r = mod_floor(a, 8);
        int t = (r == 1 || r == 7) ? 1 : -1;
        if (v2 % 2 == 1) s *= t;
    }
    return s * jacobi_symbol(a, n);
}

cplx epsilon_unit(i64 d) {
    if (mod_floor(d, 2) == 0)
        throw std::invalid_argument("epsilon_unit: d must be odd");
    return mod_floor(d, 4) == 1 ? cplx(1, 0) : cplx(0, 1);
}

ModulusFactorization factor_squarefull_squarefree(i64 q) {
    if (q < 1) throw std::invalid_argument("factor_squarefull_squarefree: q >= 1");
    ModulusFactorization f;
    f.q = q;
    // The 2-part always belongs to q1 (4*q1 has 2^2 regardless); an odd
    // prime goes to q1 iff it divides q at least twice.
    i64 m = q;
    while (m % 2 == 0) { f.q1 *= 2; m /= 2; }
    for (i64 p = 3; p * p <= m; p += 2) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        i64 pe = 1;
        for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
        if (e >= 2) f.q1 = checked_mul(f.q1, pe);
        else f.q2 = checked_mul(f.q2, p);
    }
    if (m > 1) f.q2 = checked_mul(f.q2, m);  // leftover prime, exponent 1
    return f;
}

i64 mod_inverse(i64 a, i64 q) {
    if (q < 1) throw std::invalid_argument("mod_inverse: q must be positive");
    a = mod_floor(a, q);
    // extended Euclid
    i64 old_r = a, r = q, old_s = 1, s = 0;
    while (r != 0) {
        i64 k = old_r / r;
        i64 t = old_r - k * r; old_r = r; r = t;
        t = old_s - k * s; old_s = s; s = t;
    }
    if (old_r != 1)
        throw std::invalid_argument("mod_inverse: argument not invertible");
    i64 d = mod_floor(old_s, q);
    return d == 0 ? q : d;  // q = 1 case: the representative in [1, q]
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

int moebius(i64 n) {
    int r = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
    }
    if (n > 1) r = -r;
    return r;
}

i64 divisor_count(i64 n) {
    i64 r = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        r *= e + 1;
    }
    if (n > 1) r *= 2;
    return r;
}

std::vector<i64> divisor_count_table(i64 n_max) {
    std::vector<i64> d(static_cast<std::size_t>(n_max) + 1, 0);
    for (i64 k = 1; k <= n_max; ++k)
        for (i64 m = k; m <= n_max; m += k) d[static_cast<std::size_t>(m)]++;
    return d;
}

i64 ramanujan_sum(i64 q, i64 n) {
    i64 g = std::gcd(q, mod_floor(n, q));  // gcd(q, 0) = q
    i64 s = 0;
    for (i64 d = 1; d * d <= g; ++d) {
        if (g % d) continue;
        s += d * moebius(q / d);
        i64 e = g / d;
        if (e != d) s += e * moebius(q / e);
    }
    return s;
}

}  // namespace shiftconv
