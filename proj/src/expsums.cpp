#include "shiftconv/expsums.hpp"

#include <cmath>

#include "shiftconv/arith.hpp"

namespace shiftconv {

namespace {

// direct summation works with an O(q) root-of-unity table; keep memory sane
constexpr i64 MAX_DIRECT_MODULUS = 50'000'000;

std::vector<cplx> root_table(i64 q) {
    if (q > MAX_DIRECT_MODULUS)
        throw std::invalid_argument("modulus too large for direct summation");
    std::vector<cplx> e(static_cast<std::size_t>(q));
    for (i64 k = 0; k < q; ++k)
        e[static_cast<std::size_t>(k)] = e2pi_ratio(k, q);
    return e;
}

// (a x^2 + b x) mod q with a, b already reduced into [0, q)
inline i64 quad_phase(i64 a, i64 b, i64 x, i64 q) {
    if (q < (i64{1} << 20)) {
        i64 x2 = (x * x) % q;
        return (a * x2 + b * x) % q;
    }
    i64 x2 = mulmod(x, x, q);
    return (mulmod(a, x2, q) + mulmod(b, x, q)) % q;
}

cplx gauss_sum_tab(i64 a, i64 b, i64 q, const std::vector<cplx>& e) {
    a = mod_floor(a, q);
    b = mod_floor(b, q);
    cplx s{0, 0};
    for (i64 x = 0; x < q; ++x)
        s += e[static_cast<std::size_t>(quad_phase(a, b, x, q))];
    return s;
}

}  // namespace

ExpSumValue make_expsum(cplx value, i64 modulus, double bound) {
    if (std::isfinite(bound) && std::abs(value) > bound + 1e-6 * (1.0 + std::abs(value)))
        throw std::logic_error("exponential sum exceeds its stated bound");
    return {value, modulus, bound};
}

cplx gauss_sum(i64 a, i64 b, i64 q) {
    if (q < 1) throw std::invalid_argument("gauss_sum: q >= 1");
    auto e = root_table(q);
    return gauss_sum_tab(a, b, q, e);
}

cplx gauss_sum_closed(i64 a, i64 b, i64 q) {
    if (q < 1 || q % 2 == 0 || std::gcd(mod_floor(a, q), q) != 1)
        throw std::invalid_argument("gauss_sum_closed: need odd q, gcd(2a,q)=1");
    if (q == 1) return {1, 0};
    i64 inv4a = mod_inverse(mulmod(4, mod_floor(a, q), q), q);
    i64 b2 = mulmod(mod_floor(b, q), mod_floor(b, q), q);
    cplx phase = e2pi_ratio(mod_floor(-mulmod(inv4a, b2, q), q), q);
    double sym = jacobi_symbol(a, q);
    return phase * sym * epsilon_unit(q) * std::sqrt(static_cast<double>(q));
}

ExpSumValue kloosterman(i64 m, i64 n, i64 q) {
    if (q < 1) throw std::invalid_argument("kloosterman: q >= 1");
    auto e = root_table(q);
    m = mod_floor(m, q);
    n = mod_floor(n, q);
    cplx s{0, 0};
    for (i64 a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        i64 abar = mod_inverse(a, q);
        s += e[static_cast<std::size_t>((mulmod(m, a, q) + mulmod(n, abar, q)) % q)];
    }
    i64 g = std::gcd(std::gcd(m == 0 ? q : m, n == 0 ? q : n), q);
    double bound = static_cast<double>(divisor_count(q)) *
                   std::sqrt(static_cast<double>(q)) *
                   std::sqrt(static_cast<double>(g));
    return make_expsum(s, q, bound);
}

ExpSumValue salie(i64 m, i64 n, i64 p) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("salie: p must be an odd prime");
    auto e = root_table(p);
    m = mod_floor(m, p);
    n = mod_floor(n, p);
    // inverse table for prime modulus
    std::vector<i64> inv(static_cast<std::size_t>(p));
    inv[1] = 1;
    for (i64 a = 2; a < p; ++a)
        inv[static_cast<std::size_t>(a)] =
            mod_floor(-(p / a) * inv[static_cast<std::size_t>(p % a)], p);
    cplx s{0, 0};
    for (i64 a = 1; a < p; ++a) {
        double leg = jacobi_symbol(a, p);
        s += leg * e[static_cast<std::size_t>(
                 (m * a % p + n * inv[static_cast<std::size_t>(a)] % p) % p)];
    }
    double bound = (m % p != 0 && n % p != 0)
                       ? 2.0 * std::sqrt(static_cast<double>(p))
                       : static_cast<double>(p - 1);
    return make_expsum(s, p, bound);
}

cplx twisted_sum_C(i64 b1, i64 b2, i64 h, i64 u, i64 q) {
    if (q < 1) throw std::invalid_argument("twisted_sum_C: q >= 1");
    auto e = root_table(q);
    b1 = mod_floor(b1, q);
    b2 = mod_floor(b2, q);
    h = mod_floor(h, q);
    u = mod_floor(u, q);
    cplx total{0, 0};
    for (i64 a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        cplx g1 = gauss_sum_tab(a, b1, q, e);
        cplx g2 = (b2 == b1) ? g1 : gauss_sum_tab(a, b2, q, e);
        i64 abar = mod_inverse(a, q);
        total += g1 * g2 *
                 e[static_cast<std::size_t>((mulmod(h, a, q) + mulmod(u, abar, q)) % q)];
    }
    return total;
}

cplx twisted_sum_C_factored(i64 b1, i64 b2, i64 h, i64 u, i64 q) {
    auto f = factor_squarefull_squarefree(q);
    if (f.q1 == 1 || f.q2 == 1) return twisted_sum_C(b1, b2, h, u, q);
    i64 inv_q2 = mod_inverse(f.q2, f.q1);
    i64 inv_q1 = mod_inverse(f.q1, f.q2);
    i64 h1 = mulmod(mulmod(inv_q2, inv_q2, f.q1), mod_floor(h, f.q1), f.q1);
    i64 h2 = mulmod(mulmod(inv_q1, inv_q1, f.q2), mod_floor(h, f.q2), f.q2);
    return twisted_sum_C(b1, b2, h1, u, f.q1) * twisted_sum_C(b1, b2, h2, u, f.q2);
}

cplx theta_multiplier_d(i64 q, i64 d) {
    return static_cast<double>(kronecker_symbol(q, d)) * std::conj(epsilon_unit(d));
}

cplx theta_multiplier_a(i64 q, i64 a) {
    return static_cast<double>(kronecker_symbol(-q, a)) * epsilon_unit(a);
}

namespace {

cplx ipow(cplx z, int e) {
    cplx r{1, 0};
    for (int i = 0; i < e; ++i) r *= z;
    return r;
}

void check_theta_shape(i64 h, i64 q, i64 D, i64& p) {
    if (D < 1 || q % (4 * D) != 0)
        throw std::invalid_argument("theta_char_sum: q must have the shape 4*D*p");
    p = q / (4 * D);
    bool ok = p > 2 && is_prime(p) && (2 * D) % p != 0 && h % p != 0;
    if (!ok)
        throw std::invalid_argument(
            "theta_char_sum: need q = 4Dp, p an odd prime coprime to 2Dh");
}

cplx chi_value(const std::vector<cplx>& chi, i64 D, i64 x) {
    if (D == 1) return {1, 0};
    return chi[static_cast<std::size_t>(mod_floor(x, D))];
}

}  // namespace

ThetaCharSum theta_char_sum_direct(i64 h, i64 M, i64 q, int ell, i64 D,
                                   const std::vector<cplx>& chi_d) {
    i64 p = 0;
    check_theta_shape(h, q, D, p);
    if (D > 1 && static_cast<i64>(chi_d.size()) != D)
        throw std::invalid_argument("theta_char_sum: chi_D table of size D required for D > 1");
    auto e = root_table(q);
    ThetaCharSum out;
    out.p = p;
    for (i64 a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        i64 d = mod_inverse(a, q);  // odd, since 4 | q
        cplx mult = ipow(theta_multiplier_d(q, d), ell);
        cplx chi = chi_value(chi_d, D, -d);
        out.total += chi * mult *
                     e[static_cast<std::size_t>((mulmod(h, a, q) + mulmod(M, d, q)) % q)];
    }
    return out;
}

ThetaCharSum theta_char_sum_factored(i64 h, i64 M, i64 q, int ell, i64 D,
                                     const std::vector<cplx>& chi_d) {
    i64 p = 0;
    check_theta_shape(h, q, D, p);
    if (D > 1 && static_cast<i64>(chi_d.size()) != D)
        throw std::invalid_argument("theta_char_sum: chi_D table of size D required for D > 1");
    const i64 r = 4 * D;
    const i64 pbar = mod_inverse(p, r);          // p^{-1} mod 4D
    const i64 rbar = mod_inverse(r % p, p);      // (4D)^{-1} mod p
    const i64 pbar2M = mulmod(mulmod(pbar, pbar, r), mod_floor(M, r), r);
    const i64 rbar2M = mulmod(mulmod(rbar, rbar, p), mod_floor(M, p), p);

    ThetaCharSum out;
    out.p = p;

    // 4D-part
    auto er = root_table(r);
    cplx s4{0, 0};
    for (i64 a1 = 1; a1 <= r; ++a1) {
        if (std::gcd(a1, r) != 1) continue;
        i64 a1bar = mod_inverse(a1, r);
        i64 x = mod_floor(p * a1, r);  // the residue of a mod 4D (odd)
        cplx mult;
        if (ell % 2 == 0) {
            mult = cplx(std::pow(static_cast<double>(chi4(x)), ell / 2), 0);
        } else {
            // chi4(x) (D/x) (-1)^{((p-1)/2)((x-1)/2)} eps_x^ell, the 4D-local
            // piece of ((-q/a) eps_a)^ell after quadratic reciprocity
            double sign = chi4(x) * kronecker_symbol(D, x);
            if (((p - 1) / 2) % 2 == 1 && ((x - 1) / 2) % 2 == 1) sign = -sign;
            mult = sign * ipow(epsilon_unit(x), ell);
        }
        cplx chi = chi_value(chi_d, D, -mulmod(pbar, a1bar, r));
        s4 += chi * mult *
              er[static_cast<std::size_t>((mulmod(mod_floor(h, r), a1, r) +
                                           mulmod(pbar2M, a1bar, r)) % r)];
    }
    out.part_4d = s4;

    // p-part: Kloosterman shaped for even ell, Salie shaped for odd ell
    auto ep = root_table(p);
    std::vector<i64> inv(static_cast<std::size_t>(p));
    inv[1] = 1;
    for (i64 a = 2; a < p; ++a)
        inv[static_cast<std::size_t>(a)] =
            mod_floor(-(p / a) * inv[static_cast<std::size_t>(p % a)], p);
    cplx sp{0, 0};
    for (i64 a2 = 1; a2 < p; ++a2) {
        i64 ph = (mod_floor(h, p) * a2 % p + rbar2M * inv[static_cast<std::size_t>(a2)] % p) % p;
        cplx term = ep[static_cast<std::size_t>(ph)];
        if (ell % 2 == 1) term *= static_cast<double>(jacobi_symbol(r * a2, p));
        sp += term;
    }
    out.part_p = sp;
    out.total = s4 * sp;
    return out;
}

}  // namespace shiftconv
