#pragma once

// Small shared utilities: the e(x) = exp(2*pi*i*x) convention, checked
// 64-bit arithmetic, modular helpers, a primality test, and a jet type
// (truncated Taylor series) used for exact window derivatives.
//
// Convention used across the whole project: e(x) denotes exp(2*pi*i*x).

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace shiftconv {

using cplx = std::complex<double>;
using i64 = std::int64_t;
using i128 = __int128;

inline constexpr double PI = 3.14159265358979323846264338327950288;

// e(x) = exp(2 pi i x), with the argument reduced mod 1 before the
// trigonometric call so that large rational phases stay accurate.
inline cplx e2pi(double x) {
    double r = std::remainder(x, 1.0);
    double t = 2.0 * PI * r;
    return {std::cos(t), std::sin(t)};
}

// e(num/den) for integer phases; reduces num mod den exactly first.
inline cplx e2pi_ratio(i64 num, i64 den) {
    num %= den;
    return e2pi(static_cast<double>(num) / static_cast<double>(den));
}

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("int64 addition overflow");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("int64 multiplication overflow");
    return r;
}

inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<i128>(a) * b % m);
}

inline i64 powmod(i64 b, i64 e, i64 m) {
    b = mod_floor(b, m);
    i64 r = 1 % m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string s;
    while (u > 0) { s += char('0' + int(u % 10)); u /= 10; }
    if (neg) s += '-';
    return {s.rbegin(), s.rend()};
}

// Runs fn(i) for i in [0, n). With threads <= 1 this is a plain loop; the
// parallel path partitions the index range, so results written to
// preallocated slots are deterministic either way.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nt = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += nt) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Degree-4 jet: value and first four derivatives of a scalar function,
// propagated through arithmetic and exp. Enough for the smooth-window
// derivatives the transforms need.
struct Jet {
    double c[5] = {0, 0, 0, 0, 0};

    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    // The identity function t, seen as a jet at t0 with inner scale ds/dt.
    static Jet variable(double v, double scale = 1.0) {
        Jet j;
        j.c[0] = v;
        j.c[1] = scale;
        return j;
    }

    Jet operator+(const Jet& o) const {
        Jet r;
        for (int i = 0; i < 5; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r;
        for (int i = 0; i < 5; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Jet operator*(const Jet& o) const {
        // Leibniz on Taylor coefficients c[k]/k!; work with raw derivatives,
        // so include binomial factors.
        static const double binom[5][5] = {{1, 0, 0, 0, 0},
                                           {1, 1, 0, 0, 0},
                                           {1, 2, 1, 0, 0},
                                           {1, 3, 3, 1, 0},
                                           {1, 4, 6, 4, 1}};
        Jet r;
        for (int k = 0; k < 5; ++k) {
            double s = 0;
            for (int i = 0; i <= k; ++i) s += binom[k][i] * c[i] * o.c[k - i];
            r.c[k] = s;
        }
        return r;
    }
};

// exp of a jet.
inline Jet jet_exp(const Jet& u) {
    // Convert derivatives -> Taylor coefficients, run the standard
    // recurrence y_k = (1/k) sum_{j=1..k} j u_j y_{k-j}, convert back.
    double fact[5] = {1, 1, 2, 6, 24};
    double ut[5], yt[5];
    for (int i = 0; i < 5; ++i) ut[i] = u.c[i] / fact[i];
    yt[0] = std::exp(ut[0]);
    for (int k = 1; k < 5; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) s += j * ut[j] * yt[k - j];
        yt[k] = s / k;
    }
    Jet r;
    for (int i = 0; i < 5; ++i) r.c[i] = yt[i] * fact[i];
    return r;
}

// 1/u for a jet with u(0) != 0.
inline Jet jet_inv(const Jet& u) {
    double fact[5] = {1, 1, 2, 6, 24};
    double ut[5], zt[5];
    for (int i = 0; i < 5; ++i) ut[i] = u.c[i] / fact[i];
    zt[0] = 1.0 / ut[0];
    for (int k = 1; k < 5; ++k) {
        double s = 0;
        for (int j = 1; j <= k; ++j) s += ut[j] * zt[k - j];
        zt[k] = -s / ut[0];
    }
    Jet r;
    for (int i = 0; i < 5; ++i) r.c[i] = zt[i] * fact[i];
    return r;
}

}  // namespace shiftconv
