#include "shiftconv/circle.hpp"

#include <algorithm>
#include <cmath>

#include "shiftconv/arith.hpp"

namespace shiftconv {

ModuliSet build_moduli_set(i64 D, double Q, i64 h) {
    if (D < 1 || h < 1) throw std::invalid_argument("build_moduli_set: D >= 1, h >= 1");
    if (!(Q >= 16.0 * D)) throw std::invalid_argument("build_moduli_set: need Q >= 16D");
    ModuliSet s;
    s.D = D;
    s.Q = Q;
    s.h = h;
    i64 plo = static_cast<i64>(std::ceil(Q / (8.0 * D) - 1e-9));
    i64 phi_hi = static_cast<i64>(std::floor(Q / (4.0 * D) + 1e-9));
    for (i64 p = std::max<i64>(plo, 2); p <= phi_hi; ++p) {
        if (!is_prime(p)) continue;
        if ((2 * D * h) % p == 0) continue;  // p | 2Dh
        s.moduli.push_back(4 * D * p);
    }
    if (s.moduli.empty())
        throw std::runtime_error("build_moduli_set: empty moduli set for these parameters");
    for (i64 q : s.moduli) s.L += euler_phi(q);
    return s;
}

bool moduli_mass_ok(const ModuliSet& set) {
    double c = 0.008 * static_cast<double>(euler_phi(4 * set.D)) /
               (static_cast<double>(set.D) * set.D);
    return static_cast<double>(set.L) >=
           c * set.Q * set.Q / std::log(std::max(set.Q, 3.0));
}

namespace {

void check_delta(const ModuliSet& set, double delta) {
    double lo = 1.0 / (set.Q * set.Q), hi = 1.0 / set.Q;
    if (!(delta >= lo * (1 - 1e-12) && delta <= hi * (1 + 1e-12)))
        throw std::invalid_argument("jutila: need Q^-2 <= delta <= Q^-1");
}

}  // namespace

double jutila_indicator(const ModuliSet& set, double delta, double x) {
    check_delta(set, delta);
    x -= std::floor(x);
    i64 count = 0;
    for (i64 q : set.moduli) {
        // fractions a/q with dist(x, a/q) <= delta mod 1; candidates lie in
        // [q(x - delta), q(x + delta)] shifted by 0 or +-q
        i64 lo = static_cast<i64>(std::ceil(q * (x - delta) - 1e-12));
        i64 hi = static_cast<i64>(std::floor(q * (x + delta) + 1e-12));
        for (i64 a0 = lo; a0 <= hi; ++a0) {
            i64 a = mod_floor(a0, q);
            if (a == 0) a = q;
            if (std::gcd(a, q) == 1) ++count;
        }
    }
    return static_cast<double>(count) /
           (2.0 * delta * static_cast<double>(set.L));
}

namespace {

// Sweep of the piecewise-constant coverage count: events at (a/q - delta,
// +1) and (a/q + delta, -1), wrapped into [0, 1).
struct Sweep {
    std::vector<std::pair<long double, int>> events;
    i64 start_count = 0;  // coverage at x = 0
};

Sweep build_sweep(const ModuliSet& set, double delta) {
    Sweep sw;
    for (i64 q : set.moduli) {
        for (i64 a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            long double center = static_cast<long double>(a) / q;
            long double l = center - static_cast<long double>(delta);
            long double r = center + static_cast<long double>(delta);
            if (l < 0) {
                ++sw.start_count;
                sw.events.push_back({l + 1.0L, 1});
                sw.events.push_back({r, -1});
            } else if (r >= 1.0L) {
                ++sw.start_count;
                sw.events.push_back({l, 1});
                sw.events.push_back({r - 1.0L, -1});
            } else {
                sw.events.push_back({l, 1});
                sw.events.push_back({r, -1});
            }
        }
    }
    std::sort(sw.events.begin(), sw.events.end());
    return sw;
}

// integrates f(count) over [0,1) for the piecewise-constant coverage count
long double sweep_integral(const Sweep& sw,
                           const std::function<long double(i64)>& f) {
    long double pos = 0.0L, acc = 0.0L;
    i64 count = sw.start_count;
    std::size_t i = 0;
    while (i < sw.events.size()) {
        long double x = sw.events[i].first;
        if (x > pos) {
            acc += (x - pos) * f(count);
            pos = x;
        }
        while (i < sw.events.size() && sw.events[i].first == x) {
            count += sw.events[i].second;
            ++i;
        }
    }
    acc += (1.0L - pos) * f(count);
    return acc;
}

}  // namespace

double jutila_l2_error(const ModuliSet& set, double delta) {
    check_delta(set, delta);
    Sweep sw = build_sweep(set, delta);
    if (sw.events.size() > 200'000'000)
        throw std::runtime_error("jutila_l2_error: breakpoint explosion");
    long double norm = 2.0L * static_cast<long double>(delta) * set.L;
    return static_cast<double>(sweep_integral(sw, [&](i64 c) {
        long double d = 1.0L - static_cast<long double>(c) / norm;
        return d * d;
    }));
}

double jutila_mass(const ModuliSet& set, double delta) {
    check_delta(set, delta);
    Sweep sw = build_sweep(set, delta);
    long double norm = 2.0L * static_cast<long double>(delta) * set.L;
    return static_cast<double>(sweep_integral(
        sw, [&](i64 c) { return static_cast<long double>(c) / norm; }));
}

std::vector<FareyArc> farey_dissect(i64 Q) {
    if (Q < 1) throw std::invalid_argument("farey_dissect: Q >= 1");
    // Farey fractions of order Q in (0, 1], with 0/1 and (Q+1)/Q as the
    // cyclic neighbors of the two ends.
    std::vector<std::pair<i64, i64>> fr;  // (a, q)
    fr.push_back({0, 1});
    i64 a0 = 0, q0 = 1, a1 = 1, q1 = Q;
    fr.push_back({a1, q1});
    while (!(a1 == 1 && q1 == 1)) {
        i64 k = (Q + q0) / q1;
        i64 a2 = k * a1 - a0;
        i64 q2 = k * q1 - q0;
        fr.push_back({a2, q2});
        a0 = a1; q0 = q1; a1 = a2; q1 = q2;
    }
    // right neighbor of 1/1
    {
        i64 k = (Q + q0) / q1;
        fr.push_back({k * a1 - a0, k * q1 - q0});
    }
    std::vector<FareyArc> arcs;
    arcs.reserve(fr.size() - 2);
    for (std::size_t i = 1; i + 1 < fr.size(); ++i) {
        FareyArc arc;
        arc.a = fr[i].first;
        arc.q = fr[i].second;
        i64 qp = fr[i - 1].second;   // left neighbor denominator q'
        i64 qpp = fr[i + 1].second;  // right neighbor denominator q''
        arc.left = {-1, arc.q * (arc.q + qp)};
        arc.right = {1, arc.q * (arc.q + qpp)};
        arcs.push_back(arc);
    }
    return arcs;
}

ArcQuadResult major_arc_quadrature(
    const std::vector<FareyArc>& arcs,
    const std::function<cplx(i64, i64, double)>& integrand, QuadTol tol) {
    ArcQuadResult res;
    QuadTol per_arc{tol.rel, tol.abs / std::max<std::size_t>(arcs.size(), 1)};
    for (const auto& arc : arcs) {
        double lo = static_cast<double>(arc.left.num) / static_cast<double>(arc.left.den);
        double hi = static_cast<double>(arc.right.num) / static_cast<double>(arc.right.den);
        auto f = [&](double beta) { return integrand(arc.a, arc.q, beta); };
        auto r = integrate(f, lo, hi, per_arc);
        res.total += r.value;
        res.evals += r.evals;
        if (!r.converged) ++res.arcs_failed;
    }
    return res;
}

}  // namespace shiftconv
