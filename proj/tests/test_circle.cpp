#include <doctest.h>

#include <cmath>

#include "shiftconv/arith.hpp"
#include "shiftconv/circle.hpp"

using namespace shiftconv;

TEST_CASE("moduli set construction") {
    auto s = build_moduli_set(1, 80.0, 1);
    CHECK(s.moduli == std::vector<i64>{44, 52, 68, 76});
    i64 L = 0;
    for (i64 q : s.moduli) L += euler_phi(q);
    CHECK(s.L == L);

    auto s11 = build_moduli_set(1, 80.0, 11);  // p = 11 now divides 2Dh
    CHECK(s11.moduli == std::vector<i64>{52, 68, 76});

    auto s20 = build_moduli_set(1, 20.0, 1);
    CHECK(s20.moduli == std::vector<i64>{12, 20});

    CHECK_THROWS_AS(build_moduli_set(1, 10.0, 1), std::invalid_argument);
    // a shift divisible by every candidate prime empties the set
    CHECK_THROWS_AS(build_moduli_set(1, 20.0, 15), std::runtime_error);
}

TEST_CASE("moduli have the exact 4Dp shape and the set carries its mass") {
    for (i64 D : {i64{1}, i64{2}}) {
        auto s = build_moduli_set(D, 400.0, 7);
        for (i64 q : s.moduli) {
            REQUIRE(q % (4 * D) == 0);
            i64 p = q / (4 * D);
            REQUIRE(is_prime(p));
            REQUIRE(p * 8 * D >= static_cast<i64>(s.Q) - 1);
            REQUIRE(p * 4 * D <= static_cast<i64>(s.Q) + 1);
            REQUIRE((2 * D * s.h) % p != 0);
        }
    }
    for (double Q : {1000.0, 4000.0, 16000.0}) {
        auto s = build_moduli_set(1, Q, 1);
        CHECK(moduli_mass_ok(s));
    }
}

TEST_CASE("jutila indicator: pointwise values and mass") {
    auto s = build_moduli_set(1, 40.0, 1);  // moduli {20, 28}
    double delta = 1.0 / 40.0;
    // far from every fraction with these moduli
    CHECK(jutila_indicator(s, delta, 0.5 + 0.5 / (20 * 28)) >= 0.0);
    CHECK(jutila_indicator(s, delta, 1.0 / (20.0 * 28.0) / 2 + delta * 2 + 1e-6) >= 0.0);
    // x exactly on a fraction is covered
    CHECK(jutila_indicator(s, delta, 1.0 / 20.0) > 0.0);
    // nonnegativity on a sweep, and genuinely uncovered points exist
    int zeros = 0;
    for (int i = 0; i < 10000; ++i) {
        double v = jutila_indicator(s, delta, i / 10000.0);
        CHECK(v >= 0.0);
        if (v == 0.0) ++zeros;
    }
    CHECK(zeros > 0);
    // delta outside [Q^-2, Q^-1] rejected
    CHECK_THROWS_AS(jutila_indicator(s, 0.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(jutila_indicator(s, 1e-9, 0.1), std::invalid_argument);
}

TEST_CASE("jutila mass integrates to one") {
    for (double Q : {40.0, 80.0, 160.0}) {
        auto s = build_moduli_set(1, Q, 1);
        for (double delta : {1.0 / Q, 2.0 / (Q * Q)}) {
            CHECK(jutila_mass(s, delta) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("jutila indicator agrees with the sweep structure") {
    auto s = build_moduli_set(1, 60.0, 1);
    double delta = 1.0 / 60.0;
    // spot-check the normalized indicator against a brute-force count
    for (double x : {0.0, 0.1237, 0.25, 0.5, 0.715, 0.999}) {
        i64 count = 0;
        for (i64 q : s.moduli) {
            for (i64 a = 1; a <= q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                double d = std::abs(x - static_cast<double>(a) / q);
                d = std::min(d, 1.0 - d);
                if (d <= delta) ++count;
            }
        }
        double want = count / (2.0 * delta * s.L);
        CHECK(jutila_indicator(s, delta, x) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("jutila L2 error and the discrepancy constant") {
    double cprev = -1;
    for (double Q : {40.0, 80.0, 160.0, 320.0}) {
        auto s = build_moduli_set(1, Q, 1);
        double delta = 1.0 / Q;
        double err = jutila_l2_error(s, delta);
        CHECK(err >= 0.0);
        double fitted = err * delta * static_cast<double>(s.L) * s.L / (Q * Q);
        CHECK(fitted <= 10.0);
        if (cprev > 0) CHECK(fitted <= 2.0 * cprev);
        cprev = fitted;
    }
    // the constant stays bounded over the whole admissible delta range,
    // including irrational delta = Q^{-3/2}
    for (double Q : {40.0, 160.0, 640.0}) {
        auto s = build_moduli_set(1, Q, 1);
        for (double p : {1.0, 1.5, 2.0}) {
            double delta = std::pow(Q, -p);
            double fitted = jutila_l2_error(s, delta) * delta *
                            static_cast<double>(s.L) * s.L / (Q * Q);
            CHECK(fitted <= 10.0);
            CHECK(fitted >= 0.0);
        }
    }
}

TEST_CASE("farey dissection basics") {
    auto a1 = farey_dissect(1);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0].a == 1);
    CHECK(a1[0].q == 1);
    CHECK(a1[0].left.num == -1);
    CHECK(a1[0].left.den == 2);
    CHECK(a1[0].right.num == 1);
    CHECK(a1[0].right.den == 2);

    auto a2 = farey_dissect(2);
    REQUIRE(a2.size() == 2);
    CHECK(a2[0].a == 1);
    CHECK(a2[0].q == 2);
    CHECK(a2[1].q == 1);
    // measures add to 1
    double total = 0;
    for (auto& arc : a2)
        total += static_cast<double>(arc.right.num) / arc.right.den -
                 static_cast<double>(arc.left.num) / arc.left.den;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("farey dissection partitions exactly (rational arithmetic)") {
    for (i64 Q : {i64{5}, i64{37}, i64{200}}) {
        auto arcs = farey_dissect(Q);
        std::size_t count = 0;
        for (i64 q = 1; q <= Q; ++q) count += static_cast<std::size_t>(euler_phi(q));
        REQUIRE(arcs.size() == count);

        // neighbor congruences q' and q''
        for (auto& arc : arcs) {
            i64 qp = arc.left.den / arc.q - arc.q;
            i64 qpp = arc.right.den / arc.q - arc.q;
            REQUIRE(arc.left.den == arc.q * (arc.q + qp));
            REQUIRE(mod_floor(arc.a * qp, arc.q) == 1 % arc.q);
            REQUIRE(mod_floor(arc.a * qpp, arc.q) == mod_floor(-1, arc.q) % arc.q);
            REQUIRE(qp + arc.q > Q);
            REQUIRE(qpp + arc.q > Q);
            REQUIRE(qp <= Q);
            REQUIRE(qpp <= Q);
        }

        // exact cover: right endpoint of arc i equals left endpoint of i+1
        auto cross_eq = [](i64 n1, i64 d1, i64 n2, i64 d2) {
            return static_cast<i128>(n1) * d2 == static_cast<i128>(n2) * d1;
        };
        for (std::size_t i = 0; i + 1 < arcs.size(); ++i) {
            const auto& A = arcs[i];
            const auto& B = arcs[i + 1];
            // absolute endpoints a/q + r: (a*den + num) / (q*den)
            i64 n1 = A.a * A.right.den + A.right.num * A.q;
            i64 d1 = A.q * A.right.den;
            i64 n2 = B.a * B.left.den + B.left.num * B.q;
            i64 d2 = B.q * B.left.den;
            REQUIRE(cross_eq(n1, d1, n2, d2));
        }
        // total span is exactly 1: last right minus first left
        const auto& F = arcs.front();
        const auto& L = arcs.back();
        i64 nf = F.a * F.left.den + F.left.num * F.q;
        i64 df = F.q * F.left.den;
        i64 nl = L.a * L.right.den + L.right.num * L.q;
        i64 dl = L.q * L.right.den;
        REQUIRE(static_cast<i128>(nl) * df - static_cast<i128>(nf) * dl ==
                static_cast<i128>(df) * dl);
    }
}

TEST_CASE("major arc quadrature: partition measure and Fourier coefficient") {
    auto arcs = farey_dissect(20);
    auto one = major_arc_quadrature(
        arcs, [](i64, i64, double) { return cplx{1, 0}; }, {1e-12, 1e-12});
    CHECK(one.total.real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(one.arcs_failed == 0);

    // integral of e(-k beta) over each arc has a closed form
    for (double k : {3.0, 11.0}) {
        auto got = major_arc_quadrature(
            arcs, [&](i64, i64, double b) { return e2pi(-k * b); }, {1e-12, 1e-13});
        cplx want{0, 0};
        for (auto& arc : arcs) {
            double lo = static_cast<double>(arc.left.num) / arc.left.den;
            double hi = static_cast<double>(arc.right.num) / arc.right.den;
            want += (e2pi(-k * hi) - e2pi(-k * lo)) / cplx(0, -2 * PI * k);
        }
        CHECK(std::abs(got.total - want) < 1e-10);
    }
}
