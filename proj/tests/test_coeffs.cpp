#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "shiftconv/arith.hpp"
#include "shiftconv/coeffs.hpp"

using namespace shiftconv;

namespace {

// Independent oracle: expand q * prod_{m<=N} (1-q^m)^24 by multiplying the
// 24 copies of each factor (1 - q^m) one at a time. O(N^2), test-only.
std::vector<i128> tau_oracle(i64 N) {
    std::vector<i128> c(static_cast<std::size_t>(N), 0);
    c[0] = 1;
    for (i64 m = 1; m < N; ++m) {
        for (int rep = 0; rep < 24; ++rep) {
            for (i64 n = N - 1; n >= m; --n)
                c[static_cast<std::size_t>(n)] -= c[static_cast<std::size_t>(n - m)];
        }
    }
    std::vector<i128> tau(static_cast<std::size_t>(N) + 1, 0);
    for (i64 n = 1; n <= N; ++n) tau[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n - 1)];
    return tau;
}

}  // namespace

TEST_CASE("tau values against the factor-by-factor oracle") {
    const i64 N = 300;
    auto fast = ramanujan_tau_raw(N);
    auto slow = tau_oracle(N);
    for (i64 n = 1; n <= N; ++n) REQUIRE(fast[static_cast<std::size_t>(n)] == slow[static_cast<std::size_t>(n)]);
    CHECK(static_cast<long long>(fast[1]) == 1);
    CHECK(static_cast<long long>(fast[2]) == -24);
    CHECK(static_cast<long long>(fast[3]) == 252);
}

TEST_CASE("normalized lambda values") {
    auto t = ramanujan_tau(100);
    CHECK(t(1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t(2) == doctest::Approx(-0.5303300859).epsilon(1e-9));
    CHECK(t(3) == doctest::Approx(252.0 / std::pow(3.0, 5.5)).epsilon(1e-14));
    CHECK_THROWS_AS(ramanujan_tau(0), std::invalid_argument);
}

TEST_CASE("hecke relations hold for the native table") {
    auto t = ramanujan_tau(1000);
    auto rep = check_hecke_relations(t);
    CHECK(rep.hecke.empty());
}

TEST_CASE("hecke check flags an injected fault at n=4") {
    auto t = ramanujan_tau(64);
    t.lam[4] += 1.0;
    auto rep = check_hecke_relations(t);
    CHECK(!rep.hecke.empty());
    for (const auto& v : rep.hecke) {
        bool touches4 = (v.m * v.n) % 4 == 0 || v.n == 4 || v.m == 4 ||
                        (v.m == 2 && v.n == 2);
        REQUIRE(touches4);
    }
}

TEST_CASE("single-entry table has no violations") {
    CoefficientTable t;
    t.lam = {0.0, 1.0};
    CHECK(check_hecke_relations(t).hecke.empty());
}

TEST_CASE("deligne bound |lambda(n)| <= d(n)") {
    const i64 N = 20000;
    auto t = ramanujan_tau(N);
    auto d = divisor_count_table(N);
    for (i64 n = 1; n <= N; ++n)
        REQUIRE(std::abs(t(n)) <= static_cast<double>(d[static_cast<std::size_t>(n)]) + 1e-12);
}

TEST_CASE("coefficient file round-trip and parse errors") {
    auto t = ramanujan_tau(200);
    const char* path = "tau_roundtrip_test.txt";
    write_coefficients(t, path);
    auto lt = load_coefficients(path);
    REQUIRE(lt.table.n_max() == 200);
    for (i64 n = 1; n <= 200; ++n) REQUIRE(lt.table(n) == t(n));
    CHECK(lt.table.spec.kind == FormKind::Holomorphic);
    CHECK(lt.table.spec.weight == 12);
    CHECK(lt.report.ok());
    std::remove(path);

    // direct parse of a two-line file
    {
        FILE* f = std::fopen("tiny_coeffs.txt", "w");
        std::fputs("# kind holomorphic\n1 1.0\n2 -0.53033\n", f);
        std::fclose(f);
        auto tiny = load_coefficients("tiny_coeffs.txt");
        CHECK(tiny.table.n_max() == 2);
        CHECK(tiny.table(2) == doctest::Approx(-0.53033));
        std::remove("tiny_coeffs.txt");
    }
    // gap in the n sequence is fatal
    {
        FILE* f = std::fopen("gap_coeffs.txt", "w");
        std::fputs("1 1.0\n3 0.5\n", f);
        std::fclose(f);
        CHECK_THROWS_AS(load_coefficients("gap_coeffs.txt"), std::runtime_error);
        std::remove("gap_coeffs.txt");
    }
    CHECK_THROWS_AS(load_coefficients("no_such_file.txt"), std::runtime_error);
}

TEST_CASE("maass metadata and lambda(1) validation") {
    {
        FILE* f = std::fopen("maass_coeffs.txt", "w");
        std::fputs("# kind maass\n# weight 0\n# mu 9.5337\n# theta 0.109375\n"
                   "# omega_re 0.25\n# omega_im -0.5\n1 1.0\n2 1.549\n3 0.246\n",
                   f);
        std::fclose(f);
        auto lt = load_coefficients("maass_coeffs.txt");
        CHECK(lt.table.spec.kind == FormKind::Maass);
        CHECK(lt.table.spec.spectral_mu == doctest::Approx(9.5337));
        CHECK(lt.table.spec.theta == doctest::Approx(7.0 / 64.0));
        REQUIRE(lt.table.spec.omega_f.has_value());
        CHECK(lt.table.spec.omega_f->real() == doctest::Approx(0.25));
        CHECK(lt.table.spec.omega_f->imag() == doctest::Approx(-0.5));
        std::remove("maass_coeffs.txt");
    }
    {
        // lambda(1) != 1 is flagged (non-fatally) by the relation check
        CoefficientTable bad;
        bad.lam = {0.0, 0.5, 0.3};
        auto rep = check_hecke_relations(bad);
        REQUIRE(!rep.hecke.empty());
        CHECK(rep.hecke.front().m == 1);
        CHECK(rep.hecke.front().expected == 1.0);
    }
}

TEST_CASE("rankin-selberg partial sums scale linearly") {
    auto t = ramanujan_tau(10000);
    double c100 = 0, c1000 = 0, c10000 = 0;
    double acc = 0;
    for (i64 n = 1; n <= 10000; ++n) {
        acc += t(n) * t(n);
        if (n == 100) c100 = acc / n;
        if (n == 1000) c1000 = acc / n;
        if (n == 10000) c10000 = acc / n;
    }
    double cmax = std::max({c100, c1000, c10000});
    double cmin = std::min({c100, c1000, c10000});
    CHECK(cmax / cmin <= 2.0);
}

TEST_CASE("twisted partial sums show square-root cancellation") {
    const i64 x = 10000;
    auto t = ramanujan_tau(x);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double cap = 20.0 * std::sqrt(static_cast<double>(x)) * std::log(2.0 * x);
    for (int trial = 0; trial < 100; ++trial) {
        double alpha = unif(rng);
        cplx s{0, 0};
        for (i64 n = 1; n <= x; ++n) s += t(n) * e2pi(alpha * static_cast<double>(n));
        REQUIRE(std::abs(s) <= cap);
    }
}
