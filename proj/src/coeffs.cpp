#include "shiftconv/coeffs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "shiftconv/arith.hpp"

namespace shiftconv {

std::vector<i128> ramanujan_tau_raw(i64 n_max) {
    if (n_max < 1 || n_max > 10'000'000)
        throw std::invalid_argument("ramanujan_tau: n_max out of range [1, 1e7]");

    // Euler: prod_{m>=1} (1 - q^m) = sum_k (-1)^k q^{k(3k-1)/2} over all k.
    const i64 N = n_max;  // need coefficients of P^24 up to q^{N-1}
    struct Pent { i64 g; int sign; };
    std::vector<Pent> pent;
    for (i64 k = 1;; ++k) {
        i64 g1 = k * (3 * k - 1) / 2;
        i64 g2 = k * (3 * k + 1) / 2;
        int s = (k % 2 == 0) ? 1 : -1;
        if (g1 <= N) pent.push_back({g1, s});
        if (g2 <= N) pent.push_back({g2, s});
        if (g1 > N && g2 > N) break;
    }

    std::vector<i128> cur(static_cast<std::size_t>(N), 0), next;
    cur[0] = 1;
    for (const auto& pk : pent) {
        if (pk.g < N) cur[static_cast<std::size_t>(pk.g)] = pk.sign;
    }
    next.assign(cur.size(), 0);
    for (int pass = 1; pass < 24; ++pass) {
        std::copy(cur.begin(), cur.end(), next.begin());
        for (const auto& pk : pent) {
            const std::size_t off = static_cast<std::size_t>(pk.g);
            if (pk.sign > 0) {
                for (std::size_t n = off; n < cur.size(); ++n) next[n] += cur[n - off];
            } else {
                for (std::size_t n = off; n < cur.size(); ++n) next[n] -= cur[n - off];
            }
        }
        cur.swap(next);
    }
    // Delta = q * P(q)^24, so tau(n) is the q^{n-1} coefficient of P^24.
    std::vector<i128> tau(static_cast<std::size_t>(N) + 1, 0);
    for (i64 n = 1; n <= N; ++n) tau[static_cast<std::size_t>(n)] = cur[static_cast<std::size_t>(n - 1)];
    return tau;
}

CoefficientTable ramanujan_tau(i64 n_max) {
    auto tau = ramanujan_tau_raw(n_max);
    CoefficientTable t;
    t.spec.kind = FormKind::Holomorphic;
    t.spec.weight = 12;
    t.spec.level = 1;
    t.lam.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (i64 n = 1; n <= n_max; ++n) {
        double norm = std::pow(static_cast<double>(n), 5.5);
        t.lam[static_cast<std::size_t>(n)] =
            static_cast<double>(tau[static_cast<std::size_t>(n)]) / norm;
    }
    return t;
}

ValidationReport check_hecke_relations(const CoefficientTable& table, double tol) {
    ValidationReport rep;
    const i64 N = table.n_max();
    if (N < 1) return rep;

    if (std::abs(table(1) - 1.0) > tol)
        rep.hecke.push_back({1, 1, 1.0, table(1)});

    // prime-power recurrence
    for (i64 p = 2; p <= N; ++p) {
        if (!is_prime(p)) continue;
        i64 pk = p;  // p^k
        while (pk <= N / p) {
            i64 pk1 = pk * p;
            double prev = (pk == p) ? 1.0 : table(pk / p);
            double expect = table(p) * table(pk) - prev;
            double got = table(pk1);
            if (std::abs(expect - got) > tol)
                rep.hecke.push_back({p, pk, expect, got});
            pk = pk1;
        }
    }
    // coprime multiplicativity
    for (i64 m = 2; m * m <= N; ++m) {
        for (i64 n = m + 1; m * n <= N; ++n) {
            if (std::gcd(m, n) != 1) continue;
            double expect = table(m) * table(n);
            double got = table(m * n);
            if (std::abs(expect - got) > tol)
                rep.hecke.push_back({m, n, expect, got});
        }
    }
    return rep;
}

namespace {

void validate_bound(LoadedTable& lt) {
    const i64 N = lt.table.n_max();
    auto d = divisor_count_table(N);
    for (i64 n = 1; n <= N; ++n) {
        double cap = static_cast<double>(d[static_cast<std::size_t>(n)]) *
                     std::pow(static_cast<double>(n), lt.table.spec.theta);
        if (std::abs(lt.table(n)) > cap + 1e-9)
            lt.report.bound_violations.push_back(n);
    }
}

}  // namespace

LoadedTable load_coefficients(const std::string& path, FormSpec defaults) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient file: " + path);

    LoadedTable lt;
    lt.table.spec = defaults;
    lt.table.lam.assign(1, 0.0);
    double omega_re = 0, omega_im = 0;
    bool has_omega = false;

    std::string line;
    i64 expected_n = 1;
    i64 lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            std::istringstream meta(line.substr(start + 1));
            std::string key;
            if (!(meta >> key)) continue;
            std::string val;
            meta >> val;
            if (key == "kind") {
                if (val == "holomorphic") lt.table.spec.kind = FormKind::Holomorphic;
                else if (val == "maass") lt.table.spec.kind = FormKind::Maass;
            } else if (key == "weight") lt.table.spec.weight = std::stoi(val);
            else if (key == "level") lt.table.spec.level = std::stoll(val);
            else if (key == "mu") lt.table.spec.spectral_mu = std::stod(val);
            else if (key == "theta") lt.table.spec.theta = std::stod(val);
            else if (key == "omega_re") { omega_re = std::stod(val); has_omega = true; }
            else if (key == "omega_im") { omega_im = std::stod(val); has_omega = true; }
            continue;
        }
        std::istringstream rec(line.substr(start));
        i64 n;
        double lam;
        if (!(rec >> n >> lam))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed record");
        if (n != expected_n)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": gap in n sequence (expected n=" +
                                     std::to_string(expected_n) + ", got " +
                                     std::to_string(n) + ")");
        lt.table.lam.push_back(lam);
        ++expected_n;
    }
    if (lt.table.n_max() < 1)
        throw std::runtime_error(path + ": no coefficient records");
    if (has_omega) lt.table.spec.omega_f = cplx(omega_re, omega_im);
    if (lt.table.spec.kind == FormKind::Holomorphic) lt.table.spec.spectral_mu = 0.0;

    lt.report.hecke = check_hecke_relations(lt.table).hecke;
    validate_bound(lt);
    return lt;
}

void write_coefficients(const CoefficientTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write coefficient file: " + path);
    out << "# kind " << (table.spec.kind == FormKind::Holomorphic ? "holomorphic" : "maass")
        << "\n# weight " << table.spec.weight
        << "\n# level " << table.spec.level
        << "\n# mu " << table.spec.spectral_mu
        << "\n# theta " << table.spec.theta << "\n";
    char buf[64];
    for (i64 n = 1; n <= table.n_max(); ++n) {
        std::snprintf(buf, sizeof buf, "%lld %.17g\n",
                      static_cast<long long>(n), table(n));
        out << buf;
    }
}

}  // namespace shiftconv
