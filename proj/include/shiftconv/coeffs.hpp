#pragma once

// Normalized Hecke eigenvalues lambda_f(n): native computation for the
// level-1 weight-12 form via the eta-product expansion of tau(n), plus a
// text loader for user-supplied coefficient tables (including Maass data),
// with Hecke-relation and Ramanujan-bound validation.

#include <optional>
#include <string>
#include <vector>

#include "shiftconv/util.hpp"

namespace shiftconv {

enum class FormKind { Holomorphic, Maass };

struct FormSpec {
    FormKind kind = FormKind::Holomorphic;
    int weight = 12;
    i64 level = 1;
    double spectral_mu = 0.0;      // Maass only; 0 for holomorphic
    double theta = 7.0 / 64.0;     // assumed individual-coefficient exponent
    std::optional<cplx> omega_f;   // Maass Voronoi constant, when supplied
};

struct CoefficientTable {
    FormSpec spec;
    std::vector<double> lam;  // lam[n] = lambda(n), n = 1..n_max; lam[0] unused

    i64 n_max() const { return static_cast<i64>(lam.size()) - 1; }
    double operator()(i64 n) const { return lam[static_cast<std::size_t>(n)]; }
};

// tau(n) for n = 1..n_max, exact in 128-bit integers, by 24 successive
// multiplications of the pentagonal-number series of prod (1 - q^m).
// result[n] = tau(n), result[0] = 0.
std::vector<i128> ramanujan_tau_raw(i64 n_max);

// The table lambda(n) = tau(n) / n^{11/2} (Deligne normalization).
CoefficientTable ramanujan_tau(i64 n_max);

struct HeckeViolation {
    i64 m = 0, n = 0;  // lambda(m)*lambda(n) vs the Hecke-predicted value
    double expected = 0, got = 0;
};

struct ValidationReport {
    std::vector<HeckeViolation> hecke;     // recurrence + multiplicativity
    std::vector<i64> bound_violations;     // |lambda(n)| > d(n) * n^theta
    bool ok() const { return hecke.empty() && bound_violations.empty(); }
};

// Level-1 Hecke checks: lambda(p)lambda(p^k) = lambda(p^{k+1}) +
// lambda(p^{k-1}) and coprime multiplicativity, absolute tolerance tol.
ValidationReport check_hecke_relations(const CoefficientTable& table,
                                       double tol = 1e-9);

struct LoadedTable {
    CoefficientTable table;
    ValidationReport report;  // attached, non-fatal
};

// Text format: '#'-prefixed metadata lines (kind, weight, level, mu, theta,
// omega_re, omega_im), then one "n lambda" record per line with n strictly
// increasing from 1 and no gaps. Parse errors carry the line number.
LoadedTable load_coefficients(const std::string& path, FormSpec defaults = {});

void write_coefficients(const CoefficientTable& table, const std::string& path);

}  // namespace shiftconv
