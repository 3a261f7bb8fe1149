#include "shiftconv/shifted.hpp"

#include <cmath>

#include "shiftconv/special.hpp"

namespace shiftconv {

double shifted_sum_direct(const ReprTable& r, const CoefficientTable& lam,
                          i64 h, double X) {
    if (h < 0) throw std::invalid_argument("shifted_sum: h >= 0");
    i64 N = static_cast<i64>(std::floor(X));
    if (N < 1) return 0.0;
    if (N > r.n_max() || N + h > lam.n_max())
        throw std::invalid_argument("shifted_sum: tables too short for X + h");
    double s = 0;
    for (i64 n = 1; n <= N; ++n)
        if (r[n]) s += lam(n + h) * static_cast<double>(r[n]);
    return s;
}

SmoothedSum shifted_sum_smoothed(const ReprTable& r, const CoefficientTable& lam,
                                 i64 h, double X, double Delta) {
    SmoothedSum out;
    SmoothWindow w = make_window(WindowKind::ThetaBump, X, Delta);
    i64 N = static_cast<i64>(std::floor(X));
    if (N > r.n_max() || N + h > lam.n_max())
        throw std::invalid_argument("shifted_sum: tables too short for X + h");
    i64 lo = static_cast<i64>(std::floor(X / 2));
    double edge_max = 0;
    i64 edge_count = 0;
    for (i64 n = lo; n <= N; ++n) {
        if (n <= X / 2) continue;
        double term = (r[n] != 0) ? lam(n + h) * static_cast<double>(r[n]) : 0.0;
        double phi = w.value(static_cast<double>(n));
        out.value += term * phi;
        out.sharp_half += term;
        if (phi < 1.0) {
            ++edge_count;
            edge_max = std::max(edge_max, std::abs(term));
        }
    }
    out.gap = out.sharp_half - out.value;
    out.gap_bound = static_cast<double>(edge_count) * edge_max;
    return out;
}

Reconstruction circle_reconstruction(const CoefficientTable& lam, i64 h,
                                     double X, double Delta, double tol_rel) {
    if (h < 1) throw std::invalid_argument("circle_reconstruction: h >= 1");
    if (X > 1e4) throw std::invalid_argument("circle_reconstruction: X <= 1e4 (runtime guard)");
    ReprTable r2 = repr_count(2, static_cast<i64>(std::floor(X)));
    Reconstruction out;
    SmoothedSum sm = shifted_sum_smoothed(r2, lam, h, X, Delta);
    out.direct = sm.value;

    // precompute the nonzero window terms of G once
    SmoothWindow w = make_window(WindowKind::ThetaBump, X, Delta);
    i64 lo = static_cast<i64>(std::floor(X / 2)) + 1;
    i64 hi = static_cast<i64>(std::floor(X));
    std::vector<double> coef(static_cast<std::size_t>(hi - lo + 1));
    for (i64 n = lo; n <= hi; ++n)
        coef[static_cast<std::size_t>(n - lo)] =
            lam(n + h) * w.value(static_cast<double>(n));

    auto G = [&](double alpha) -> cplx {
        cplx s{0, 0};
        for (i64 n = lo; n <= hi; ++n) {
            double c = coef[static_cast<std::size_t>(n - lo)];
            if (c != 0.0) s += c * e2pi(-alpha * static_cast<double>(n));
        }
        return s;
    };

    i64 Q = static_cast<i64>(std::floor(5.0 * std::sqrt(X)));
    auto arcs = farey_dissect(Q);
    out.arcs = static_cast<long>(arcs.size());
    auto integrand = [&](i64 a, i64 q, double beta) -> cplx {
        double alpha = static_cast<double>(a) / static_cast<double>(q) + beta;
        cplx F = theta_sum_F_arc(a, q, beta, X);
        return F * F * G(alpha);
    };
    double scale = std::max(std::abs(out.direct), std::sqrt(X));
    auto res = major_arc_quadrature(arcs, integrand,
                                    {tol_rel * 1e-2, tol_rel * 1e-2 * scale});
    out.arcs_failed = res.arcs_failed;
    out.reconstructed = res.total.real();
    out.imag_residual = std::abs(res.total.imag());
    out.relerr = std::abs(out.direct - out.reconstructed) /
                 std::max(std::abs(out.direct), 1e-300);
    return out;
}

double theorem1_exponent(int ell, double theta) {
    return 0.5 * ell - (ell - 1 - 2 * theta) / 12.0;
}

double corollary1_exponent(double theta) {
    return 1.0 - (1.0 - 4.0 * theta) / 8.0;
}

std::vector<ExponentFit> exponent_fit(const ReprTable& r,
                                      const CoefficientTable& lam,
                                      const std::vector<double>& X_values,
                                      const std::vector<i64>& h_values) {
    if (X_values.size() < 4)
        throw std::invalid_argument("exponent_fit: need >= 4 X values");
    double span = std::log10(X_values.back() / X_values.front());
    if (span < 1.5)
        throw std::invalid_argument("exponent_fit: X values must span >= 1.5 decades");

    constexpr int SAMPLES = 9;  // dyadic window [X/2, X], log-spaced
    std::vector<ExponentFit> fits;
    for (i64 h : h_values) {
        ExponentFit f;
        f.h = h;
        f.theorem_exponent = theorem1_exponent(r.ell, lam.spec.theta);
        for (double X : X_values) {
            double ss = 0;
            for (int j = 0; j < SAMPLES; ++j) {
                double x = X * std::pow(0.5, 1.0 - static_cast<double>(j) / (SAMPLES - 1));
                double s = shifted_sum_direct(r, lam, h, x);
                ss += s * s;
            }
            double rms = std::sqrt(ss / SAMPLES);
            f.X_values.push_back(X);
            f.rms_values.push_back(rms);
        }
        // least squares on (log X, log rms)
        std::size_t m = f.X_values.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (f.rms_values[i] <= 0)
                throw std::runtime_error("exponent_fit: vanishing sums, cannot fit");
            double xl = std::log(f.X_values[i]), yl = std::log(f.rms_values[i]);
            sx += xl; sy += yl; sxx += xl * xl; sxy += xl * yl;
        }
        double dm = m * sxx - sx * sx;
        f.slope = (m * sxy - sx * sy) / dm;
        f.intercept = (sy * sxx - sx * sxy) / dm;
        double rss = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double pred = f.intercept + f.slope * std::log(f.X_values[i]);
            double e = std::log(f.rms_values[i]) - pred;
            rss += e * e;
        }
        f.residual = std::sqrt(rss / m);
        fits.push_back(std::move(f));
    }
    return fits;
}

}  // namespace shiftconv
