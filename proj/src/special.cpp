#include "shiftconv/special.hpp"

#include <cmath>

#include "shiftconv/expsums.hpp"
#include "shiftconv/quadrature.hpp"

namespace shiftconv {

cplx kernel_H(const KernelSpec& spec, double x) {
    if (!(x > 0)) throw std::domain_error("kernel_H: need x > 0");
    const FormSpec& f = spec.form;
    if (f.kind == FormKind::Holomorphic) {
        if (spec.branch == Branch::Minus) return {0, 0};
        static const cplx ik[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return 2.0 * PI * ik[f.weight % 4] * bessel_j(f.weight - 1, x);
    }
    const double mu = f.spectral_mu;
    if (f.weight % 2 == 0) {
        if (spec.branch == Branch::Plus)
            return {-PI / std::cosh(PI * mu) * bessel_y_imag_pair(2 * mu, x), 0};
        return {4.0 * std::cosh(PI * mu) * bessel_k_imag(2 * mu, x), 0};
    }
    if (mu == 0)
        throw std::domain_error("kernel_H: odd-weight Maass kernel needs mu != 0");
    if (spec.branch == Branch::Plus)
        return cplx{0, PI / std::sinh(PI * mu)} * bessel_y_imag_diff(2 * mu, x);
    return cplx{0, -4.0 * std::sinh(PI * mu)} * bessel_k_imag(2 * mu, x);
}

cplx phi0(double beta, double X) {
    if (!(X > 0)) throw std::domain_error("phi0: need X > 0");
    double sx = std::sqrt(X);
    double turns = std::abs(beta) * X;
    auto pts = phase_breakpoints(0.0, sx, turns);
    auto f = [beta](double x) { return e2pi(beta * x * x); };
    return integrate_breakpoints(f, pts, {1e-10, 1e-13 * sx}).value;
}

cplx theta_sum_F(double alpha, double X) {
    if (!(X > 0)) throw std::domain_error("theta_sum_F: need X > 0");
    i64 m_max = static_cast<i64>(std::floor(std::sqrt(X)));
    cplx s{1, 0};
    for (i64 m = 1; m <= m_max; ++m)
        s += 2.0 * e2pi(alpha * static_cast<double>(m) * static_cast<double>(m));
    return s;
}

cplx theta_sum_F_arc(i64 a, i64 q, double beta, double X) {
    i64 m_max = static_cast<i64>(std::floor(std::sqrt(X)));
    a = mod_floor(a, q);
    cplx s{1, 0};
    for (i64 m = 1; m <= m_max; ++m) {
        i64 m2q = (m % q) * (m % q) % q;
        s += 2.0 * e2pi_ratio(a * m2q, q) *
             e2pi(beta * static_cast<double>(m) * static_cast<double>(m));
    }
    return s;
}

ThetaArcResult theta_major_arc(i64 a, i64 q, double beta, double X) {
    if (q < 1 || std::gcd(mod_floor(a, q) == 0 ? q : mod_floor(a, q), q) != 1)
        throw std::invalid_argument("theta_major_arc: need gcd(a,q) = 1");
    i64 Q = static_cast<i64>(std::floor(5.0 * std::sqrt(X)));
    if (q > Q) throw std::invalid_argument("theta_major_arc: q exceeds 5 sqrt X");
    if (std::abs(beta) > 1.0 / (static_cast<double>(q) * static_cast<double>(Q)) * (1 + 1e-12))
        throw std::invalid_argument("theta_major_arc: |beta| exceeds 1/(qQ)");
    ThetaArcResult r;
    r.approx = 2.0 * gauss_sum(a, 0, q) * phi0(beta, X) / static_cast<double>(q);
    r.actual = theta_sum_F_arc(a, q, beta, X);
    r.residual = std::abs(r.actual - r.approx);
    return r;
}

}  // namespace shiftconv
