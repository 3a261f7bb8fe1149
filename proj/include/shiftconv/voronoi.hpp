#pragma once

// Smooth windows, the Bessel-kernel transforms V^{+/-} and W_beta, and
// two-sided numerical verification of the Voronoi identities for r_ell(n)
// and for Hecke eigenvalues, with decay-envelope helpers.

#include <vector>

#include "shiftconv/arith.hpp"
#include "shiftconv/coeffs.hpp"
#include "shiftconv/quadrature.hpp"
#include "shiftconv/special.hpp"

namespace shiftconv {

enum class WindowKind { ThetaBump, PlateauBump };

// C-infinity bump built from exp(-1/t) ramps. ThetaBump is supported on
// [X/2, X] and equals 1 on [X(1/2 + 1/Delta), X(1 - 1/Delta)]; PlateauBump
// is the same bump shifted to [h + X/2, h + X].
struct SmoothWindow {
    WindowKind kind = WindowKind::ThetaBump;
    double X = 1;
    double Delta = 8;
    i64 h = 0;

    double shift() const { return kind == WindowKind::PlateauBump ? static_cast<double>(h) : 0.0; }
    double lo() const { return shift() + X / 2; }
    double hi() const { return shift() + X; }

    double phi(double t) const;       // the normalized bump on [1/2, 1]
    Jet phi_jet(double t) const;      // value and derivatives 1..4 in t
    double value(double x) const { return phi((x - shift()) / X); }
    double derivative(int j, double x) const;  // d^j/dx^j of value, j <= 4
};

SmoothWindow make_window(WindowKind kind, double X, double Delta, i64 h = 0);

struct TransformProfile {
    std::vector<double> y_grid;
    std::vector<cplx> values;
    Branch branch = Branch::Plus;
};

// V_beta^{branch}(y) = int w(x) e(-beta x) H_f^{branch}(4 pi sqrt(x y)) dx.
cplx transform_V(const SmoothWindow& w, double beta, const KernelSpec& spec,
                 double y, QuadTol tol = {1e-8, 1e-12});

// W_beta(y) = int w(x) e(beta x) x^{(ell/2-1)/2} J_{ell/2-1}(4 pi sqrt(xy)) dx.
cplx transform_W(const SmoothWindow& w, double beta, int ell, double y,
                 QuadTol tol = {1e-8, 1e-12});

// w~_beta(s) = int w(x) e(beta x) x^{s-1} dx.
cplx mellin_w(const SmoothWindow& w, double beta, double s);

TransformProfile profile_transform_V(const SmoothWindow& w, double beta,
                                     const KernelSpec& spec,
                                     const std::vector<double>& y_grid);

// Decay envelopes used by property tests and as sanity rails.
double envelope_V(double y, double Y, int j, double two_im_mu = 0.0);
double envelope_W(double s, double y, double Y, double Delta, int j);
double envelope_W_min(int ell, double X, double n, double q);

struct VoronoiResult {
    i64 a = 0, q = 1;
    cplx lhs{0, 0}, rhs{0, 0}, main_term{0, 0};
    double relerr = 0;
    i64 dual_terms = 0;
};

struct VoronoiOptions {
    double stop_rel = 1e-11;  // dual-term threshold relative to the main scale
    i64 n_cap = 1'000'000;
};

// Two-sided check of the Voronoi identity for r_ell twisted by e(an/q),
// for all a coprime to q (they share one dual-transform profile).
// Supported moduli: odd q and q = 0 (mod 4); q = 2 (mod 4) is rejected.
std::vector<VoronoiResult> verify_voronoi_r_all(const ReprTable& r, i64 q,
                                                const SmoothWindow& w,
                                                VoronoiOptions opts = {});
VoronoiResult verify_voronoi_r(const ReprTable& r, i64 a, i64 q,
                               const SmoothWindow& w, VoronoiOptions opts = {});

// Two-sided check of the cusp-form Voronoi identity for a level-1 table.
// Holomorphic forms verify exactly; Maass tables need omega_f metadata for
// the minus branch and are otherwise reported plus-branch-only.
std::vector<VoronoiResult> verify_voronoi_f_all(const CoefficientTable& t, i64 q,
                                                const SmoothWindow& w,
                                                VoronoiOptions opts = {});
VoronoiResult verify_voronoi_f(const CoefficientTable& t, i64 a, i64 q,
                               const SmoothWindow& w, VoronoiOptions opts = {});

}  // namespace shiftconv
