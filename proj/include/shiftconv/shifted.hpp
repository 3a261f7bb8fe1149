#pragma once

// The headline object: direct and smoothed shifted convolution sums
// S_h(X) = sum_{n <= X} lambda(n+h) r_ell(n), their circle-method
// reconstruction through the Farey dissection, and growth-exponent fits.

#include <vector>

#include "shiftconv/arith.hpp"
#include "shiftconv/circle.hpp"
#include "shiftconv/coeffs.hpp"
#include "shiftconv/voronoi.hpp"

namespace shiftconv {

// sum_{n <= X} lambda(n+h) r_ell(n); the table must cover n <= X + h.
double shifted_sum_direct(const ReprTable& r, const CoefficientTable& lam,
                          i64 h, double X);

struct SmoothedSum {
    double value = 0;        // sum lambda(n+h) r(n) phi(n/X)
    double sharp_half = 0;   // sum over X/2 < n <= X of lambda(n+h) r(n)
    double gap = 0;          // sharp_half - value
    double gap_bound = 0;    // (# edge-band integers) * max |lambda r| there
};

// Smoothed sum with the ThetaBump window of sharpness Delta, plus the
// sharp-vs-smooth gap and its triangle-inequality bound.
SmoothedSum shifted_sum_smoothed(const ReprTable& r, const CoefficientTable& lam,
                                 i64 h, double X, double Delta);

struct Reconstruction {
    double direct = 0;         // smoothed sum, evaluated termwise
    double reconstructed = 0;  // Re of the arc-integrated F^2 G
    double imag_residual = 0;  // |Im| of the arc integral (should vanish)
    double relerr = 0;
    long arcs = 0;
    long arcs_failed = 0;
};

// ell = 2 circle-method reconstruction: integrates F(alpha)^2 G(alpha) over
// the Farey dissection of order Q = floor(5 sqrt X) and compares with the
// directly evaluated smoothed sum. Table must cover n <= X + h.
Reconstruction circle_reconstruction(const CoefficientTable& lam, i64 h,
                                     double X, double Delta,
                                     double tol_rel = 1e-6);

struct ExponentFit {
    i64 h = 0;
    double slope = 0;
    double intercept = 0;
    double residual = 0;          // rms residual of the least-squares fit
    double theorem_exponent = 0;  // ell/2 - (ell - 1 - 2 theta)/12
    std::vector<double> X_values;
    std::vector<double> rms_values;  // dyadic-window rms of S_h at each X
};

// Least-squares slope of log(rms |S_h|) against log X, with the rms taken
// over a dyadic sample window [X/2, X] to damp sign oscillation.
// Needs >= 4 X values spanning >= 1.5 decades.
std::vector<ExponentFit> exponent_fit(const ReprTable& r,
                                      const CoefficientTable& lam,
                                      const std::vector<double>& X_values,
                                      const std::vector<i64>& h_values);

double theorem1_exponent(int ell, double theta);
double corollary1_exponent(double theta);

}  // namespace shiftconv
