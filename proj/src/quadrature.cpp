#include "shiftconv/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace shiftconv {

namespace {

// G7/K15 nodes and weights (QUADPACK constants).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEst {
    cplx value;
    double err;
};

PanelEst gk15(const std::function<cplx(double)>& f, double a, double b,
              long& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fc = f(c);
    cplx resk = wgk[7] * fc;
    cplx resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double dx = h * xgk[j];
        cplx f1 = f(c - dx), f2 = f(c + dx);
        resk += wgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    evals += 15;
    PanelEst e;
    e.value = resk * h;
    e.err = std::abs(resk - resg) * h;
    // sharpen the raw difference the way QUADPACK does
    double scale = std::abs(e.value) + 1e-300;
    double r = e.err / scale;
    e.err = scale * std::min(1.0, std::pow(200.0 * r, 1.5));
    return e;
}

struct Panel {
    double a, b;
    cplx value;
    double err;
};

QuadResult adapt(const std::function<cplx(double)>& f,
                 std::vector<Panel> work, QuadTol tol, int max_panels) {
    QuadResult res;
    cplx total{0, 0};
    double toterr = 0;
    for (auto& p : work) {
        auto e = gk15(f, p.a, p.b, res.evals);
        p.value = e.value;
        p.err = e.err;
        total += p.value;
        toterr += p.err;
    }
    auto worst = [&]() {
        std::size_t k = 0;
        for (std::size_t i = 1; i < work.size(); ++i)
            if (work[i].err > work[k].err) k = i;
        return k;
    };
    while (static_cast<int>(work.size()) < max_panels) {
        double goal = std::max(tol.abs, tol.rel * std::abs(total));
        if (toterr <= goal) break;
        std::size_t k = worst();
        Panel p = work[k];
        if (p.b - p.a < 1e-15 * (std::abs(p.a) + std::abs(p.b) + 1.0)) break;
        double m = 0.5 * (p.a + p.b);
        total -= p.value;
        toterr -= p.err;
        auto e1 = gk15(f, p.a, m, res.evals);
        auto e2 = gk15(f, m, p.b, res.evals);
        work[k] = {p.a, m, e1.value, e1.err};
        work.push_back({m, p.b, e2.value, e2.err});
        total += e1.value + e2.value;
        toterr += e1.err + e2.err;
    }
    res.value = total;
    res.err_est = toterr;
    res.converged = toterr <= std::max(tol.abs, tol.rel * std::abs(total)) * 1.001
                    || toterr <= tol.abs;
    return res;
}

}  // namespace

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     QuadTol tol, int max_depth) {
    if (a == b) return {};
    std::vector<Panel> init{{a, b, {0, 0}, 0}};
    return adapt(f, std::move(init), tol, 1 << std::min(max_depth, 14));
}

QuadResult integrate_breakpoints(const std::function<cplx(double)>& f,
                                 const std::vector<double>& pts, QuadTol tol) {
    if (pts.size() < 2) return {};
    std::vector<Panel> init;
    init.reserve(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] > pts[i]) init.push_back({pts[i], pts[i + 1], {0, 0}, 0});
    }
    if (init.empty()) return {};
    int max_panels = static_cast<int>(init.size()) * 8 + 4096;
    return adapt(f, std::move(init), tol, max_panels);
}

std::vector<double> phase_breakpoints(double a, double b, double total_turns) {
    int n = static_cast<int>(std::ceil(2.0 * std::abs(total_turns))) + 2;
    n = std::min(n, 400000);
    std::vector<double> pts(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        pts[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
    return pts;
}

// ---------------------------------------------------------------------------
// Filon rule: degree-6 polynomial fit of B on Chebyshev nodes per panel,
// then exact moments  M_k(sigma) = int_{-1}^{1} t^k e^{i sigma t} dt.
// The moment recurrence M_k = B_k - (k/(i sigma)) M_{k-1} is forward-stable
// for |sigma| > k, which is guaranteed because small-|sigma| panels take the
// Gauss-Kronrod route instead.
// ---------------------------------------------------------------------------

namespace {

constexpr int FILON_DEG = 6;
constexpr int FILON_PTS = FILON_DEG + 1;

// Chebyshev nodes on [-1,1] and the inverse Vandermonde mapping values at
// the nodes to monomial coefficients. Built once.
struct FilonBasis {
    double nodes[FILON_PTS];
    double inv[FILON_PTS][FILON_PTS];  // coeff_k = sum_j inv[k][j] * f(node_j)

    FilonBasis() {
        for (int j = 0; j < FILON_PTS; ++j)
            nodes[j] = std::cos(PI * j / FILON_DEG);
        // invert the Vandermonde V[j][k] = nodes[j]^k by Gauss-Jordan
        double m[FILON_PTS][2 * FILON_PTS];
        for (int j = 0; j < FILON_PTS; ++j) {
            double p = 1;
            for (int k = 0; k < FILON_PTS; ++k) {
                m[j][k] = p;
                p *= nodes[j];
            }
            for (int k = 0; k < FILON_PTS; ++k)
                m[j][FILON_PTS + k] = (j == k) ? 1.0 : 0.0;
        }
        for (int col = 0; col < FILON_PTS; ++col) {
            int piv = col;
            for (int r = col + 1; r < FILON_PTS; ++r)
                if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
            for (int k = 0; k < 2 * FILON_PTS; ++k) std::swap(m[piv][k], m[col][k]);
            double d = m[col][col];
            for (int k = 0; k < 2 * FILON_PTS; ++k) m[col][k] /= d;
            for (int r = 0; r < FILON_PTS; ++r) {
                if (r == col) continue;
                double fkt = m[r][col];
                for (int k = 0; k < 2 * FILON_PTS; ++k) m[r][k] -= fkt * m[col][k];
            }
        }
        // inv maps values (indexed j) to coefficients (indexed k):
        // coeff = V^{-1} * values, and V^{-1}[k][j] = m[k][FILON_PTS + j]
        for (int k = 0; k < FILON_PTS; ++k)
            for (int j = 0; j < FILON_PTS; ++j) inv[k][j] = m[k][FILON_PTS + j];
    }
};

const FilonBasis& filon_basis() {
    static FilonBasis b;
    return b;
}

void filon_moments(double sigma, cplx M[FILON_PTS]) {
    if (std::abs(sigma) < 5.0) {
        // Taylor series in sigma: M_k = sum_j (i sigma)^j / j! *
        // (1 - (-1)^{k+j+1}) / (k+j+1)
        for (int k = 0; k < FILON_PTS; ++k) {
            cplx acc{0, 0};
            cplx pw{1, 0};
            const cplx is{0, sigma};
            for (int j = 0; j < 40; ++j) {
                if ((k + j) % 2 == 0) acc += pw * (2.0 / (k + j + 1));
                pw *= is / static_cast<double>(j + 1);
                if (std::abs(pw) < 1e-20) break;
            }
            M[k] = acc;
        }
        return;
    }
    const cplx eip = cplx(std::cos(sigma), std::sin(sigma));
    const cplx eim = std::conj(eip);
    const cplx is = cplx(0, sigma);
    M[0] = 2.0 * std::sin(sigma) / sigma;
    for (int k = 1; k < FILON_PTS; ++k) {
        // boundary term: [t^k e^{i sigma t}/(i sigma)]_{-1}^{1}
        cplx bk = (eip - ((k % 2 == 0) ? eim : -eim)) / is;
        M[k] = bk - (static_cast<double>(k) / is) * M[k - 1];
    }
}

// Single-panel Filon estimate of int_a^b B(u) e^{i omega u} du.
cplx filon_panel(const std::function<cplx(double)>& B, double a, double b,
                 double omega, long& evals) {
    const FilonBasis& fb = filon_basis();
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    const double sigma = omega * r;
    cplx vals[FILON_PTS];
    for (int j = 0; j < FILON_PTS; ++j) vals[j] = B(c + r * fb.nodes[j]);
    evals += FILON_PTS;
    cplx coef[FILON_PTS];
    for (int k = 0; k < FILON_PTS; ++k) {
        cplx s{0, 0};
        for (int j = 0; j < FILON_PTS; ++j) s += fb.inv[k][j] * vals[j];
        coef[k] = s;
    }
    cplx M[FILON_PTS];
    filon_moments(sigma, M);
    cplx s{0, 0};
    for (int k = 0; k < FILON_PTS; ++k) s += coef[k] * M[k];
    return r * e2pi(omega * c / (2 * PI)) * s;
}

}  // namespace

QuadResult integrate_filon(const std::function<cplx(double)>& B, double a,
                           double b, double omega, QuadTol tol) {
    QuadResult res;
    if (!(b > a)) return res;
    // Panels small enough that the oscillation is mild go through GK.
    const double gk_sigma = 10.0;

    struct FPanel {
        double a, b;
        cplx value;
        double err;
    };
    auto estimate = [&](double pa, double pb) -> FPanel {
        double sigma = std::abs(omega) * 0.5 * (pb - pa);
        if (sigma < gk_sigma) {
            auto g = gk15([&](double u) {
                return B(u) * e2pi(omega * u / (2 * PI));
            }, pa, pb, res.evals);
            return {pa, pb, g.value, g.err};
        }
        cplx one = filon_panel(B, pa, pb, omega, res.evals);
        double m = 0.5 * (pa + pb);
        cplx two = filon_panel(B, pa, m, omega, res.evals) +
                   filon_panel(B, m, pb, omega, res.evals);
        return {pa, pb, two, std::abs(two - one)};
    };

    std::vector<FPanel> work;
    work.push_back(estimate(a, b));
    cplx total = work[0].value;
    double toterr = work[0].err;
    const int max_panels = 4000;
    while (static_cast<int>(work.size()) < max_panels) {
        double goal = std::max(tol.abs, tol.rel * std::abs(total));
        if (toterr <= goal) break;
        std::size_t k = 0;
        for (std::size_t i = 1; i < work.size(); ++i)
            if (work[i].err > work[k].err) k = i;
        FPanel p = work[k];
        if (p.b - p.a < 1e-14 * (std::abs(a) + std::abs(b) + 1.0)) break;
        total -= p.value;
        toterr -= p.err;
        double m = 0.5 * (p.a + p.b);
        FPanel p1 = estimate(p.a, m), p2 = estimate(m, p.b);
        work[k] = p1;
        work.push_back(p2);
        total += p1.value + p2.value;
        toterr += p1.err + p2.err;
    }
    res.value = total;
    res.err_est = toterr;
    res.converged = toterr <= std::max(tol.abs, tol.rel * std::abs(total)) * 1.001;
    return res;
}

namespace filon {

const double* nodes() { return filon_basis().nodes; }

void coeffs_from_values(const cplx* vals, cplx* coef) {
    const FilonBasis& fb = filon_basis();
    for (int k = 0; k < PTS; ++k) {
        cplx s{0, 0};
        for (int j = 0; j < PTS; ++j) s += fb.inv[k][j] * vals[j];
        coef[k] = s;
    }
}

void moments(double sigma, cplx* M) { filon_moments(sigma, M); }

}  // namespace filon

}  // namespace shiftconv
