#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "wedgehit/common.hpp"
#include "wedgehit/specfun.hpp"

namespace wedgehit {

/// Nodes and weights of a one-dimensional quadrature rule.
struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;
};

namespace detail {

// Symmetric tridiagonal QL with implicit shifts; diagonal d (n), subdiagonal
// e (n-1), z starts as (1,0,..,0) and returns first eigenvector components.
inline void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m = l;
            while (m < n - 1) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 40) throw std::runtime_error("tridiag_ql: no convergence");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // sort ascending, carrying z along
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n), zs(n);
    for (int i = 0; i < n; ++i) {
        ds[i] = d[idx[i]];
        zs[i] = z[idx[i]];
    }
    d = std::move(ds);
    z = std::move(zs);
}

}  // namespace detail

/// n-point Gauss-Jacobi rule: sum w_i f(x_i) ~= int_{-1}^{1} (1-x)^a (1+x)^b f(x) dx,
/// a, b > -1.  Built by Golub-Welsch from the Jacobi recurrence coefficients.
inline Rule1D gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: need n >= 1");
    if (!(a > -1.0) || !(b > -1.0))
        throw std::invalid_argument("gauss_jacobi: need exponents > -1");
    std::vector<double> diag(n), sub(n > 1 ? n - 1 : 0), z(n, 0.0);
    z[0] = 1.0;
    const double ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    for (int j = 1; j < n; ++j) {
        const double t = 2.0 * j + ab;
        diag[j] = (b * b - a * a) / (t * (t + 2.0));
    }
    for (int j = 1; j < n; ++j) {
        double b2;
        if (j == 1)
            b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else {
            const double t = 2.0 * j + ab;
            b2 = 4.0 * j * (j + a) * (j + b) * (j + ab) / (t * t * (t + 1.0) * (t - 1.0));
        }
        sub[j - 1] = std::sqrt(b2);
    }
    detail::tridiag_ql(diag, sub, z);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    Rule1D rule;
    rule.x = diag;
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) rule.w[i] = mu0 * z[i] * z[i];
    return rule;
}

inline Rule1D gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// Rule for int_0^1 t^b (1-t)^a f(t) dt, mapped from the [-1,1] Jacobi rule.
inline Rule1D jacobi01(int n, double b_pow_t, double a_pow_1mt) {
    Rule1D r = gauss_jacobi(n, a_pow_1mt, b_pow_t);
    const double scale = std::pow(2.0, -(a_pow_1mt + b_pow_t + 1.0));
    for (int i = 0; i < n; ++i) {
        r.x[i] = 0.5 * (1.0 + r.x[i]);
        r.w[i] *= scale;
    }
    return r;
}

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
inline constexpr double gk_xk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void gk15(const F& f, double lo, double hi, double& val, double& err) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    const double fc = f(c);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_xk[i];
        const double fsum = f(c - dx) + f(c + dx);
        resk += gk_wk[i] * fsum;
        if (i % 2 == 1) resg += gk_wg[i / 2] * fsum;
    }
    val = resk * h;
    err = std::abs((resk - resg) * h);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f on [lo, hi]: repeatedly bisects
/// the panel with the largest error estimate until the summed estimate is
/// below max(abs_tol, rel_tol * |integral|) or the panel budget runs out.
template <typename F>
inline Evaluation integrate_adaptive(const F& f, double lo, double hi, double rel_tol = 1e-10,
                                     double abs_tol = 0.0, int max_panels = 4000) {
    struct Panel {
        double lo, hi, val, err;
    };
    std::vector<Panel> panels;
    double v, e;
    detail::gk15(f, lo, hi, v, e);
    panels.push_back({lo, hi, v, e});
    double total_v = v, total_e = e;
    long evals = 15;
    while (static_cast<int>(panels.size()) < max_panels) {
        if (total_e <= std::max(abs_tol, rel_tol * std::abs(total_v))) break;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        Panel p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        Panel a{p.lo, mid, 0, 0}, b{mid, p.hi, 0, 0};
        detail::gk15(f, a.lo, a.hi, a.val, a.err);
        detail::gk15(f, b.lo, b.hi, b.val, b.err);
        evals += 30;
        panels[worst] = a;
        panels.push_back(b);
        total_v = total_e = 0.0;
        for (const Panel& q : panels) {
            total_v += q.val;
            total_e += q.err;
        }
    }
    const bool ok = total_e <= std::max(abs_tol, rel_tol * std::abs(total_v));
    return {total_v, total_e, evals, ok, false};
}

}  // namespace wedgehit
