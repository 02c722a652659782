#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "wedgehit/common.hpp"
#include "wedgehit/quadrature.hpp"
#include "wedgehit/rng.hpp"
#include "wedgehit/specfun.hpp"

namespace wedgehit {

/// How a simplex integral gets evaluated.
struct QuadratureControl {
    enum class Method { mc, tensor };
    Method method = Method::tensor;
    long samples = 200000;            ///< Monte-Carlo draws
    int degree = 40;                  ///< tensor points per dimension
    std::uint64_t seed = 0x5EEDDA7Aull;

    void validate() const {
        if (method == Method::mc && samples < 100)
            throw std::invalid_argument("QuadratureControl: samples must be >= 100");
        if (method == Method::tensor && degree < 2)
            throw std::invalid_argument("QuadratureControl: degree must be >= 2");
    }
};

/// A point of the standard simplex: u_s >= 0, sum u_s = 1.
struct SimplexPoint {
    std::vector<double> u;
    int dim() const { return static_cast<int>(u.size()); }
};

/// One draw from Dirichlet(beta_1..beta_p) via normalized Gamma variates.
inline void dirichlet_sample_into(std::span<const double> beta, RngStream& rng, SimplexPoint& pt) {
    const std::size_t p = beta.size();
    pt.u.resize(p);
    double tot = 0.0;
    for (std::size_t s = 0; s < p; ++s) {
        pt.u[s] = rng.gamma(beta[s]);
        tot += pt.u[s];
    }
    for (std::size_t s = 0; s < p; ++s) pt.u[s] /= tot;
}

/// Symmetric Dirichlet(k,...,k) draw on the simplex in R^p.
inline SimplexPoint dirichlet_sample(double k, int p, RngStream& rng) {
    if (!(k > 0.0) || p < 2) throw std::domain_error("dirichlet_sample: requires k > 0, p >= 2");
    SimplexPoint pt;
    std::vector<double> beta(static_cast<std::size_t>(p), k);
    dirichlet_sample_into(beta, rng, pt);
    return pt;
}

namespace detail {

[[noreturn]] inline void throw_bad_sample(const SimplexPoint& pt) {
    std::ostringstream os;
    os << "simplex_integrate: integrand not finite at u = (";
    for (int s = 0; s < pt.dim(); ++s) os << (s ? ", " : "") << pt.u[s];
    os << ")";
    throw std::runtime_error(os.str());
}

// Tensor rule via the stick-breaking map u_1 = t_1, u_2 = (1-t_1) t_2, ...,
// u_p = prod (1-t_j).  With weight prod u_s^(beta_s - 1) the Jacobian and
// weight factor into per-axis Jacobi weights t_j^(beta_j - 1) (1-t_j)^(B_j - 1),
// B_j = beta_{j+1} + ... + beta_p, so boundary singularities for beta < 1 are
// absorbed exactly by Gauss-Jacobi nodes.
template <typename F>
double tensor_pass(std::span<const double> beta, F&& f, int degree) {
    const int p = static_cast<int>(beta.size());
    std::vector<Rule1D> rules;
    rules.reserve(p - 1);
    double tail = 0.0;
    for (int j = p - 1; j >= 1; --j) tail += beta[j];
    for (int j = 1; j <= p - 1; ++j) {
        rules.push_back(jacobi01(degree, beta[j - 1] - 1.0, tail - 1.0));
        tail -= beta[j];
    }
    SimplexPoint pt;
    pt.u.resize(p);
    double total = 0.0;
    // odometer over the (p-1)-fold tensor grid
    std::vector<int> idx(p - 1, 0);
    for (;;) {
        double rem = 1.0, w = 1.0;
        for (int j = 0; j < p - 1; ++j) {
            const double t = rules[j].x[idx[j]];
            w *= rules[j].w[idx[j]];
            pt.u[j] = rem * t;
            rem *= 1.0 - t;
        }
        pt.u[p - 1] = rem;
        const double fv = f(static_cast<const SimplexPoint&>(pt));
        if (!std::isfinite(fv)) throw_bad_sample(pt);
        total += w * fv;
        int j = p - 2;
        for (; j >= 0; --j) {
            if (++idx[j] < degree) break;
            idx[j] = 0;
        }
        if (j < 0) break;
    }
    return total;
}

}  // namespace detail

/// Integral over the standard simplex with Dirichlet weight:
///   int_{Sigma_p} prod_s u_s^(beta_s - 1) f(u) du_1..du_{p-1}.
/// Tensor path: stick-breaking Gauss-Jacobi (deterministic); the error
/// estimate is the difference against a half-degree pass.  MC path:
/// prod Gamma(beta_s)/Gamma(sum beta) times the mean of f over
/// Dirichlet(beta) draws, with the standard error reported; per-sample
/// random streams make the result independent of any worker layout.
template <typename F>
Evaluation simplex_integrate_weighted(std::span<const double> beta, F&& f,
                                      const QuadratureControl& ctl) {
    ctl.validate();
    const int p = static_cast<int>(beta.size());
    if (p < 2) throw std::invalid_argument("simplex_integrate_weighted: need p >= 2");
    for (double b : beta)
        if (!(b > 0.0)) throw std::domain_error("simplex_integrate_weighted: exponents must be > 0");

    if (ctl.method == QuadratureControl::Method::tensor) {
        const double full = detail::tensor_pass(beta, f, ctl.degree);
        double err = 0.0;
        if (ctl.degree >= 8) {
            const double coarse = detail::tensor_pass(beta, f, ctl.degree / 2);
            err = std::abs(full - coarse);
        }
        long nodes = 1;
        for (int j = 0; j < p - 1; ++j) nodes *= ctl.degree;
        return {full, err, nodes, true, false};
    }

    // Monte Carlo
    const double log_const =
        std::accumulate(beta.begin(), beta.end(), 0.0,
                        [](double acc, double b) { return acc + std::lgamma(b); }) -
        std::lgamma(std::accumulate(beta.begin(), beta.end(), 0.0));
    const double cnorm = std::exp(log_const);
    KahanSum sum, sumsq;
    SimplexPoint pt;
    for (long i = 0; i < ctl.samples; ++i) {
        RngStream rng(ctl.seed, static_cast<std::uint64_t>(i));
        dirichlet_sample_into(beta, rng, pt);
        const double fv = f(static_cast<const SimplexPoint&>(pt));
        if (!std::isfinite(fv)) detail::throw_bad_sample(pt);
        sum.add(fv);
        sumsq.add(fv * fv);
    }
    const double n = static_cast<double>(ctl.samples);
    const double mean = sum.value() / n;
    const double var = std::max(0.0, sumsq.value() / n - mean * mean);
    const double stderr_mean = std::sqrt(var / n);
    return {cnorm * mean, cnorm * stderr_mean, ctl.samples, true, false};
}

/// Symmetric-weight version: int_{Sigma_p} prod u_s^(k-1) f(u) du.
template <typename F>
Evaluation simplex_integrate(int p, double k, F&& f, const QuadratureControl& ctl) {
    if (p < 2 || !(k > 0.0)) throw std::domain_error("simplex_integrate: requires p >= 2, k > 0");
    std::vector<double> beta(static_cast<std::size_t>(p), k);
    return simplex_integrate_weighted(beta, std::forward<F>(f), ctl);
}

/// Euler-type integral route to the fourth Lauricella function:
///   F_D(a, d_1..d_{p-1}, c = d_1+..+d_p; z)
///     = Gamma(c)/prod Gamma(d_s) int_{Sigma_p} (1 - sum u_s z_s)^(-a) prod u_s^(d_s-1) du,
/// valid as long as the base stays positive on the simplex (true for all
/// z_s < 1, in particular for the analytic continuation to z_s <= -1).
/// Serves as the independent cross-check of the series path.
inline Evaluation lauricella_fd_euler(double a, std::span<const double> d, double d_last,
                                      std::span<const double> z, const QuadratureControl& ctl) {
    const std::size_t nv = d.size();
    if (nv == 0 || z.size() != nv)
        throw std::invalid_argument("lauricella_fd_euler: need matching nonempty d and z");
    double dsum = 0.0;
    for (double ds : d) {
        if (!(ds > 0.0)) throw std::domain_error("lauricella_fd_euler: requires d_s > 0");
        dsum += ds;
    }
    const double dp = d_last - dsum;
    if (!(dp > 0.0))
        throw std::domain_error("lauricella_fd_euler: requires d_p = d_last - sum(d) > 0");
    for (double zs : z)
        if (!(zs < 1.0)) throw std::domain_error("lauricella_fd_euler: requires z_s < 1");

    std::vector<double> beta(d.begin(), d.end());
    beta.push_back(dp);
    std::vector<double> zz(z.begin(), z.end());
    Evaluation ev = simplex_integrate_weighted(
        beta,
        [&](const SimplexPoint& pt) {
            double dot = 0.0;
            for (std::size_t s = 0; s < zz.size(); ++s) dot += pt.u[s] * zz[s];
            return std::pow(1.0 - dot, -a);
        },
        ctl);
    double log_c = std::lgamma(d_last);
    for (double b : beta) log_c -= std::lgamma(b);
    const double c = std::exp(log_c);
    ev.value *= c;
    ev.abs_err_est *= c;
    return ev;
}

}  // namespace wedgehit
