#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "wedgehit/common.hpp"

namespace wedgehit {

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

/// Rising factorial (a)_m = a (a+1) ... (a+m-1); (a)_0 = 1.
inline double pochhammer(double a, int m) {
    if (m < 0) throw std::domain_error("pochhammer: requires m >= 0");
    double prod = 1.0;
    for (int i = 0; i < m; ++i) prod *= a + i;
    return prod;
}

/// ln (a)_m for a > 0, safe for large m.
inline double log_pochhammer(double a, int m) {
    if (m < 0) throw std::domain_error("log_pochhammer: requires m >= 0");
    if (!(a > 0.0)) throw std::domain_error("log_pochhammer: requires a > 0");
    return std::lgamma(a + m) - std::lgamma(a);
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

namespace detail {

// Plain Taylor sum of 1F1(a,c,z); caller guarantees z >= 0 and c off the poles.
inline Evaluation hyp1f1_series(double a, double c, double z, const SeriesControl& ctl) {
    KahanSum sum;
    double term = 1.0;
    sum.add(term);
    TailStop stop(ctl);
    int j = 0;
    for (; j < ctl.n_max; ++j) {
        term *= (a + j) / (c + j) * z / (j + 1);
        sum.add(term);
        if (stop.done(term, sum.value(), j)) {
            return {sum.value(), std::abs(term), j + 2, true, false};
        }
    }
    return {sum.value(), std::abs(term), j + 1, false, false};
}

}  // namespace detail

/// Kummer's confluent hypergeometric 1F1(a, c, z).  Negative arguments are
/// routed through the Kummer transform 1F1(a,c,z) = e^z 1F1(c-a,c,-z) so the
/// summed series always has nonnegative argument.
inline Evaluation hyp1f1(double a, double c, double z, const SeriesControl& ctl = {}) {
    ctl.validate();
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp1f1: c must not be a non-positive integer");
    if (z < 0.0) {
        Evaluation e = detail::hyp1f1_series(c - a, c, -z, ctl);
        const double s = std::exp(z);
        e.value *= s;
        e.abs_err_est *= s;
        e.transform_applied = true;
        return e;
    }
    return detail::hyp1f1_series(a, c, z, ctl);
}

/// Gauss hypergeometric 2F1(a, b, c, z).  Terminating cases (a or b a
/// non-positive integer) are summed exactly for any z.  For z < 0 the
/// Euler transform 2F1(a,b,c;z) = (1-z)^(-a) 2F1(a,c-b,c; z/(z-1)) maps the
/// argument into [0,1); z >= 1 is out of domain.
inline Evaluation hyp2f1(double a, double b, double c, double z, const SeriesControl& ctl = {}) {
    ctl.validate();
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c must not be a non-positive integer");

    const bool a_term = is_nonpositive_integer(a);
    const bool b_term = is_nonpositive_integer(b);
    if (a_term || b_term) {
        int degree = 0;
        if (a_term && b_term)
            degree = static_cast<int>(-std::max(a, b));
        else
            degree = static_cast<int>(a_term ? -a : -b);
        KahanSum sum;
        double term = 1.0;
        sum.add(term);
        for (int j = 0; j < degree; ++j) {
            term *= (a + j) * (b + j) / (c + j) * z / (j + 1);
            sum.add(term);
        }
        return {sum.value(), 0.0, degree + 1, true, false};
    }

    if (z < 0.0) {
        const double w = z / (z - 1.0);  // in (0,1) for any z < 0
        Evaluation e = hyp2f1(a, c - b, c, w, ctl);
        const double s = std::pow(1.0 - z, -a);
        e.value *= s;
        e.abs_err_est *= s;
        e.transform_applied = true;
        return e;
    }
    if (z >= 1.0)
        throw std::domain_error("hyp2f1: series requires z < 1");

    KahanSum sum;
    double term = 1.0;
    sum.add(term);
    TailStop stop(ctl);
    int j = 0;
    for (; j < ctl.n_max; ++j) {
        term *= (a + j) * (b + j) / (c + j) * z / (j + 1);
        sum.add(term);
        if (stop.done(term, sum.value(), j))
            return {sum.value(), std::abs(term), j + 2, true, false};
    }
    return {sum.value(), std::abs(term), j + 1, false, false};
}

/// Gegenbauer polynomials C_0..C_jmax at x via the three-term recurrence
/// j C_j = 2(j+k-1) x C_{j-1} - (j+2k-2) C_{j-2}.
inline std::vector<double> gegenbauer_upto(int jmax, double k, double x) {
    if (jmax < 0) throw std::domain_error("gegenbauer: requires j >= 0");
    if (!(k > 0.0)) throw std::domain_error("gegenbauer: requires parameter k > 0");
    std::vector<double> c(static_cast<std::size_t>(jmax) + 1);
    c[0] = 1.0;
    if (jmax >= 1) c[1] = 2.0 * k * x;
    for (int j = 2; j <= jmax; ++j)
        c[j] = (2.0 * (j + k - 1.0) * x * c[j - 1] - (j + 2.0 * k - 2.0) * c[j - 2]) / j;
    return c;
}

inline double gegenbauer(int j, double k, double x) {
    return gegenbauer_upto(j, k, x).back();
}

/// Parameter pair of a confluent Fox-Wright 1Psi1: terms
/// Gamma(alpha + a_step N) / Gamma(beta + b_step N) * z^N / N!.
struct FoxWrightParams {
    double alpha;
    double a_step;
    double beta;
    double b_step;

    void validate() const {
        if (!(a_step > 0.0) || !(b_step > 0.0))
            throw std::invalid_argument("FoxWrightParams: steps must be > 0");
        if (is_nonpositive_integer(beta))
            throw std::invalid_argument("FoxWrightParams: beta on a Gamma pole");
    }
};

namespace detail {

// 1Psi1 with every term multiplied by exp(log_scale).  Entire in z; term
// magnitudes are assembled in log space so large parameter shifts cannot
// overflow, and signs (from z < 0) are carried separately.
inline Evaluation fox_wright_scaled(const FoxWrightParams& prm, double z, double log_scale,
                                    const SeriesControl& ctl) {
    prm.validate();
    ctl.validate();
    if (z == 0.0) {
        const double v = std::exp(std::lgamma(prm.alpha) - std::lgamma(prm.beta) + log_scale);
        return {v, 0.0, 1, true, false};
    }
    const double lz = std::log(std::abs(z));
    const bool neg = z < 0.0;
    KahanSum sum;
    double term = 0.0;
    TailStop stop(ctl);
    int n = 0;
    for (; n < ctl.n_max; ++n) {
        const double lt = std::lgamma(prm.alpha + prm.a_step * n) -
                          std::lgamma(prm.beta + prm.b_step * n) - std::lgamma(n + 1.0) +
                          n * lz + log_scale;
        term = std::exp(lt);
        if (neg && (n & 1)) term = -term;
        sum.add(term);
        if (stop.done(term, sum.value(), n))
            return {sum.value(), std::abs(term), n + 1, true, false};
    }
    return {sum.value(), std::abs(term), n, false, false};
}

}  // namespace detail

/// Confluent Fox-Wright series 1Psi1[(alpha,a_step),(beta,b_step); z].
inline Evaluation fox_wright_1psi1(const FoxWrightParams& prm, double z,
                                   const SeriesControl& ctl = {}) {
    return detail::fox_wright_scaled(prm, z, 0.0, ctl);
}

/// S(z) = sum_N Gamma((N+n)/2) / ((n k)_N N!) z^N
///      = Gamma(n k) * 1Psi1[((n/2),(1/2)), ((n k),1); z].
inline Evaluation fox_wright_series(int n, double k, double z, const SeriesControl& ctl = {}) {
    if (n < 1 || !(k > 0.0))
        throw std::domain_error("fox_wright_series: requires n >= 1, k > 0");
    const FoxWrightParams prm{0.5 * n, 0.5, n * k, 1.0};
    return detail::fox_wright_scaled(prm, z, std::lgamma(n * k), ctl);
}

/// 1Psi0[(alpha,a_step); z] = sum_N Gamma(alpha + a_step N) z^N / N!,
/// entire for a_step < 1.  With (alpha,a_step) = (n/2,1/2) this is the
/// kernel of the odd-wedge integral representation; it also has the
/// positive integral form 2 int_0^inf t^(2 alpha - 1) exp(-t^2 + z t) dt
/// when a_step = 1/2, which keeps the density integrand manifestly > 0.
inline Evaluation fox_wright_1psi0(double alpha, double a_step, double z,
                                   const SeriesControl& ctl = {}) {
    if (!(alpha > 0.0) || !(a_step > 0.0) || !(a_step < 1.0))
        throw std::domain_error("fox_wright_1psi0: requires alpha > 0, 0 < a_step < 1");
    ctl.validate();
    if (z == 0.0) return {std::tgamma(alpha), 0.0, 1, true, false};
    const double lz = std::log(std::abs(z));
    const bool neg = z < 0.0;
    KahanSum sum;
    double term = 0.0;
    TailStop stop(ctl);
    int n = 0;
    for (; n < ctl.n_max; ++n) {
        term = std::exp(std::lgamma(alpha + a_step * n) - std::lgamma(n + 1.0) + n * lz);
        if (neg && (n & 1)) term = -term;
        sum.add(term);
        if (stop.done(term, sum.value(), n)) return {sum.value(), std::abs(term), n + 1, true, false};
    }
    return {sum.value(), std::abs(term), n, false, false};
}

/// Power-series evaluator with cached coefficients, for kernels that are
/// evaluated at millions of quadrature nodes.  Coefficients are supplied by
/// a generator c(N); evaluation extends the cache lazily and applies the
/// shared stop rule.  The cache makes concurrent eval on a shared instance
/// unsafe; give each thread its own copy.
class SeriesKernel {
public:
    template <typename Gen>
    SeriesKernel(Gen gen, int hard_cap = 1200) : cap_(hard_cap) {
        gen_ = gen;
        coef_.reserve(64);
    }

    /// sum_N c_N z^N with the tolerance of `ctl`.
    Evaluation eval(double z, const SeriesControl& ctl) const {
        KahanSum sum;
        double zn = 1.0, term = 0.0;
        TailStop stop(ctl);
        int n = 0;
        for (; n < ctl.n_max && n < cap_; ++n) {
            if (n == static_cast<int>(coef_.size())) coef_.push_back(gen_(n));
            term = coef_[n] * zn;
            sum.add(term);
            if (stop.done(term, sum.value(), n)) return {sum.value(), std::abs(term), n + 1, true, false};
            zn *= z;
        }
        return {sum.value(), std::abs(term), n, false, false};
    }

private:
    mutable std::vector<double> coef_;
    std::function<double(int)> gen_;
    int cap_;
};

/// Cached-coefficient 1F1(a, c, .) for fixed positive parameters.
inline SeriesKernel make_hyp1f1_kernel(double a, double c) {
    if (!(a > 0.0) || !(c > 0.0))
        throw std::domain_error("make_hyp1f1_kernel: requires a, c > 0");
    const double base = std::lgamma(c) - std::lgamma(a);
    return SeriesKernel([a, c, base](int n) {
        return std::exp(base + std::lgamma(a + n) - std::lgamma(c + n) - std::lgamma(n + 1.0));
    });
}

/// Cached-coefficient kernel sum_N Gamma((N + n)/2) z^N / N!.
inline SeriesKernel make_psi0_kernel(int n) {
    return SeriesKernel([n](int N) {
        return std::exp(std::lgamma(0.5 * (N + n)) - std::lgamma(N + 1.0));
    });
}

/// Fourth Lauricella function
///   F_D(a, d_1..d_{p-1}, d_p; z_1..z_{p-1})
///     = sum_m (a)_{|m|} / (d_p)_{|m|} prod_s (d_s)_{m_s} z_s^{m_s} / m_s! ,
/// summed shell-by-shell in total degree N = |m|.  The per-shell inner sums
/// are built by incremental sequence convolution, so cost grows as N^2
/// rather than with the number of compositions.  Requires |z_s| < 1.
inline Evaluation lauricella_fd(double a, std::span<const double> d, double d_last,
                                std::span<const double> z, const SeriesControl& ctl = {}) {
    ctl.validate();
    const std::size_t nv = d.size();
    if (nv == 0 || z.size() != nv)
        throw std::invalid_argument("lauricella_fd: need matching nonempty d and z");
    if (is_nonpositive_integer(d_last))
        throw std::domain_error("lauricella_fd: d_p must not be a non-positive integer");
    for (double zs : z)
        if (!(std::abs(zs) < 1.0))
            throw std::domain_error("lauricella_fd: series requires all |z_s| < 1");

    // g[s][m] = (d_s)_m z_s^m / m!; conv[s] = g[0] * ... * g[s+1] (prefix convolutions)
    std::vector<std::vector<double>> g(nv), conv(nv > 1 ? nv - 1 : 0);
    for (auto& v : g) v.reserve(64);
    for (auto& v : conv) v.reserve(64);

    KahanSum sum;
    double ratio = 1.0;  // (a)_N / (d_p)_N
    TailStop stop(ctl);
    int n = 0;
    double shell = 0.0;
    for (; n < ctl.n_max; ++n) {
        for (std::size_t s = 0; s < nv; ++s) {
            if (n == 0)
                g[s].push_back(1.0);
            else
                g[s].push_back(g[s][n - 1] * z[s] * (d[s] + n - 1) / n);
        }
        double inner;
        if (nv == 1) {
            inner = g[0][n];
        } else {
            for (std::size_t s = 0; s + 1 < nv; ++s) {
                const std::vector<double>& left = (s == 0) ? g[0] : conv[s - 1];
                double acc = 0.0;
                for (int i = 0; i <= n; ++i) acc += left[i] * g[s + 1][n - i];
                conv[s].push_back(acc);
            }
            inner = conv[nv - 2][n];
        }
        shell = ratio * inner;
        sum.add(shell);
        if (stop.done(shell, sum.value(), n))
            return {sum.value(), std::abs(shell), n + 1, true, false};
        ratio *= (a + n) / (d_last + n);
    }
    return {sum.value(), std::abs(shell), n, false, false};
}

}  // namespace wedgehit
