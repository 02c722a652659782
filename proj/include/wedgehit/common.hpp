#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wedgehit {

inline constexpr double pi = 3.14159265358979323846;

/// Truncation policy for infinite series.
struct SeriesControl {
    double tol = 1e-12;  ///< relative tolerance on the partial sum
    int n_min = 4;       ///< never stop before this many terms
    int n_max = 600;     ///< hard cap; hitting it clears `converged`

    void validate() const {
        if (!(tol > 0.0))
            throw std::invalid_argument("SeriesControl: tol must be > 0");
        if (n_min < 1 || n_min > n_max)
            throw std::invalid_argument("SeriesControl: need 1 <= n_min <= n_max");
    }
};

/// A numeric result together with an error estimate and convergence flags.
struct Evaluation {
    double value = 0.0;
    double abs_err_est = 0.0;
    long terms_or_samples = 0;
    bool converged = true;
    /// Set when an argument transform (Kummer, Euler 2F1 mapping, analytic
    /// continuation of a series) was applied internally.
    bool transform_applied = false;
};

/// Compensated accumulation; keeps series sums honest when terms span many
/// orders of magnitude.
class KahanSum {
public:
    void add(double x) {
        const double y = x - carry_;
        const double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Stop rule shared by every series in the library: quit once three
/// consecutive terms are below tol * |partial sum|, but not before n_min
/// terms have been added.
class TailStop {
public:
    TailStop(const SeriesControl& ctl) : ctl_(ctl) {}

    /// Feed one term; returns true when summation may stop.
    bool done(double term, double partial_sum, int n) {
        if (std::abs(term) <= ctl_.tol * std::abs(partial_sum))
            ++small_run_;
        else
            small_run_ = 0;
        return n + 1 >= ctl_.n_min && small_run_ >= 3;
    }

private:
    SeriesControl ctl_;
    int small_run_ = 0;
};

}  // namespace wedgehit
