#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace mlev {

// Compensated (Neumaier) accumulator. Order-independent to ~1 ulp for the
// site sums used by the lattice reference calculations.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    std::size_t max_evals = 2'000'000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evals = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Deterministic: always splits the
// interval with the largest error estimate, ties broken by left endpoint.
// Throws NumericalError if the evaluation budget is exhausted before the
// tolerance is met.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a,
                                double b, const QuadratureOptions& opt = {});

// Spherical Bessel j1(x) = sin(x)/x^2 - cos(x)/x, series-stabilized for
// small |x| so the x -> 0 limit is exact instead of 0/0.
double sph_bessel_j1(double x);

// Inverse standard normal CDF (Wichura's rational approximations),
// |error| < 1e-15 over (0, 1).
double normal_quantile(double p);

// Inverse Student-t CDF.
double student_t_quantile(double p, double dof);

enum class QuantileFamily { normal, student_t };

struct GoldenResult {
    double x = 0.0;
    double fx = 0.0;
};

// Maximize f over [a, b] (a, b > 0) by golden-section search in log x.
// Requires f unimodal on the interval; tol_log is the absolute tolerance
// on log(x).
GoldenResult golden_max_log(const std::function<double(double)>& f, double a,
                            double b, double tol_log = 1e-12);

} // namespace mlev
