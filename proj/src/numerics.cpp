#include "mlev/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "mlev/errors.hpp"

namespace mlev {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half; node 7 is 0).
// Odd-index nodes are the embedded Gauss-7 points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        const double sum = fv[j] + fv[14 - j];
        resk += kWgk[j] * sum;
        if (j % 2 == 1)
            resg += kWg[j / 2] * sum;
    }

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
    resasc *= std::abs(half);

    const double value = resk * half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {value, err};
}

struct Panel {
    double error;
    double a;
    double b;
    double value;
    // Worst error first; ties resolved by position so the refinement order
    // (and thus the float result) never depends on container internals.
    bool operator<(const Panel& o) const {
        if (error != o.error)
            return error > o.error;
        return a < o.a;
    }
};

} // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a,
                                double b, const QuadratureOptions& opt) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw ValidationError("quadrature interval must be finite");
    if (a == b)
        return {0.0, 0.0, 0};

    std::multiset<Panel> panels;
    std::size_t evals = 15;
    PanelResult first = gk15_panel(f, a, b);
    panels.insert({first.error, a, b, first.value});

    double total_value = first.value;
    double total_error = first.error;

    while (true) {
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total_value));
        if (total_error <= tol)
            break;
        if (evals + 30 > opt.max_evals)
            throw NumericalError("quadrature evaluation budget exhausted before "
                                 "reaching the requested tolerance");

        Panel worst = *panels.begin();
        panels.erase(panels.begin());
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw NumericalError("quadrature interval can no longer be split; "
                                 "integrand too irregular for the tolerance");

        PanelResult left = gk15_panel(f, worst.a, mid);
        PanelResult right = gk15_panel(f, mid, worst.b);
        evals += 30;
        panels.insert({left.error, worst.a, mid, left.value});
        panels.insert({right.error, mid, worst.b, right.value});
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
    }

    // Re-sum in position order: the incremental totals steer refinement, the
    // reported value comes from one deterministic compensated pass.
    std::vector<Panel> ordered(panels.begin(), panels.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    NeumaierSum value_sum, error_sum;
    for (const Panel& p : ordered) {
        value_sum.add(p.value);
        error_sum.add(p.error);
    }
    return {value_sum.value(), error_sum.value(), evals};
}

double sph_bessel_j1(double x) {
    const double ax = std::abs(x);
    if (ax <= 0.6) {
        // Alternating series, next omitted term < 4e-19 at x = 0.6.
        const double x2 = x * x;
        double term = x / 3.0;
        double acc = term;
        term *= -x2 / 10.0;          // -> -x^3/30
        acc += term;
        term *= -x2 / 28.0;          // -> +x^5/840
        acc += term;
        term *= -x2 / 54.0;          // -> -x^7/45360
        acc += term;
        term *= -x2 / 88.0;          // -> +x^9/3991680
        acc += term;
        term *= -x2 / 130.0;         // -> -x^11/518918400
        acc += term;
        term *= -x2 / 180.0;         // -> +x^13/93405312000
        acc += term;
        return acc;
    }
    return std::sin(x) / (x * x) - std::cos(x) / x;
}

namespace {

double poly7(const double (&c)[8], double r) {
    double acc = c[7];
    for (int i = 6; i >= 0; --i)
        acc = acc * r + c[i];
    return acc;
}

} // namespace

double normal_quantile(double p) {
    // Wichura's PPND16 rational approximations; relative error below 1e-15.
    static constexpr double A[8] = {
        3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4, 2.5090809287301226727e3};
    static constexpr double B[8] = {
        1.0, 4.2313330701600911252e1, 6.8718700749205790830e2,
        5.3941960214247511077e3, 2.1213794301586595867e4, 3.9307895800092710610e4,
        2.8729085735721942674e4, 5.2264952788528545610e3};
    static constexpr double C[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0,
        5.76949722146069140550e0, 3.64784832476320460504e0,
        1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double D[8] = {
        1.0, 2.05319162663775882187e0, 1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1,
        1.51986665636164571966e-2, 5.47593808499534494600e-4,
        1.05075007164441684324e-9};
    static constexpr double E[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0,
        1.78482653991729133580e0, 2.96560571828504891230e-1,
        2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double F[8] = {
        1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4,
        1.84631831751005468180e-5, 1.42151175831644588870e-7,
        2.04426310338993978564e-15};

    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("quantile probability must lie strictly in (0, 1)");

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly7(A, r) / poly7(B, r);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = poly7(C, r) / poly7(D, r);
    } else {
        r -= 5.0;
        val = poly7(E, r) / poly7(F, r);
    }
    return (q < 0.0) ? -val : val;
}

double student_t_quantile(double p, double dof) {
    if (!(p > 0.0 && p < 1.0))
        throw ValidationError("quantile probability must lie strictly in (0, 1)");
    if (!(dof > 0.0))
        throw ValidationError("student-t degrees of freedom must be positive");
    boost::math::students_t_distribution<double> dist(dof);
    return boost::math::quantile(dist, p);
}

GoldenResult golden_max_log(const std::function<double(double)>& f, double a,
                            double b, double tol_log) {
    if (!(a > 0.0 && b > a))
        throw ValidationError("golden-section bracket must satisfy 0 < a < b");

    constexpr double invphi = 0.6180339887498948482;
    double lo = std::log(a), hi = std::log(b);
    double u1 = hi - invphi * (hi - lo);
    double u2 = lo + invphi * (hi - lo);
    double f1 = f(std::exp(u1));
    double f2 = f(std::exp(u2));

    while (hi - lo > tol_log) {
        if (f1 < f2) {
            lo = u1;
            u1 = u2;
            f1 = f2;
            u2 = lo + invphi * (hi - lo);
            f2 = f(std::exp(u2));
        } else {
            hi = u2;
            u2 = u1;
            f2 = f1;
            u1 = hi - invphi * (hi - lo);
            f1 = f(std::exp(u1));
        }
    }
    const double x = std::exp(0.5 * (lo + hi));
    return {x, f(x)};
}

} // namespace mlev
