#include "mlev/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mlev/errors.hpp"

namespace mlev {

namespace {

constexpr double kPi = std::numbers::pi;

double median_of(std::vector<double> v) {
    const std::size_t n = v.size();
    std::sort(v.begin(), v.end());
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

void RingdownSeries::validate() const {
    if (samples.size() < 2)
        throw ValidationError("ringdown series needs at least 2 samples");
    if (!(noise_floor >= 0.0) || !std::isfinite(noise_floor))
        throw ValidationError("ringdown noise_floor must be finite and non-negative");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const RingdownSample& s = samples[i];
        if (!std::isfinite(s.t))
            throw ValidationError("ringdown sample " + std::to_string(i) +
                                  ": time must be finite");
        if (i > 0 && !(s.t > samples[i - 1].t))
            throw ValidationError("ringdown sample " + std::to_string(i) +
                                  ": times must be strictly increasing");
        if (!(s.amplitude >= 0.0) || !std::isfinite(s.amplitude))
            throw ValidationError("ringdown sample " + std::to_string(i) +
                                  ": amplitude must be finite and non-negative");
        if (!(s.sigma > 0.0) || !std::isfinite(s.sigma))
            throw ValidationError("ringdown sample " + std::to_string(i) +
                                  ": sigma must be positive");
    }
}

RingdownFit fit_ringdown(const RingdownSeries& series, const RingdownFitOptions& opt) {
    series.validate();
    const std::size_t n = series.samples.size();
    const double span = series.samples.back().t - series.samples.front().t;
    if (!(span > 0.0))
        throw ValidationError("ringdown series has zero time span");

    std::vector<double> t(n), A(n), sig(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = series.samples[i].t;
        A[i] = series.samples[i].amplitude;
        sig[i] = std::hypot(series.samples[i].sigma, series.noise_floor);
    }

    const double peak = *std::max_element(A.begin(), A.end());
    std::vector<double> raw_sigmas(n);
    for (std::size_t i = 0; i < n; ++i)
        raw_sigmas[i] = series.samples[i].sigma;
    const double noise =
        std::hypot(series.noise_floor, median_of(std::move(raw_sigmas)));
    if (!(peak / noise >= opt.snr_min))
        throw ValidationError("ringdown signal-to-noise ratio " +
                              std::to_string(peak / noise) + " is below " +
                              std::to_string(opt.snr_min));

    // Seed from a weighted straight-line fit to ln A; weights (A/sigma)^2 are
    // the variances of ln A propagated from the amplitude errors.
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(A[i] > 0.0))
            continue;
        const double w = (A[i] / sig[i]) * (A[i] / sig[i]);
        const double y = std::log(A[i]);
        sw += w;
        swx += w * t[i];
        swy += w * y;
        swxx += w * t[i] * t[i];
        swxy += w * t[i] * y;
    }
    const double det = sw * swxx - swx * swx;
    if (!(sw > 0.0) || det == 0.0)
        throw ValidationError("ringdown series has too few positive amplitudes "
                              "to seed a decay fit");
    double k = -(sw * swxy - swx * swy) / det; // decay rate of the amplitude
    double a0 = std::exp((swy * swxx - swx * swxy) / det);
    if (!(k > 0.0))
        k = 1.0 / (opt.tau_cap_factor * span); // start at the flatness edge

    auto chi2_of = [&](double a, double kk) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = (a * std::exp(-kk * t[i]) - A[i]) / sig[i];
            acc += r * r;
        }
        return acc;
    };

    // Levenberg-Marquardt on (A0, k).
    double chi2 = chi2_of(a0, k);
    double mu = 1e-3;
    double h00 = 0, h01 = 0, h11 = 0; // normal matrix at the accepted point
    for (int it = 0; it < opt.max_iterations; ++it) {
        h00 = h01 = h11 = 0;
        double g0 = 0, g1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = std::exp(-k * t[i]);
            const double r = (a0 * e - A[i]) / sig[i];
            const double j0 = e / sig[i];
            const double j1 = -a0 * t[i] * e / sig[i];
            h00 += j0 * j0;
            h01 += j0 * j1;
            h11 += j1 * j1;
            g0 += j0 * r;
            g1 += j1 * r;
        }

        bool moved = false;
        for (int damp = 0; damp < 60; ++damp) {
            const double d00 = h00 * (1.0 + mu);
            const double d11 = h11 * (1.0 + mu);
            const double det2 = d00 * d11 - h01 * h01;
            if (det2 == 0.0) {
                mu *= 2.0;
                continue;
            }
            const double da = (-g0 * d11 + g1 * h01) / det2;
            const double dk = (-g1 * d00 + g0 * h01) / det2;
            const double chi2_try = chi2_of(a0 + da, k + dk);
            if (chi2_try <= chi2) {
                const double step =
                    std::max(std::abs(da) / std::max(std::abs(a0), 1e-300),
                             std::abs(dk) / std::max(std::abs(k), 1e-300));
                a0 += da;
                k += dk;
                const double drop = chi2 - chi2_try;
                chi2 = chi2_try;
                mu = std::max(mu / 3.0, 1e-14);
                moved = true;
                if (step < 1e-13 || drop <= 1e-14 * (chi2 + 1e-300))
                    it = opt.max_iterations; // converged
                break;
            }
            mu *= 2.0;
        }
        if (!moved)
            break; // damping saturated: at a (local) optimum
    }

    if (!(k > 0.0))
        throw ValidationError("ringdown series shows no decay (fitted rate is "
                              "not positive)");

    RingdownFit out;
    const double dof = (n > 2) ? static_cast<double>(n - 2) : 0.0;
    out.chi2_reduced = (dof > 0) ? chi2 / dof : 0.0;

    // Parameter covariance from the undamped normal matrix, rebuilt at the
    // final accepted point.
    h00 = h01 = h11 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(-k * t[i]);
        const double j0 = e / sig[i];
        const double j1 = -a0 * t[i] * e / sig[i];
        h00 += j0 * j0;
        h01 += j0 * j1;
        h11 += j1 * j1;
    }
    const double det2 = h00 * h11 - h01 * h01;
    if (det2 <= 0.0)
        throw NumericalError("ringdown fit normal matrix is singular");
    const double scale = (dof > 0) ? chi2 / dof : 1.0;
    const double var_k = h00 / det2 * scale;

    out.tau = 1.0 / k;
    out.tau_sigma = std::sqrt(var_k) / (k * k);
    out.gamma = 2.0 / out.tau;
    out.gamma_linewidth_hz = out.gamma / (2.0 * kPi);
    out.amplitude0 = a0;

    if (n < 4)
        out.warnings.push_back("fewer than 4 samples: decay fit is weakly "
                               "constrained");
    if (span < 0.3 * out.tau)
        out.warnings.push_back("time span covers less than 0.3 of the fitted "
                               "decay time; tau is an extrapolation");
    if (out.tau > opt.tau_cap_factor * span)
        out.warnings.push_back("fitted decay time exceeds " +
                               std::to_string(opt.tau_cap_factor) +
                               " times the time span; series is consistent "
                               "with flat");
    return out;
}

double epstein_linewidth_hz(double pressure_mbar, const SphereSpec& sphere,
                            const GasSpec& gas, const PhysicalConstants& k) {
    if (!(pressure_mbar >= 0.0) || !std::isfinite(pressure_mbar))
        throw ValidationError("pressure must be finite and non-negative");
    const double v_th =
        std::sqrt(8.0 * k.k_B * gas.temperature / (kPi * gas.molecular_mass));
    const double pressure_pa = pressure_mbar * 100.0;
    return (1.0 / kPi) * (1.0 + 8.0 / kPi) * pressure_pa /
           (sphere.density * sphere.radius * v_th);
}

double thermomolecular_correct(double gauge_pressure_mbar, const GasSpec& gas) {
    if (!(gauge_pressure_mbar >= 0.0) || !std::isfinite(gauge_pressure_mbar))
        throw ValidationError("gauge pressure must be finite and non-negative");
    return gauge_pressure_mbar *
           std::sqrt(gas.temperature / gas.gauge_temperature);
}

void PressureSeries::validate() const {
    if (points.size() < 4)
        throw ValidationError("pressure series needs at least 4 points for a "
                              "quadratic extrapolation");
    if (!(confidence_level > 0.0 && confidence_level < 1.0))
        throw ValidationError("confidence_level must lie strictly in (0, 1)");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const PressurePoint& p = points[i];
        if (!(p.pressure >= 0.0) || !std::isfinite(p.pressure))
            throw ValidationError("pressure point " + std::to_string(i) +
                                  ": pressure must be finite and non-negative");
        if (!std::isfinite(p.linewidth))
            throw ValidationError("pressure point " + std::to_string(i) +
                                  ": linewidth must be finite");
        if (!(p.sigma > 0.0) || !std::isfinite(p.sigma))
            throw ValidationError("pressure point " + std::to_string(i) +
                                  ": sigma must be positive");
    }
}

DampingBound fit_pressure_extrapolation(const PressureSeries& series,
                                        QuantileFamily family) {
    series.validate();
    const std::size_t n = series.points.size();

    std::vector<double> distinct;
    for (const PressurePoint& p : series.points)
        distinct.push_back(p.pressure);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw ValidationError("pressure series is rank deficient: a quadratic "
                              "needs at least 3 distinct pressures, got " +
                              std::to_string(distinct.size()));

    // Working with x = P / Pmax keeps the normal matrix well conditioned.
    const double pmax = distinct.back();
    if (!(pmax > 0.0))
        throw ValidationError("pressure series is rank deficient: all "
                              "pressures are zero");

    double m[3][3] = {};
    double rhs[3] = {};
    for (const PressurePoint& p : series.points) {
        const double x = p.pressure / pmax;
        const double w = 1.0 / (p.sigma * p.sigma);
        const double basis[3] = {1.0, x, x * x};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j)
                m[i][j] += w * basis[i] * basis[j];
            rhs[i] += w * basis[i] * p.linewidth;
        }
    }

    // Cholesky of the 3x3 normal matrix.
    double L[3][3] = {};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m[i][j];
            for (int q = 0; q < j; ++q)
                s -= L[i][q] * L[j][q];
            if (i == j) {
                if (!(s > 0.0))
                    throw NumericalError("pressure fit normal matrix is not "
                                         "positive definite");
                L[i][i] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    auto solve = [&](const double b[3], double out[3]) {
        double y[3];
        for (int i = 0; i < 3; ++i) {
            double s = b[i];
            for (int j = 0; j < i; ++j)
                s -= L[i][j] * y[j];
            y[i] = s / L[i][i];
        }
        for (int i = 2; i >= 0; --i) {
            double s = y[i];
            for (int j = i + 1; j < 3; ++j)
                s -= L[j][i] * out[j];
            out[i] = s / L[i][i];
        }
    };

    double coef[3];
    solve(rhs, coef);

    double inv[3][3];
    for (int col = 0; col < 3; ++col) {
        const double e[3] = {col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0,
                             col == 2 ? 1.0 : 0.0};
        double x[3];
        solve(e, x);
        for (int row = 0; row < 3; ++row)
            inv[row][col] = x[row];
    }

    double chi2 = 0.0;
    for (const PressurePoint& p : series.points) {
        const double x = p.pressure / pmax;
        const double r =
            (coef[0] + coef[1] * x + coef[2] * x * x - p.linewidth) / p.sigma;
        chi2 += r * r;
    }
    const double dof = static_cast<double>(n - 3);
    const double scale = (dof > 0) ? chi2 / dof : 1.0;

    DampingBound out;
    out.confidence_level = series.confidence_level;
    out.chi2_reduced = (dof > 0) ? chi2 / dof : 0.0;
    const double unscale[3] = {1.0, 1.0 / pmax, 1.0 / (pmax * pmax)};
    for (int i = 0; i < 3; ++i) {
        out.fit_coefficients[i] = coef[i] * unscale[i];
        for (int j = 0; j < 3; ++j)
            out.covariance[i][j] = inv[i][j] * scale * unscale[i] * unscale[j];
    }

    const double sigma_c0 = std::sqrt(out.covariance[0][0]);
    const double z = (family == QuantileFamily::normal)
                         ? normal_quantile(series.confidence_level)
                         : student_t_quantile(series.confidence_level, dof);
    out.gamma0_linewidth_hz =
        std::max(0.0, out.fit_coefficients[0] + z * sigma_c0);
    return out;
}

TrapEstimate trap_frequency(const SphereSpec& sphere, const PhysicalConstants& k) {
    if (!sphere.saturation_field)
        throw ValidationError("sphere.saturation_field is required for the "
                              "trap frequency estimate");
    const double moment = (*sphere.saturation_field / k.mu_0) * sphere.volume;
    const double z0 = std::pow(3.0 * k.mu_0 * moment * moment /
                                   (64.0 * kPi * sphere.mass * k.g),
                               0.25);
    TrapEstimate out;
    out.z0_m = z0;
    out.f0_hz = std::sqrt(k.g / z0) / kPi;
    return out;
}

} // namespace mlev
