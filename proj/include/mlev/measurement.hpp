#pragma once

#include <array>
#include <string>
#include <vector>

#include "mlev/constants.hpp"
#include "mlev/numerics.hpp"
#include "mlev/system.hpp"

namespace mlev {

// ---------------------------------------------------------------------------
// Ringdown

struct RingdownSample {
    double t = 0.0;         // s
    double amplitude = 0.0; // arbitrary, >= 0
    double sigma = 0.0;     // same unit as amplitude, > 0
};

struct RingdownSeries {
    std::vector<RingdownSample> samples; // times strictly increasing
    double noise_floor = 0.0;            // amplitude unit, added in quadrature to sigma

    void validate() const;
};

struct RingdownFitOptions {
    double snr_min = 2.0;          // peak amplitude over effective noise; below: reject
    double tau_cap_factor = 100.0; // tau above cap * span flags the series as flat
    int max_iterations = 200;
};

struct RingdownFit {
    double tau = 0.0;                // s, energy decay time
    double tau_sigma = 0.0;          // s
    double gamma = 0.0;              // 1/s, = 2 / tau exactly
    double gamma_linewidth_hz = 0.0; // Hz, = gamma / (2 pi)
    double chi2_reduced = 0.0;
    double amplitude0 = 0.0;         // fitted A(0)
    std::vector<std::string> warnings;
};

// Weighted nonlinear least squares of A(t) = A0 exp(-t / tau) with
// Levenberg-Marquardt, seeded by a weighted log-linear fit. Deterministic.
RingdownFit fit_ringdown(const RingdownSeries& series,
                         const RingdownFitOptions& opt = {});

// ---------------------------------------------------------------------------
// Gas damping

// Free-molecular (Epstein) damping linewidth in Hz at the given pressure.
double epstein_linewidth_hz(double pressure_mbar, const SphereSpec& sphere,
                            const GasSpec& gas, const PhysicalConstants& k);

// Thermomolecular gauge correction: pressure at the particle given the gauge
// reading, valid in the free-molecular regime.
double thermomolecular_correct(double gauge_pressure_mbar, const GasSpec& gas);

// ---------------------------------------------------------------------------
// Pressure extrapolation

struct PressurePoint {
    double pressure = 0.0;  // mbar
    double linewidth = 0.0; // Hz
    double sigma = 0.0;     // Hz, > 0
};

struct PressureSeries {
    std::vector<PressurePoint> points;
    double confidence_level = 0.90;

    void validate() const;
};

// Zero-pressure damping bound from a weighted quadratic fit
// linewidth(P) = c0 + c1 P + c2 P^2: upper confidence limit on c0.
struct DampingBound {
    double gamma0_linewidth_hz = 0.0; // Hz, max(0, c0) + z * sigma(c0)
    double confidence_level = 0.0;
    std::array<double, 3> fit_coefficients{};            // c0 [Hz], c1 [Hz/mbar], c2 [Hz/mbar^2]
    std::array<std::array<double, 3>, 3> covariance{};   // same units squared
    double chi2_reduced = 0.0;
};

DampingBound fit_pressure_extrapolation(const PressureSeries& series,
                                        QuantileFamily family = QuantileFamily::normal);

// ---------------------------------------------------------------------------
// Trap

struct TrapEstimate {
    double f0_hz = 0.0; // Hz, vertical center-of-mass frequency
    double z0_m = 0.0;  // m, equilibrium levitation height
};

// Magnet-over-superconductor levitation estimate via the image-dipole model.
// Requires sphere.saturation_field.
TrapEstimate trap_frequency(const SphereSpec& sphere, const PhysicalConstants& k);

} // namespace mlev
