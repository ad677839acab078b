#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mlev/constants.hpp"
#include "mlev/system.hpp"

namespace mlev {

// Momentum-diffusion and energy-damping rates of one model at one parameter
// point. eta is the position-localization diffusion coefficient in 1/(m^2 s);
// gamma is the angular energy-damping rate in 1/s (divide by 2*pi for Hz).
struct RatePrediction {
    double eta = 0.0;   // 1/(m^2 s)
    double gamma = 0.0; // 1/s
};

// ---------------------------------------------------------------------------
// dCSL

struct DcslParams {
    double lambda_rate = 0.0; // 1/s, plain collapse rate
    double r_c = 0.0;         // m, correlation length
    double T_c = 0.0;         // K, dissipation temperature; +inf means no dissipation
    double m_a = 0.0;         // kg, reference mass

    // chi = hbar^2 / (8 m_a r_c^2 k_B T_c); 0 when T_c is infinite.
    double chi(const PhysicalConstants& k) const;
    // Dissipation-dressed correlation length r_c * (1 + chi).
    double r_c_prime(const PhysicalConstants& k) const;

    void validate() const;
};

// Saturation function for a uniform sphere against a Gaussian kernel:
// K(y) = 1 - 2/y^2 + exp(-y^2) (1 + 2/y^2), monotone from 0 to 1.
double shape_k(double y);

// Companion shape for the gravitational (dDP) sphere integral:
// I(y) = sqrt(pi) Erf(y) + (exp(-y^2) - 3)/y + 2 (1 - exp(-y^2))/y^3,
// monotone from 0 to sqrt(pi).
double shape_i(double y);

// Fourier transform of a uniform sphere's mass density at momentum q:
// 3 m j1(qR/hbar) / (qR/hbar). Units: kg.
double sphere_form_factor(double q, const SphereSpec& sphere,
                          const PhysicalConstants& k);

// Closed-form rates for a uniform sphere.
RatePrediction dcsl_rates(const SphereSpec& sphere, const DcslParams& p,
                          const PhysicalConstants& k);

// eta for an arbitrary mass distribution given its form factor, by adaptive
// quadrature of the radial momentum integral. Agrees with dcsl_rates().eta
// to better than 1e-6 relative when handed sphere_form_factor.
double dcsl_eta_quadrature(const std::function<double(double)>& form_factor,
                           const DcslParams& p, const PhysicalConstants& k);

// Point-like-constituent (granular) limit: all mass in nuclei far smaller
// than r_c'. total_mass is the summed mass; warns when the lattice constant
// (if supplied, > 0) is under 10 r_c', where the limit degrades.
double dcsl_eta_granular(const DcslParams& p, double total_mass,
                         const PhysicalConstants& k, double lattice_constant = 0.0,
                         std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// dDP

enum class DdpRegime { uniform, granular };

struct DdpParams {
    double R0 = 0.0;   // m, regularization radius
    double T_DP = 0.0; // K, dissipation temperature; +inf means no dissipation
    MassPolicy mass_policy = MassPolicy::nucleon();
    double lattice_constant = 0.0; // m, 0 = unknown; used for granular validity warnings

    void validate() const;
};

// mass_policy == sphere_of_r0prime couples m_a and chi: m_a fills a ball of
// radius R0' = R0 (1 + chi) at the policy density while chi itself depends on
// m_a. ddp_resolve solves that fixed point (Newton, residual < 1e-12); for
// the fixed-mass policies it is a direct evaluation.
struct DdpResolved {
    double m_a = 0.0;     // kg
    double chi = 0.0;     // hbar^2 / (8 m_a R0^2 k_B T_DP)
    double r0_prime = 0.0; // m, R0 (1 + chi)
};

DdpResolved ddp_resolve(const DdpParams& p, const PhysicalConstants& k);

// Uniform-sphere rates.
RatePrediction ddp_rates_uniform(const SphereSpec& sphere, const DdpParams& p,
                                 const PhysicalConstants& k);

// Granular limit (constituent spheres of radius R0' much smaller than the
// lattice constant). Warns when lattice_constant in p is > 0 and < 10 R0'.
double ddp_eta_granular(const DdpParams& p, double total_mass,
                        const PhysicalConstants& k,
                        std::vector<std::string>* warnings = nullptr);

// gamma in the requested regime for a sphere of the given total mass.
double ddp_gamma(const SphereSpec& sphere, const DdpParams& p, DdpRegime regime,
                 const PhysicalConstants& k);

// ---------------------------------------------------------------------------
// CGF

struct CgfParams {
    double xi = 0.0;        // dimensionless coupling
    double r_c = 0.0;       // m, correlation length
    double corr_rate = 0.0; // 1/s, correlation rate; ignored when light_speed
    bool light_speed = false; // corr_rate = c / r_c

    double effective_rate(const PhysicalConstants& k) const;
    void validate() const;
};

// Energy damping rate; the model has no independent eta at this level, so
// only gamma is reported.
double cgf_gamma(const SphereSpec& sphere, const CgfParams& p,
                 const PhysicalConstants& k);

} // namespace mlev
