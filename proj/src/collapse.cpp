#include "mlev/collapse.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mlev/errors.hpp"
#include "mlev/numerics.hpp"

namespace mlev {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string(field) + " must be a positive finite number");
}

// Dissipation strength chi = hbar^2 / (8 m r^2 k_B T); the T -> inf limit is
// exactly 0 (no dissipation).
double chi_of(double m, double r, double T, const PhysicalConstants& k) {
    if (std::isinf(T))
        return 0.0;
    return k.hbar * k.hbar / (8.0 * m * r * r * k.k_B * T);
}

} // namespace

// ---------------------------------------------------------------------------
// Shape functions

double shape_k(double y) {
    if (!(y >= 0.0) || !std::isfinite(y))
        throw ValidationError("shape_k argument must be finite and non-negative");
    if (y < 0.5) {
        // Alternating series in y^2; truncation < 3e-11 relative at y = 0.5.
        static constexpr double c[8] = {
            1.0 / 6.0,     -1.0 / 12.0,   1.0 / 40.0,    -1.0 / 180.0,
            1.0 / 1008.0,  -1.0 / 6720.0, 1.0 / 51840.0, -1.0 / 453600.0};
        const double y2 = y * y;
        double acc = 0.0;
        for (int j = 7; j >= 0; --j)
            acc = acc * y2 + c[j];
        return acc * y2 * y2;
    }
    const double y2 = y * y;
    return 1.0 - 2.0 / y2 + std::exp(-y2) * (1.0 + 2.0 / y2);
}

double shape_i(double y) {
    if (!(y >= 0.0) || !std::isfinite(y))
        throw ValidationError("shape_i argument must be finite and non-negative");
    if (y < 0.35) {
        // Alternating series in y^2 times y; truncation < 1e-12 relative at 0.35.
        static constexpr double c[7] = {
            1.0 / 6.0,    -1.0 / 20.0,    3.0 / 280.0, -1.0 / 540.0,
            1.0 / 3696.0, -1.0 / 29120.0, 1.0 / 259200.0};
        const double y2 = y * y;
        double acc = 0.0;
        for (int n = 6; n >= 0; --n)
            acc = acc * y2 + c[n];
        return acc * y2 * y;
    }
    const double y2 = y * y;
    const double e = std::exp(-y2);
    return kSqrtPi * std::erf(y) + (e - 3.0) / y + 2.0 * (1.0 - e) / (y2 * y);
}

double sphere_form_factor(double q, const SphereSpec& sphere,
                          const PhysicalConstants& k) {
    const double x = q * sphere.radius / k.hbar;
    if (x == 0.0)
        return sphere.mass;
    if (std::abs(x) <= 0.6) {
        // 3 j1(x)/x expanded directly so the q -> 0 limit is the full mass.
        const double x2 = x * x;
        double acc = 0.0;
        static constexpr double c[7] = {1.0,
                                        -1.0 / 10.0,
                                        1.0 / 280.0,
                                        -1.0 / 15120.0,
                                        1.0 / 1330560.0,
                                        -1.0 / 172972800.0,
                                        1.0 / 31135104000.0};
        for (int n = 6; n >= 0; --n)
            acc = acc * x2 + c[n];
        return sphere.mass * acc;
    }
    return 3.0 * sphere.mass * sph_bessel_j1(x) / x;
}

// ---------------------------------------------------------------------------
// dCSL

double DcslParams::chi(const PhysicalConstants& k) const {
    return chi_of(m_a, r_c, T_c, k);
}

double DcslParams::r_c_prime(const PhysicalConstants& k) const {
    return r_c * (1.0 + chi(k));
}

void DcslParams::validate() const {
    if (!(lambda_rate >= 0.0) || !std::isfinite(lambda_rate))
        throw ValidationError("dcsl.lambda_rate must be finite and non-negative");
    require_positive(r_c, "dcsl.r_c");
    if (!(T_c > 0.0))
        throw ValidationError("dcsl.T_c must be positive (or infinite)");
    require_positive(m_a, "dcsl.m_a");
}

RatePrediction dcsl_rates(const SphereSpec& sphere, const DcslParams& p,
                          const PhysicalConstants& k) {
    p.validate();
    const double chi = p.chi(k);
    const double R = sphere.radius;
    const double y = R / (p.r_c * (1.0 + chi));
    const double m0 = k.m_nucleon;

    RatePrediction out;
    out.eta = 3.0 * p.lambda_rate * sphere.mass * sphere.mass * p.r_c * p.r_c *
              shape_k(y) / ((1.0 + chi) * m0 * m0 * R * R * R * R);
    out.gamma = 4.0 * out.eta * p.r_c * p.r_c * chi * (1.0 + chi) * p.m_a /
                sphere.mass;
    return out;
}

double dcsl_eta_quadrature(const std::function<double(double)>& form_factor,
                           const DcslParams& p, const PhysicalConstants& k) {
    p.validate();
    const double rcp = p.r_c_prime(k);
    const double m0 = k.m_nucleon;

    // Radial momentum integral in the dimensionless variable u = q rc'/hbar;
    // the Gaussian kernel makes [0, 9] exhaustive at double precision.
    auto integrand = [&](double u) {
        const double f = form_factor(u * k.hbar / rcp);
        return u * u * u * u * f * f * std::exp(-u * u);
    };
    QuadratureOptions opt;
    opt.rel_tol = 1e-9;
    const QuadratureResult q = integrate_gk15(integrand, 0.0, 9.0, opt);

    const double pref = 4.0 / (3.0 * kSqrtPi) * p.lambda_rate * p.r_c * p.r_c *
                        p.r_c / (m0 * m0 * std::pow(rcp, 5));
    return pref * q.value;
}

double dcsl_eta_granular(const DcslParams& p, double total_mass,
                         const PhysicalConstants& k, double lattice_constant,
                         std::vector<std::string>* warnings) {
    p.validate();
    require_positive(total_mass, "total_mass");
    const double chi = p.chi(k);
    const double rcp = p.r_c * (1.0 + chi);
    if (warnings && lattice_constant > 0.0 && lattice_constant < 10.0 * rcp)
        warnings->push_back(
            "granular limit degraded: lattice constant is below 10 times the "
            "dressed correlation length");

    const double c1 = 1.0 + chi;
    const double c5 = c1 * c1 * c1 * c1 * c1;
    return p.lambda_rate * p.m_a * total_mass /
           (2.0 * k.m_nucleon * k.m_nucleon * p.r_c * p.r_c * c5);
}

// ---------------------------------------------------------------------------
// dDP

void DdpParams::validate() const {
    require_positive(R0, "ddp.R0");
    if (!(T_DP > 0.0))
        throw ValidationError("ddp.T_DP must be positive (or infinite)");
    if (lattice_constant < 0.0 || !std::isfinite(lattice_constant))
        throw ValidationError("ddp.lattice_constant must be finite and non-negative");
}

DdpResolved ddp_resolve(const DdpParams& p, const PhysicalConstants& k) {
    p.validate();
    DdpResolved out;

    if (p.mass_policy.kind != MassPolicy::Kind::sphere_of_r0prime) {
        out.m_a = reference_mass(p.mass_policy, k);
        out.chi = chi_of(out.m_a, p.R0, p.T_DP, k);
        out.r0_prime = p.R0 * (1.0 + out.chi);
        return out;
    }

    // Self-consistent constituent: m_a fills a ball of radius R0 (1 + chi)
    // while chi ~ 1/m_a, giving chi (1 + chi)^3 = s with s known.
    require_positive(p.mass_policy.density, "ddp.mass_policy.density");
    const double ball = 4.0 * kPi / 3.0 * p.mass_policy.density * std::pow(p.R0, 3);
    if (std::isinf(p.T_DP)) {
        out.chi = 0.0;
        out.r0_prime = p.R0;
        out.m_a = ball;
        return out;
    }
    const double s = k.hbar * k.hbar / (8.0 * ball * p.R0 * p.R0 * k.k_B * p.T_DP);

    // Newton on f(chi) = ln chi + 3 ln(1 + chi) - ln s; f is increasing and
    // concave on chi > 0, so the iteration is globally convergent from either
    // asymptotic seed.
    double chi = (s < 1.0) ? s : std::pow(s, 0.25);
    const double ln_s = std::log(s);
    for (int it = 0; it < 200; ++it) {
        const double f = std::log(chi) + 3.0 * std::log1p(chi) - ln_s;
        if (std::abs(f) < 1e-14)
            break;
        const double df = 1.0 / chi + 3.0 / (1.0 + chi);
        double step = f / df;
        if (step > 0.9 * chi)
            step = 0.9 * chi; // keep the iterate positive
        chi -= step;
        if (it == 199)
            throw NumericalError("self-consistent constituent solve failed to "
                                 "converge");
    }
    const double resid =
        std::abs(std::log(chi) + 3.0 * std::log1p(chi) - ln_s);
    if (!(resid < 1e-12))
        throw NumericalError("self-consistent constituent solve left a residual "
                             "above 1e-12");

    out.chi = chi;
    out.r0_prime = p.R0 * (1.0 + chi);
    out.m_a = 4.0 * kPi / 3.0 * p.mass_policy.density * std::pow(out.r0_prime, 3);
    return out;
}

RatePrediction ddp_rates_uniform(const SphereSpec& sphere, const DdpParams& p,
                                 const PhysicalConstants& k) {
    const DdpResolved r = ddp_resolve(p, k);
    const double R = sphere.radius;
    const double y = R / r.r0_prime;

    RatePrediction out;
    out.eta = k.G * sphere.mass * sphere.mass * shape_i(y) /
              (kSqrtPi * k.hbar * R * R * R);
    out.gamma = 4.0 * out.eta * p.R0 * p.R0 * r.chi * (1.0 + r.chi) * r.m_a /
                sphere.mass;
    return out;
}

double ddp_eta_granular(const DdpParams& p, double total_mass,
                        const PhysicalConstants& k,
                        std::vector<std::string>* warnings) {
    const DdpResolved r = ddp_resolve(p, k);
    require_positive(total_mass, "total_mass");
    if (warnings && p.lattice_constant > 0.0 &&
        p.lattice_constant < 10.0 * r.r0_prime)
        warnings->push_back(
            "granular limit degraded: lattice constant is below 10 times the "
            "dressed regularization radius");

    const double c1 = 1.0 + r.chi;
    return k.G * r.m_a * total_mass /
           (6.0 * k.hbar * kSqrtPi * c1 * c1 * c1 * std::pow(p.R0, 3));
}

double ddp_gamma(const SphereSpec& sphere, const DdpParams& p, DdpRegime regime,
                 const PhysicalConstants& k) {
    const DdpResolved r = ddp_resolve(p, k);
    double eta;
    if (regime == DdpRegime::uniform)
        eta = ddp_rates_uniform(sphere, p, k).eta;
    else
        eta = ddp_eta_granular(p, sphere.mass, k);
    return 4.0 * eta * p.R0 * p.R0 * r.chi * (1.0 + r.chi) * r.m_a / sphere.mass;
}

// ---------------------------------------------------------------------------
// CGF

double CgfParams::effective_rate(const PhysicalConstants& k) const {
    return light_speed ? k.c / r_c : corr_rate;
}

void CgfParams::validate() const {
    if (!(xi >= 0.0) || !std::isfinite(xi))
        throw ValidationError("cgf.xi must be finite and non-negative");
    require_positive(r_c, "cgf.r_c");
    if (!light_speed)
        require_positive(corr_rate, "cgf.corr_rate");
}

double cgf_gamma(const SphereSpec& sphere, const CgfParams& p,
                 const PhysicalConstants& k) {
    p.validate();
    const double rate = p.effective_rate(k);
    const double y = sphere.radius / p.r_c;
    const double pref = std::pow(4.0 * kPi, 1.5);
    const double mc2 = sphere.mass * k.c * k.c;
    return 6.0 * p.r_c * p.r_c * k.c * k.c * p.xi * p.xi * mc2 * shape_k(y) /
           (pref * std::pow(sphere.radius, 4) * rate * rate * k.hbar);
}

} // namespace mlev
