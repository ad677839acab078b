#include "mlev/exclusion.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "mlev/errors.hpp"
#include "mlev/numerics.hpp"

namespace mlev {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Each index is computed exactly once into its own slot, so scheduling cannot
// change the result. If several workers fail, the lowest index wins so the
// surfaced error does not depend on timing either.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& f) {
    if (threads < 1)
        throw ValidationError("thread count must be at least 1");
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool)
        t.join();
    for (const std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

std::vector<double> make_grid(double lo, double hi, int n, bool log_spaced) {
    if (!(lo > 0.0) && log_spaced)
        throw ValidationError("log grid requires a positive lower edge");
    if (!(hi > lo))
        throw ValidationError("grid upper edge must exceed the lower edge");
    if (n < 2)
        throw ValidationError("grid needs at least 2 points");

    std::vector<double> out(static_cast<std::size_t>(n));
    if (log_spaced) {
        const double la = std::log(lo), lb = std::log(hi);
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] =
                std::exp(la + (lb - la) * i / (n - 1));
    } else {
        for (int i = 0; i < n; ++i)
            out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    }
    out.front() = lo;
    out.back() = hi;
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i] > out[i - 1]))
            throw ValidationError("grid points collapsed; reduce the point "
                                  "count or widen the range");
    return out;
}

// ---------------------------------------------------------------------------
// dCSL

std::optional<double> dcsl_lambda_bound(double r_c, double T_c, double gamma0,
                                        const SphereSpec& sphere, double m_a,
                                        const PhysicalConstants& k) {
    if (!(gamma0 > 0.0))
        throw ValidationError("gamma0 must be positive");
    if (std::isinf(T_c))
        return std::nullopt; // no dissipation at any collapse rate

    DcslParams p;
    p.lambda_rate = 1.0;
    p.r_c = r_c;
    p.T_c = T_c;
    p.m_a = m_a;
    const double gamma_unit = dcsl_rates(sphere, p, k).gamma;
    if (!(gamma_unit > 0.0))
        return std::nullopt;
    return gamma0 / gamma_unit; // gamma is exactly linear in lambda
}

ExclusionCurve dcsl_curve(const std::vector<double>& r_c_grid, double T_c,
                          double gamma0, const SphereSpec& sphere, double m_a,
                          const PhysicalConstants& k, int threads) {
    ExclusionCurve curve;
    curve.model = "dcsl";
    curve.abscissa = "r_c_m";
    curve.ordinate = "lambda_max_per_s";
    curve.gamma0 = gamma0;
    curve.fixed_params["T_c_K"] = std::isinf(T_c) ? "inf" : fmt(T_c);
    curve.fixed_params["m_a_kg"] = fmt(m_a);
    curve.fixed_params["sphere_radius_m"] = fmt(sphere.radius);
    curve.fixed_params["sphere_density_kg_m3"] = fmt(sphere.density);
    curve.points.resize(r_c_grid.size());
    parallel_for(r_c_grid.size(), threads, [&](std::size_t i) {
        curve.points[i] = {r_c_grid[i], dcsl_lambda_bound(r_c_grid[i], T_c,
                                                          gamma0, sphere, m_a, k)};
    });
    return curve;
}

// ---------------------------------------------------------------------------
// dDP

namespace {

double ddp_gamma_at(double T, double R0, const SphereSpec& sphere,
                    const MassPolicy& policy, DdpRegime regime,
                    const PhysicalConstants& k) {
    DdpParams p;
    p.R0 = R0;
    p.T_DP = T;
    p.mass_policy = policy;
    return ddp_gamma(sphere, p, regime, k);
}

} // namespace

std::optional<double> ddp_temperature_bound(double R0, double gamma0,
                                            const SphereSpec& sphere,
                                            const MassPolicy& policy,
                                            DdpRegime regime,
                                            const PhysicalConstants& k,
                                            const DdpBoundOptions& opt) {
    if (!(gamma0 > 0.0))
        throw ValidationError("gamma0 must be positive");
    auto gamma_at = [&](double T) {
        return ddp_gamma_at(T, R0, sphere, policy, regime, k);
    };

    // Locate the decreasing branch. With the self-consistent constituent
    // policy gamma is monotone decreasing in T, so the branch starts at the
    // bracket edge; with a fixed constituent mass gamma is unimodal and the
    // branch starts at the peak.
    double t_branch = opt.t_lo;
    if (policy.kind != MassPolicy::Kind::sphere_of_r0prime) {
        const GoldenResult peak = golden_max_log(gamma_at, opt.t_lo, opt.t_hi, 1e-10);
        if (!(peak.fx > gamma0))
            return std::nullopt; // dissipation never reaches the bound
        t_branch = peak.x;
    } else if (!(gamma_at(t_branch) > gamma0)) {
        return std::nullopt;
    }
    if (!(gamma_at(opt.t_hi) < gamma0))
        throw NumericalError("dDP temperature bound lies beyond the search "
                             "bracket upper edge");

    // Bisect gamma(T) = gamma0 on the decreasing branch in ln T, then polish
    // with secant steps on ln gamma - ln gamma0.
    double lo = std::log(t_branch), hi = std::log(opt.t_hi);
    while (hi - lo > opt.log_tol) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_at(std::exp(mid)) > gamma0)
            lo = mid;
        else
            hi = mid;
    }
    double u0 = lo, u1 = hi;
    double f0 = std::log(gamma_at(std::exp(u0)) / gamma0);
    double f1 = std::log(gamma_at(std::exp(u1)) / gamma0);
    double T = std::exp(u1);
    for (int it = 0; it < 80; ++it) {
        if (std::abs(f1) <= 0.5 * opt.boundary_rel_tol)
            break;
        const double denom = f1 - f0;
        if (denom == 0.0)
            break;
        const double u2 = u1 - f1 * (u1 - u0) / denom;
        u0 = u1;
        f0 = f1;
        u1 = u2;
        T = std::exp(u1);
        f1 = std::log(gamma_at(T) / gamma0);
    }
    if (!(std::abs(gamma_at(T) / gamma0 - 1.0) <= opt.boundary_rel_tol))
        throw NumericalError("dDP temperature bound polish did not reach the "
                             "requested residual");

    // The self-consistent constituent must stay well inside the sphere for
    // either regime to describe it; otherwise the result is "no bound".
    if (policy.kind == MassPolicy::Kind::sphere_of_r0prime) {
        DdpParams p;
        p.R0 = R0;
        p.T_DP = T;
        p.mass_policy = policy;
        if (ddp_resolve(p, k).r0_prime > opt.validity_fraction * sphere.radius)
            return std::nullopt;
    }
    return T;
}

ExclusionCurve ddp_curve(const std::vector<double>& r0_grid, double gamma0,
                         const SphereSpec& sphere, const MassPolicy& policy,
                         DdpRegime regime, const PhysicalConstants& k,
                         const DdpBoundOptions& opt, int threads) {
    ExclusionCurve curve;
    curve.model = "ddp";
    curve.abscissa = "R0_m";
    curve.ordinate = "T_DP_max_K";
    curve.gamma0 = gamma0;
    switch (policy.kind) {
    case MassPolicy::Kind::nucleon:
        curve.fixed_params["mass_policy"] = "nucleon";
        break;
    case MassPolicy::Kind::fixed_nuclear:
        curve.fixed_params["mass_policy"] = "fixed_nuclear";
        curve.fixed_params["m_a_kg"] = fmt(policy.mass);
        break;
    case MassPolicy::Kind::sphere_of_r0prime:
        curve.fixed_params["mass_policy"] = "sphere_of_r0prime";
        curve.fixed_params["constituent_density_kg_m3"] = fmt(policy.density);
        curve.fixed_params["validity_fraction"] = fmt(opt.validity_fraction);
        break;
    }
    curve.fixed_params["regime"] =
        (regime == DdpRegime::uniform) ? "uniform" : "granular";
    curve.fixed_params["sphere_radius_m"] = fmt(sphere.radius);
    curve.fixed_params["sphere_density_kg_m3"] = fmt(sphere.density);
    curve.points.resize(r0_grid.size());
    parallel_for(r0_grid.size(), threads, [&](std::size_t i) {
        curve.points[i] = {r0_grid[i],
                           ddp_temperature_bound(r0_grid[i], gamma0, sphere,
                                                 policy, regime, k, opt)};
    });
    return curve;
}

// ---------------------------------------------------------------------------
// CGF

std::optional<double> cgf_xi_bound(double r_c, std::optional<double> corr_rate,
                                   double gamma0, const SphereSpec& sphere,
                                   const PhysicalConstants& k) {
    if (!(gamma0 > 0.0))
        throw ValidationError("gamma0 must be positive");
    CgfParams p;
    p.xi = 1.0;
    p.r_c = r_c;
    p.light_speed = !corr_rate.has_value();
    p.corr_rate = corr_rate.value_or(0.0);
    const double gamma_unit = cgf_gamma(sphere, p, k);
    if (!(gamma_unit > 0.0))
        return std::nullopt;
    return std::sqrt(gamma0 / gamma_unit); // gamma scales as xi^2
}

ExclusionCurve cgf_curve(const std::vector<double>& r_c_grid,
                         std::optional<double> corr_rate, double gamma0,
                         const SphereSpec& sphere, const PhysicalConstants& k,
                         int threads) {
    ExclusionCurve curve;
    curve.model = "cgf";
    curve.abscissa = "r_c_m";
    curve.ordinate = "xi_max";
    curve.gamma0 = gamma0;
    curve.fixed_params["corr_rate_mode"] =
        corr_rate ? "fixed" : "light_speed";
    if (corr_rate)
        curve.fixed_params["corr_rate_per_s"] = fmt(*corr_rate);
    curve.fixed_params["sphere_radius_m"] = fmt(sphere.radius);
    curve.fixed_params["sphere_density_kg_m3"] = fmt(sphere.density);
    curve.points.resize(r_c_grid.size());
    parallel_for(r_c_grid.size(), threads, [&](std::size_t i) {
        curve.points[i] = {r_c_grid[i],
                           cgf_xi_bound(r_c_grid[i], corr_rate, gamma0, sphere, k)};
    });
    return curve;
}

CurveMinimum curve_minimum(const ExclusionCurve& curve) {
    CurveMinimum out;
    for (const CurvePoint& p : curve.points) {
        if (!p.y)
            continue;
        if (!out.found || *p.y < out.y) {
            out.found = true;
            out.x = p.x;
            out.y = *p.y;
        }
    }
    return out;
}

} // namespace mlev
