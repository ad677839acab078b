#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlev/collapse.hpp"
#include "mlev/constants.hpp"
#include "mlev/system.hpp"

namespace mlev {

// One abscissa point of an exclusion curve. An empty ordinate means the
// measurement places no bound there; it is a legitimate result, distinct
// from zero or infinity, and is preserved through CSV ("none") and JSON (null).
struct CurvePoint {
    double x = 0.0;
    std::optional<double> y;
};

struct ExclusionCurve {
    std::string model;         // "dcsl", "ddp", or "cgf"
    std::string abscissa;      // column name with unit, e.g. "r_c_m"
    std::string ordinate;      // e.g. "lambda_max_per_s"
    std::vector<CurvePoint> points; // x strictly increasing
    std::map<std::string, std::string> fixed_params; // everything held constant, stringified
    double gamma0 = 0.0;       // 1/s, angular damping bound the curve inverts
};

// Grid helper: n points from lo to hi, log- or linearly spaced, strictly
// increasing. n >= 2.
std::vector<double> make_grid(double lo, double hi, int n, bool log_spaced);

// ---------------------------------------------------------------------------
// dCSL: gamma is linear in lambda, so the bound is a single division.

std::optional<double> dcsl_lambda_bound(double r_c, double T_c, double gamma0,
                                        const SphereSpec& sphere, double m_a,
                                        const PhysicalConstants& k);

// Curve builders evaluate grid points independently; threads > 1 splits the
// grid over a worker pool. Results are identical for any thread count.
ExclusionCurve dcsl_curve(const std::vector<double>& r_c_grid, double T_c,
                          double gamma0, const SphereSpec& sphere, double m_a,
                          const PhysicalConstants& k, int threads = 1);

// ---------------------------------------------------------------------------
// dDP: gamma(T_DP) needs a root find; options below control it.

struct DdpBoundOptions {
    double t_lo = 1e-30;            // K, search bracket
    double t_hi = 1e10;             // K
    double log_tol = 1e-3;          // bisection tolerance on ln T
    double boundary_rel_tol = 1e-9; // final |gamma/gamma0 - 1| after polish
    // sphere_of_r0prime policy only: the granular picture needs the effective
    // constituents to stay well inside the sphere; report no bound when
    // R0' at the would-be boundary exceeds this fraction of the sphere radius.
    double validity_fraction = 0.5;
};

std::optional<double> ddp_temperature_bound(double R0, double gamma0,
                                            const SphereSpec& sphere,
                                            const MassPolicy& policy,
                                            DdpRegime regime,
                                            const PhysicalConstants& k,
                                            const DdpBoundOptions& opt = {});

ExclusionCurve ddp_curve(const std::vector<double>& r0_grid, double gamma0,
                         const SphereSpec& sphere, const MassPolicy& policy,
                         DdpRegime regime, const PhysicalConstants& k,
                         const DdpBoundOptions& opt = {}, int threads = 1);

// ---------------------------------------------------------------------------
// CGF: gamma scales as xi^2, so the bound is a square root.

std::optional<double> cgf_xi_bound(double r_c, std::optional<double> corr_rate,
                                   double gamma0, const SphereSpec& sphere,
                                   const PhysicalConstants& k);

ExclusionCurve cgf_curve(const std::vector<double>& r_c_grid,
                         std::optional<double> corr_rate, double gamma0,
                         const SphereSpec& sphere, const PhysicalConstants& k,
                         int threads = 1);

// Location and value of the minimum over the finite points of a curve.
struct CurveMinimum {
    double x = 0.0;
    double y = 0.0;
    bool found = false;
};

CurveMinimum curve_minimum(const ExclusionCurve& curve);

} // namespace mlev
