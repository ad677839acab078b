#include "mlev/lattice.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "mlev/errors.hpp"
#include "mlev/numerics.hpp"

namespace mlev {

namespace {

constexpr double kPi = std::numbers::pi;

void check_spec(const LatticeSpec& spec) {
    if (!(spec.lattice_constant > 0.0) || !std::isfinite(spec.lattice_constant))
        throw ValidationError("lattice.lattice_constant must be a positive finite number");
    if (spec.n_max < 1)
        throw ValidationError("lattice.n_max must be at least 1");
    if (!(spec.cell_mass > 0.0) || !std::isfinite(spec.cell_mass))
        throw ValidationError("lattice.cell_mass must be a positive finite number");
}

// Displacement multiset of a site list: W[d] = #{(i, j) : s_j - s_i = d},
// ordered pairs, diagonal included. std::map keeps the traversal order (and
// hence the compensated sums downstream) independent of the input order.
using DisplacementCounts = std::map<std::array<int, 3>, long long>;

DisplacementCounts displacement_counts(const std::vector<std::array<int, 3>>& sites,
                                       std::size_t pair_cap) {
    const std::size_t n = sites.size();
    if (n > pair_cap / n)
        throw ValidationError("lattice pair budget exceeded: " +
                              std::to_string(n) + "^2 ordered pairs > " +
                              std::to_string(pair_cap));
    DisplacementCounts counts;
    for (const auto& a : sites)
        for (const auto& b : sites)
            ++counts[{b[0] - a[0], b[1] - a[1], b[2] - a[2]}];
    return counts;
}

// J_l(kappa) = integral of u^2 exp(-u^2) j_l(kappa u) du over u >= 0,
// truncated at 9 where the Gaussian is below double precision. The absolute
// floor matters: J_0 decays like exp(-kappa^2/4) and certifying it below
// roundoff of the O(0.1) oscillatory lobes is impossible; anything under
// 1e-16 is invisible next to the O(1) diagonal kernel anyway.
double radial_bessel_moment(int l, double kappa) {
    QuadratureOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-16;
    auto integrand = [l, kappa](double u) {
        return u * u * std::exp(-u * u) *
               std::sph_bessel(static_cast<unsigned>(l), kappa * u);
    };
    return integrate_gk15(integrand, 0.0, 9.0, opt).value;
}

} // namespace

std::vector<std::array<int, 3>> enumerate_sites(const LatticeSpec& spec) {
    check_spec(spec);
    const int n = spec.n_max;
    const long long r2 = static_cast<long long>(n) * n;
    std::vector<std::array<int, 3>> sites;
    for (int x = -n; x <= n; ++x)
        for (int y = -n; y <= n; ++y)
            for (int z = -n; z <= n; ++z) {
                const long long s2 = static_cast<long long>(x) * x +
                                     static_cast<long long>(y) * y +
                                     static_cast<long long>(z) * z;
                if (s2 <= r2) {
                    if (sites.size() >= spec.site_cap)
                        throw ValidationError(
                            "lattice site cap exceeded at n_max = " +
                            std::to_string(n));
                    sites.push_back({x, y, z});
                }
            }
    return sites;
}

double dcsl_eta_lattice_sites(const std::vector<std::array<int, 3>>& sites,
                              const LatticeSpec& spec, const DcslParams& p,
                              const PhysicalConstants& k) {
    check_spec(spec);
    p.validate();
    const double rcp = p.r_c_prime(k);
    const double a = spec.lattice_constant;
    const DisplacementCounts counts = displacement_counts(sites, spec.pair_cap);

    // Each ordered pair contributes (2 rc'^2 - a^2 dx^2) exp(-a^2 |d|^2 / 4 rc'^2);
    // the Gaussian makes every term with exponent > 200 irrelevant.
    NeumaierSum sum;
    for (const auto& [d, w] : counts) {
        const double d2 = static_cast<double>(
            static_cast<long long>(d[0]) * d[0] + static_cast<long long>(d[1]) * d[1] +
            static_cast<long long>(d[2]) * d[2]);
        const double expo = a * a * d2 / (4.0 * rcp * rcp);
        if (expo > 200.0)
            continue;
        const double ax = a * d[0];
        sum.add(static_cast<double>(w) * (2.0 * rcp * rcp - ax * ax) *
                std::exp(-expo));
    }

    const double pref = p.lambda_rate * std::pow(p.r_c, 3) * spec.cell_mass *
                        spec.cell_mass /
                        (4.0 * k.m_nucleon * k.m_nucleon * std::pow(rcp, 7));
    return pref * sum.value();
}

double dcsl_eta_lattice(const LatticeSpec& spec, const DcslParams& p,
                        const PhysicalConstants& k) {
    return dcsl_eta_lattice_sites(enumerate_sites(spec), spec, p, k);
}

double ddp_pair_kernel(const std::array<int, 3>& dn, double a_over_r0prime) {
    const double d2 = static_cast<double>(
        static_cast<long long>(dn[0]) * dn[0] + static_cast<long long>(dn[1]) * dn[1] +
        static_cast<long long>(dn[2]) * dn[2]);
    if (d2 == 0.0)
        return std::pow(kPi, 1.5) / 3.0;

    const double dist = std::sqrt(d2);
    const double kappa = a_over_r0prime * dist;
    const double c = dn[0] / dist;
    const double p2 = 0.5 * (3.0 * c * c - 1.0);
    const double j0 = radial_bessel_moment(0, kappa);
    const double j2 = radial_bessel_moment(2, kappa);
    return 4.0 * kPi * (j0 / 3.0 - 2.0 / 3.0 * p2 * j2);
}

double ddp_eta_lattice_sites(const std::vector<std::array<int, 3>>& sites,
                             const LatticeSpec& spec, const DdpParams& p,
                             const PhysicalConstants& k) {
    check_spec(spec);
    const DdpResolved r = ddp_resolve(p, k);
    const double a = spec.lattice_constant;
    const double ratio = a / r.r0_prime;
    const DisplacementCounts counts = displacement_counts(sites, spec.pair_cap);

    // The l = 2 part of the kernel only falls off algebraically, but it sums
    // to zero over each signed-permutation orbit of the ball, and all members
    // of an orbit share one |d|^2. Cutting on kappa therefore drops whole
    // orbits at once, and what is lost is only the Gaussian l = 0 part.
    std::map<long long, std::pair<double, double>> moments; // |d|^2 -> (J0, J2)
    NeumaierSum sum;
    for (const auto& [d, w] : counts) {
        const long long d2i = static_cast<long long>(d[0]) * d[0] +
                              static_cast<long long>(d[1]) * d[1] +
                              static_cast<long long>(d[2]) * d[2];
        if (d2i == 0) {
            sum.add(static_cast<double>(w) * std::pow(kPi, 1.5) / 3.0);
            continue;
        }
        const double d2 = static_cast<double>(d2i);
        const double kappa = ratio * std::sqrt(d2);
        if (kappa * kappa > 800.0)
            continue;
        auto it = moments.find(d2i);
        if (it == moments.end())
            it = moments
                     .emplace(d2i, std::make_pair(radial_bessel_moment(0, kappa),
                                                  radial_bessel_moment(2, kappa)))
                     .first;
        const double c2 = static_cast<double>(d[0]) * d[0] / d2;
        const double p2 = 0.5 * (3.0 * c2 - 1.0);
        sum.add(static_cast<double>(w) * 4.0 * kPi *
                (it->second.first / 3.0 - 2.0 / 3.0 * p2 * it->second.second));
    }

    const double pref = k.G * spec.cell_mass * spec.cell_mass /
                        (2.0 * kPi * kPi * k.hbar * std::pow(r.r0_prime, 3));
    return pref * sum.value();
}

double ddp_eta_lattice(const LatticeSpec& spec, const DdpParams& p,
                       const PhysicalConstants& k) {
    return ddp_eta_lattice_sites(enumerate_sites(spec), spec, p, k);
}

} // namespace mlev
