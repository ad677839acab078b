#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mlev/collapse.hpp"
#include "mlev/errors.hpp"
#include "mlev/lattice.hpp"

using namespace mlev;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

LatticeSpec spec_of(double a, int n_max, double cell_mass) {
    LatticeSpec s;
    s.lattice_constant = a;
    s.n_max = n_max;
    s.cell_mass = cell_mass;
    return s;
}

} // namespace

TEST_CASE("site enumeration counts match the ball") {
    struct Case {
        int n_max;
        std::size_t count;
    };
    const Case cases[] = {{1, 7}, {2, 33}, {3, 123}, {4, 257}, {5, 515},
                          {8, 2109}, {10, 4169}};
    for (const auto& c : cases)
        CHECK(enumerate_sites(spec_of(1e-7, c.n_max, 1e-25)).size() == c.count);
}

TEST_CASE("site enumeration is lexicographic and symmetric") {
    auto sites = enumerate_sites(spec_of(1e-7, 3, 1e-25));
    CHECK(std::is_sorted(sites.begin(), sites.end()));
    // Every site's negation is a site.
    for (const auto& s : sites) {
        std::array<int, 3> neg{-s[0], -s[1], -s[2]};
        CHECK(std::binary_search(sites.begin(), sites.end(), neg));
    }
}

TEST_CASE("site and pair caps throw") {
    LatticeSpec s = spec_of(1e-7, 1, 1e-25);
    s.site_cap = 5;
    CHECK_THROWS_WITH_AS(enumerate_sites(s), doctest::Contains("site cap"),
                         ValidationError);

    LatticeSpec t = spec_of(2e-7, 1, 100.0 * codata().atomic_mass_unit);
    t.pair_cap = 10; // 7 sites -> 49 ordered pairs
    DcslParams p;
    p.lambda_rate = 1.0;
    p.r_c = 1e-7;
    p.T_c = kInf;
    p.m_a = t.cell_mass;
    CHECK_THROWS_WITH_AS(dcsl_eta_lattice(t, p, codata()),
                         doctest::Contains("pair budget"), ValidationError);
}

TEST_CASE("lattice spec validation") {
    CHECK_THROWS_WITH_AS(enumerate_sites(spec_of(0.0, 1, 1e-25)),
                         doctest::Contains("lattice_constant"), ValidationError);
    CHECK_THROWS_WITH_AS(enumerate_sites(spec_of(1e-7, 0, 1e-25)),
                         doctest::Contains("n_max"), ValidationError);
    CHECK_THROWS_WITH_AS(enumerate_sites(spec_of(1e-7, 1, 0.0)),
                         doctest::Contains("cell_mass"), ValidationError);
}

TEST_CASE("dcsl lattice reference value at one lattice spacing") {
    PhysicalConstants k = codata();
    DcslParams p;
    p.lambda_rate = 1.0;
    p.r_c = 1e-7;
    p.T_c = kInf; // chi = 0
    p.m_a = 100.0 * k.atomic_mass_unit;
    LatticeSpec s = spec_of(p.r_c_prime(k), 1, p.m_a);
    CHECK(dcsl_eta_lattice(s, p, k) ==
          doctest::Approx(1.2398336667357444e+19).epsilon(1e-12));
}

TEST_CASE("dcsl lattice collapses to the granular form when sites decouple") {
    PhysicalConstants k = codata();
    DcslParams p;
    p.lambda_rate = 1.0;
    p.r_c = 1e-7;
    p.T_c = 1.0;
    p.m_a = 100.0 * k.atomic_mass_unit;
    for (int n_max : {2, 4}) {
        LatticeSpec s = spec_of(20.0 * p.r_c_prime(k), n_max, p.m_a);
        const auto sites = enumerate_sites(s);
        const double lattice = dcsl_eta_lattice_sites(sites, s, p, k);
        const double closed =
            dcsl_eta_granular(p, s.cell_mass * static_cast<double>(sites.size()), k);
        CHECK(lattice == doctest::Approx(closed).epsilon(1e-10));
    }
}

TEST_CASE("dcsl lattice cross terms vanish against the diagonal at wide spacing") {
    PhysicalConstants k = codata();
    DcslParams p;
    p.lambda_rate = 1.0;
    p.r_c = 1e-7;
    p.T_c = kInf;
    p.m_a = 100.0 * k.atomic_mass_unit;
    // At one-spacing packing the nearest-neighbour terms triple the diagonal.
    LatticeSpec tight = spec_of(p.r_c_prime(k), 1, p.m_a);
    const double diagonal = 3.4401249261084257e+18; // granular with 7 cells
    CHECK(dcsl_eta_granular(p, 7.0 * p.m_a, k) ==
          doctest::Approx(diagonal).epsilon(1e-12));
    CHECK(dcsl_eta_lattice(tight, p, k) > 3.0 * diagonal);
}

TEST_CASE("dcsl lattice is independent of site order to the bit") {
    PhysicalConstants k = codata();
    DcslParams p;
    p.lambda_rate = 1.0;
    p.r_c = 1e-7;
    p.T_c = 1.0;
    p.m_a = 100.0 * k.atomic_mass_unit;
    LatticeSpec s = spec_of(3.0 * p.r_c_prime(k), 2, p.m_a);
    auto sites = enumerate_sites(s);
    const double ordered = dcsl_eta_lattice_sites(sites, s, p, k);
    std::mt19937_64 rng(12345);
    std::shuffle(sites.begin(), sites.end(), rng);
    CHECK(dcsl_eta_lattice_sites(sites, s, p, k) == ordered);
}

TEST_CASE("dcsl lattice scales exactly with the squared cell mass") {
    PhysicalConstants k = codata();
    DcslParams p;
    p.lambda_rate = 1.0;
    p.r_c = 1e-7;
    p.T_c = kInf;
    p.m_a = 100.0 * k.atomic_mass_unit;
    LatticeSpec s = spec_of(2e-7, 2, p.m_a);
    const double base = dcsl_eta_lattice(s, p, k);
    s.cell_mass *= 2.0;
    CHECK(dcsl_eta_lattice(s, p, k) == 4.0 * base);
}

TEST_CASE("ddp pair kernel frozen values") {
    // kappa = |dn| a / R0'; the x axis is the motion axis.
    CHECK(ddp_pair_kernel({0, 0, 0}, 2.0) ==
          doctest::Approx(1.856109332277236).epsilon(1e-12)); // pi^1.5 / 3
    CHECK(ddp_pair_kernel({1, 0, 0}, 2.0) ==
          doctest::Approx(-0.06161494398150805).epsilon(1e-9));
    CHECK(ddp_pair_kernel({0, 1, 0}, 2.0) ==
          doctest::Approx(1.0550441678576268).epsilon(1e-9));
    // Closed-form moments at kappa = 0.5 and 3.5 assembled by hand:
    // F = 4 pi (J0 / 3 - (2/3) P2(c) J2), P2(c) = (3 c^2 - 1) / 2.
    const double pi = 3.14159265358979323846;
    {
        const double J0 = 0.41626657519367266, J2 = 0.010595108304424145;
        const double want = 4.0 * pi * (J0 / 3.0 - (2.0 / 3.0) * 1.0 * J2);
        CHECK(ddp_pair_kernel({1, 0, 0}, 0.5) ==
              doctest::Approx(want).epsilon(1e-9));
    }
    {
        const double J0 = 0.020724692438423956, J2 = 0.07756946894942719;
        const double p2 = -0.5; // c^2 = 0
        const double want = 4.0 * pi * (J0 / 3.0 - (2.0 / 3.0) * p2 * J2);
        CHECK(ddp_pair_kernel({0, 0, 1}, 3.5) ==
              doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("ddp pair kernel is even and axis-symmetric about the motion axis") {
    CHECK(ddp_pair_kernel({1, 2, -1}, 1.5) == ddp_pair_kernel({-1, -2, 1}, 1.5));
    // y and z are interchangeable.
    CHECK(ddp_pair_kernel({2, 1, 0}, 1.5) ==
          doctest::Approx(ddp_pair_kernel({2, 0, 1}, 1.5)).epsilon(1e-12));
}

TEST_CASE("ddp lattice reference value at two lattice spacings") {
    PhysicalConstants k = codata();
    DdpParams p;
    p.R0 = 1e-7;
    p.T_DP = kInf;
    p.mass_policy = MassPolicy::fixed_nuclear(100.0 * k.atomic_mass_unit);
    DdpResolved r = ddp_resolve(p, k);
    LatticeSpec s = spec_of(2.0 * r.r0_prime, 1, 100.0 * k.atomic_mass_unit);
    CHECK(ddp_eta_lattice(s, p, k) ==
          doctest::Approx(2.4241271246308628e-05).epsilon(1e-10));
}

TEST_CASE("ddp single site equals one-grain granular") {
    PhysicalConstants k = codata();
    DdpParams p;
    p.R0 = 1e-7;
    p.T_DP = kInf;
    p.mass_policy = MassPolicy::fixed_nuclear(100.0 * k.atomic_mass_unit);
    LatticeSpec s = spec_of(2e-7, 1, 100.0 * k.atomic_mass_unit);
    const std::vector<std::array<int, 3>> one{{0, 0, 0}};
    const double lattice = ddp_eta_lattice_sites(one, s, p, k);
    CHECK(lattice == doctest::Approx(1.6409735126153625e-06).epsilon(1e-11));
    CHECK(lattice ==
          doctest::Approx(ddp_eta_granular(p, s.cell_mass, k)).epsilon(1e-11));
}

TEST_CASE("ddp lattice collapses to the granular form when sites decouple") {
    PhysicalConstants k = codata();
    DdpParams p;
    p.R0 = 1e-9;
    p.T_DP = 1.0;
    p.mass_policy = MassPolicy::fixed_nuclear(100.0 * k.atomic_mass_unit);
    DdpResolved r = ddp_resolve(p, k);
    for (int n_max : {2, 4}) {
        LatticeSpec s = spec_of(20.0 * r.r0_prime, n_max,
                                100.0 * k.atomic_mass_unit);
        const auto sites = enumerate_sites(s);
        const double lattice = ddp_eta_lattice_sites(sites, s, p, k);
        const double closed =
            ddp_eta_granular(p, s.cell_mass * static_cast<double>(sites.size()), k);
        CHECK(lattice == doctest::Approx(closed).epsilon(1e-6));
    }
}

TEST_CASE("ddp lattice is independent of site order to the bit") {
    PhysicalConstants k = codata();
    DdpParams p;
    p.R0 = 1e-7;
    p.T_DP = kInf;
    p.mass_policy = MassPolicy::fixed_nuclear(100.0 * k.atomic_mass_unit);
    LatticeSpec s = spec_of(3e-7, 2, 100.0 * k.atomic_mass_unit);
    auto sites = enumerate_sites(s);
    const double ordered = ddp_eta_lattice_sites(sites, s, p, k);
    std::mt19937_64 rng(99);
    std::shuffle(sites.begin(), sites.end(), rng);
    CHECK(ddp_eta_lattice_sites(sites, s, p, k) == ordered);
}
