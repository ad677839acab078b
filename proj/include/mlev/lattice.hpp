#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "mlev/collapse.hpp"
#include "mlev/constants.hpp"

namespace mlev {

// Cubic lattice of point constituents filling a ball: all integer triples n
// with |n|^2 <= n_max^2, each carrying cell_mass, spaced by lattice_constant.
struct LatticeSpec {
    double lattice_constant = 0.0; // m
    int n_max = 0;
    double cell_mass = 0.0;        // kg
    std::size_t site_cap = 1'000'000;      // enumeration guard
    std::size_t pair_cap = 30'000'000;     // ordered-pair budget for the double sums
};

// Sites in lexicographic (x, y, z) order. Throws ValidationError when the
// count would exceed site_cap.
std::vector<std::array<int, 3>> enumerate_sites(const LatticeSpec& spec);

// Brute-force double-sum eta for the dCSL model over explicit point masses.
// Slow but assumption-free; exists to validate the closed forms.
double dcsl_eta_lattice(const LatticeSpec& spec, const DcslParams& p,
                        const PhysicalConstants& k);
double dcsl_eta_lattice_sites(const std::vector<std::array<int, 3>>& sites,
                              const LatticeSpec& spec, const DcslParams& p,
                              const PhysicalConstants& k);

// Same for the dDP model.
double ddp_eta_lattice(const LatticeSpec& spec, const DdpParams& p,
                       const PhysicalConstants& k);
double ddp_eta_lattice_sites(const std::vector<std::array<int, 3>>& sites,
                             const LatticeSpec& spec, const DdpParams& p,
                             const PhysicalConstants& k);

// Angular pair kernel of the dDP double sum for a displacement dn (lattice
// units) at scale ratio a/R0'. Dimensionless; even in dn.
double ddp_pair_kernel(const std::array<int, 3>& dn, double a_over_r0prime);

} // namespace mlev
