#pragma once

#include <optional>

#include "mlev/constants.hpp"

namespace mlev {

// A homogeneous levitated sphere. mass and volume are derived from radius and
// density at construction; use make_sphere so the redundancy stays consistent.
struct SphereSpec {
    double radius = 0.0;   // m
    double density = 0.0;  // kg/m^3
    double mass = 0.0;     // kg, (4*pi/3) * density * radius^3
    double volume = 0.0;   // m^3
    std::optional<double> saturation_field; // T, mu_0 * M_s; needed only by trap_frequency
};

SphereSpec make_sphere(double radius, double density,
                       std::optional<double> saturation_field = std::nullopt);

// Residual gas around the sphere. gauge_temperature is where the pressure is
// read; temperature is at the particle (they differ in the free-molecular regime).
struct GasSpec {
    double molecular_mass = 0.0;   // kg
    double temperature = 0.0;      // K
    double gauge_temperature = 0.0; // K
};

GasSpec make_gas(double molecular_mass, double temperature, double gauge_temperature);

// How to pick the reference mass m_a that collapse rates are normalized to.
struct MassPolicy {
    enum class Kind { nucleon, fixed_nuclear, sphere_of_r0prime };

    Kind kind = Kind::fixed_nuclear;
    double mass = 0.0;     // kg, fixed_nuclear
    double density = 0.0;  // kg/m^3, sphere_of_r0prime

    static MassPolicy nucleon();
    static MassPolicy fixed_nuclear(double mass_kg);
    static MassPolicy sphere_of_r0prime(double density);
};

// Resolve a policy to kilograms. sphere_of_r0prime needs the (already resolved)
// effective radius; the other kinds ignore it.
double reference_mass(const MassPolicy& policy, const PhysicalConstants& k,
                      double r0prime = 0.0);

} // namespace mlev
