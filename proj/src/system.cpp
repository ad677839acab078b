#include "mlev/system.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mlev/errors.hpp"

namespace mlev {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string(field) + " must be a positive finite number");
}

} // namespace

void PhysicalConstants::validate() const {
    require_positive(hbar, "constants.hbar");
    require_positive(k_B, "constants.k_B");
    require_positive(G, "constants.G");
    require_positive(c, "constants.c");
    require_positive(g, "constants.g");
    require_positive(mu_0, "constants.mu_0");
    require_positive(m_nucleon, "constants.m_nucleon");
    require_positive(atomic_mass_unit, "constants.atomic_mass_unit");
}

SphereSpec make_sphere(double radius, double density,
                       std::optional<double> saturation_field) {
    require_positive(radius, "sphere.radius");
    require_positive(density, "sphere.density");
    if (saturation_field)
        require_positive(*saturation_field, "sphere.saturation_field");

    SphereSpec s;
    s.radius = radius;
    s.density = density;
    s.volume = (4.0 * std::numbers::pi / 3.0) * radius * radius * radius;
    s.mass = density * s.volume;
    s.saturation_field = saturation_field;
    return s;
}

GasSpec make_gas(double molecular_mass, double temperature, double gauge_temperature) {
    require_positive(molecular_mass, "gas.molecular_mass");
    require_positive(temperature, "gas.temperature");
    require_positive(gauge_temperature, "gas.gauge_temperature");
    return GasSpec{molecular_mass, temperature, gauge_temperature};
}

MassPolicy MassPolicy::nucleon() {
    MassPolicy p;
    p.kind = Kind::nucleon;
    return p;
}

MassPolicy MassPolicy::fixed_nuclear(double mass_kg) {
    MassPolicy p;
    p.kind = Kind::fixed_nuclear;
    p.mass = mass_kg;
    return p;
}

MassPolicy MassPolicy::sphere_of_r0prime(double density) {
    MassPolicy p;
    p.kind = Kind::sphere_of_r0prime;
    p.density = density;
    return p;
}

double reference_mass(const MassPolicy& policy, const PhysicalConstants& k,
                      double r0prime) {
    switch (policy.kind) {
    case MassPolicy::Kind::nucleon:
        return k.m_nucleon;
    case MassPolicy::Kind::fixed_nuclear:
        require_positive(policy.mass, "mass_policy.mass");
        return policy.mass;
    case MassPolicy::Kind::sphere_of_r0prime:
        require_positive(policy.density, "mass_policy.density");
        require_positive(r0prime, "mass_policy r0prime");
        return policy.density * (4.0 * std::numbers::pi / 3.0) * r0prime * r0prime *
               r0prime;
    }
    throw ValidationError("mass_policy.kind is out of range");
}

} // namespace mlev
