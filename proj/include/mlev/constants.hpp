#pragma once

namespace mlev {

// SI values, CODATA 2018. Every quantity in the library is SI unless a name
// says otherwise (pressures cross the CSV/CLI boundary in mbar, linewidths in Hz).
struct PhysicalConstants {
    double hbar = 1.054571817e-34;             // J s
    double k_B = 1.380649e-23;                 // J/K
    double G = 6.67430e-11;                    // m^3/(kg s^2)
    double c = 2.99792458e8;                   // m/s
    double g = 9.80665;                        // m/s^2
    double mu_0 = 1.2566370614359173e-6;       // N/A^2, 4*pi*1e-7
    double m_nucleon = 1.67492749804e-27;      // kg
    double atomic_mass_unit = 1.66053906660e-27; // kg

    // Throws ValidationError naming the first non-positive field.
    void validate() const;
};

inline PhysicalConstants codata() { return PhysicalConstants{}; }

} // namespace mlev
