#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlev/collapse.hpp"
#include "mlev/constants.hpp"
#include "mlev/numerics.hpp"
#include "mlev/system.hpp"

namespace mlev {

struct GridConfig {
    double min = 0.0;
    double max = 0.0;
    int points = 200;
    bool log_spaced = true;
};

// Model blocks keep the values exactly as configured (nuclear masses in u,
// densities in kg/m^3) so the canonical serialization is stable; SI-ready
// parameter structs are built on demand by the RunConfig helpers.
struct DcslConfig {
    double lambda_rate = 1.0;            // 1/s
    double r_c = 1e-7;                   // m
    std::vector<double> T_c_values{1.0}; // K; +inf spelled "inf" in JSON
    double m_a_u = 100.0;                // u
};

struct DdpConfig {
    double R0 = 1e-7;  // m
    double T_DP = 1.0; // K; +inf spelled "inf" in JSON
    MassPolicy::Kind policy_kind = MassPolicy::Kind::fixed_nuclear;
    double m_a_u = 100.0;  // u, fixed_nuclear only
    double density = 0.0;  // kg/m^3, sphere_of_r0prime only; 0 = sphere material
    DdpRegime regime = DdpRegime::uniform;
    double lattice_constant = 0.0; // m, 0 = unknown
    double validity_fraction = 0.5;
};

struct CgfConfig {
    double xi = 1e-22;
    double r_c = 1e-7;       // m
    bool light_speed = true; // adds the light-speed curve in cmd_exclude
    std::vector<double> corr_rates; // 1/s, one curve each in cmd_exclude
};

struct Gamma0Config {
    double linewidth_hz = 9e-6;
    double confidence_level = 0.90;
};

struct OutputConfig {
    std::string directory = "out";
    bool write_csv = true;
    bool write_json = true;
};

struct FitConfig {
    QuantileFamily quantile_family = QuantileFamily::normal;
    double noise_floor = 0.0;
    bool correct_thermomolecular = false;
    double confidence_level = 0.90;
};

struct RunConfig {
    PhysicalConstants constants;
    SphereSpec sphere;
    GasSpec gas;
    DcslConfig dcsl;
    DdpConfig ddp;
    CgfConfig cgf;
    std::optional<GridConfig> grid; // per-model default when absent
    Gamma0Config gamma0;
    OutputConfig output;
    FitConfig fit;

    double gamma0_angular() const; // 1/s, from the configured linewidth

    DcslParams dcsl_params(double T_c) const;
    MassPolicy ddp_policy() const;
    DdpParams ddp_params() const;
    CgfParams cgf_params(std::optional<double> corr_rate) const;
};

RunConfig default_config();

// Parse a config document. Strict mode rejects unknown keys with the offending
// JSON path; lax mode downgrades that to a warning. Values are range-checked.
RunConfig parse_config(const nlohmann::json& doc, bool lax = false,
                       std::vector<std::string>* warnings = nullptr);

RunConfig load_config_file(const std::string& path, bool lax = false,
                           std::vector<std::string>* warnings = nullptr);

// Full resolved config, defaults materialized, keys sorted, infinities
// spelled "inf". Serializing twice yields identical text; parsing it back
// reproduces every value bit-exactly.
nlohmann::json canonical_json(const RunConfig& cfg);

// FNV-1a 64-bit over the canonical compact dump, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace mlev
