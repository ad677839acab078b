#include "mlev/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "mlev/errors.hpp"

namespace mlev {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed, bool lax,
                std::vector<std::string>* warnings) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (known)
            continue;
        const std::string msg = "unknown config key '" + path + item.key() + "'";
        if (!lax)
            throw ValidationError(msg);
        if (warnings)
            warnings->push_back(msg + " (ignored)");
    }
}

double get_number(const json& obj, const char* key, const std::string& path,
                  double fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ValidationError(path + key + " must be a number");
    return v.get<double>();
}

bool get_bool(const json& obj, const char* key, const std::string& path,
              bool fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        throw ValidationError(path + key + " must be a boolean");
    return v.get<bool>();
}

std::string get_string(const json& obj, const char* key, const std::string& path,
                       const std::string& fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_string())
        throw ValidationError(path + key + " must be a string");
    return v.get<std::string>();
}

// Temperatures admit the spelling "inf" for the no-dissipation limit.
double temperature_value(const json& v, const std::string& where) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf")
            return kInf;
        throw ValidationError(where + " must be a number or the string \"inf\"");
    }
    if (v.is_number())
        return v.get<double>();
    throw ValidationError(where + " must be a number or the string \"inf\"");
}

json temperature_json(double v) {
    if (std::isinf(v))
        return json("inf");
    return json(v);
}

} // namespace

double RunConfig::gamma0_angular() const {
    return gamma0.linewidth_hz * 2.0 * std::numbers::pi;
}

DcslParams RunConfig::dcsl_params(double T_c) const {
    DcslParams p;
    p.lambda_rate = dcsl.lambda_rate;
    p.r_c = dcsl.r_c;
    p.T_c = T_c;
    p.m_a = dcsl.m_a_u * constants.atomic_mass_unit;
    return p;
}

MassPolicy RunConfig::ddp_policy() const {
    switch (ddp.policy_kind) {
    case MassPolicy::Kind::nucleon:
        return MassPolicy::nucleon();
    case MassPolicy::Kind::fixed_nuclear:
        return MassPolicy::fixed_nuclear(ddp.m_a_u * constants.atomic_mass_unit);
    case MassPolicy::Kind::sphere_of_r0prime:
        return MassPolicy::sphere_of_r0prime(
            ddp.density > 0.0 ? ddp.density : sphere.density);
    }
    throw ValidationError("ddp.mass_policy is out of range");
}

DdpParams RunConfig::ddp_params() const {
    DdpParams p;
    p.R0 = ddp.R0;
    p.T_DP = ddp.T_DP;
    p.mass_policy = ddp_policy();
    p.lattice_constant = ddp.lattice_constant;
    return p;
}

CgfParams RunConfig::cgf_params(std::optional<double> corr_rate) const {
    CgfParams p;
    p.xi = cgf.xi;
    p.r_c = cgf.r_c;
    p.light_speed = !corr_rate.has_value();
    p.corr_rate = corr_rate.value_or(0.0);
    return p;
}

RunConfig default_config() {
    RunConfig cfg;
    cfg.constants = codata();
    cfg.sphere = make_sphere(2.7e-5, 7400.0, 0.7);
    cfg.gas = make_gas(4.002602 * cfg.constants.atomic_mass_unit, 4.2, 300.0);
    return cfg;
}

RunConfig parse_config(const json& doc, bool lax,
                       std::vector<std::string>* warnings) {
    if (!doc.is_object())
        throw ValidationError("config document must be a JSON object");
    check_keys(doc, "",
               {"constants", "sphere", "gas", "gamma0", "dcsl", "ddp", "cgf",
                "grid", "output", "fit"},
               lax, warnings);

    RunConfig cfg = default_config();

    if (doc.contains("constants")) {
        const json& c = doc.at("constants");
        if (!c.is_object())
            throw ValidationError("constants must be an object");
        check_keys(c, "constants.",
                   {"hbar", "k_B", "G", "c", "g", "mu_0", "m_nucleon",
                    "atomic_mass_unit"},
                   lax, warnings);
        cfg.constants.hbar = get_number(c, "hbar", "constants.", cfg.constants.hbar);
        cfg.constants.k_B = get_number(c, "k_B", "constants.", cfg.constants.k_B);
        cfg.constants.G = get_number(c, "G", "constants.", cfg.constants.G);
        cfg.constants.c = get_number(c, "c", "constants.", cfg.constants.c);
        cfg.constants.g = get_number(c, "g", "constants.", cfg.constants.g);
        cfg.constants.mu_0 = get_number(c, "mu_0", "constants.", cfg.constants.mu_0);
        cfg.constants.m_nucleon =
            get_number(c, "m_nucleon", "constants.", cfg.constants.m_nucleon);
        cfg.constants.atomic_mass_unit = get_number(c, "atomic_mass_unit",
                                                    "constants.",
                                                    cfg.constants.atomic_mass_unit);
        cfg.constants.validate();
    }

    if (doc.contains("sphere")) {
        const json& s = doc.at("sphere");
        if (!s.is_object())
            throw ValidationError("sphere must be an object");
        check_keys(s, "sphere.",
                   {"radius_m", "density_kg_m3", "saturation_field_T"}, lax,
                   warnings);
        const double radius = get_number(s, "radius_m", "sphere.", cfg.sphere.radius);
        const double density =
            get_number(s, "density_kg_m3", "sphere.", cfg.sphere.density);
        std::optional<double> sat = cfg.sphere.saturation_field;
        if (s.contains("saturation_field_T"))
            sat = get_number(s, "saturation_field_T", "sphere.", 0.0);
        cfg.sphere = make_sphere(radius, density, sat);
    }

    if (doc.contains("gas")) {
        const json& g = doc.at("gas");
        if (!g.is_object())
            throw ValidationError("gas must be an object");
        check_keys(g, "gas.",
                   {"molecular_mass_u", "temperature_K", "gauge_temperature_K"},
                   lax, warnings);
        const double mm_u = get_number(
            g, "molecular_mass_u", "gas.",
            cfg.gas.molecular_mass / cfg.constants.atomic_mass_unit);
        cfg.gas = make_gas(mm_u * cfg.constants.atomic_mass_unit,
                           get_number(g, "temperature_K", "gas.",
                                      cfg.gas.temperature),
                           get_number(g, "gauge_temperature_K", "gas.",
                                      cfg.gas.gauge_temperature));
    }

    if (doc.contains("gamma0")) {
        const json& g = doc.at("gamma0");
        if (!g.is_object())
            throw ValidationError("gamma0 must be an object");
        check_keys(g, "gamma0.", {"linewidth_hz", "confidence_level"}, lax,
                   warnings);
        cfg.gamma0.linewidth_hz =
            get_number(g, "linewidth_hz", "gamma0.", cfg.gamma0.linewidth_hz);
        cfg.gamma0.confidence_level = get_number(g, "confidence_level", "gamma0.",
                                                 cfg.gamma0.confidence_level);
        if (!(cfg.gamma0.linewidth_hz > 0.0))
            throw ValidationError("gamma0.linewidth_hz must be positive");
        if (!(cfg.gamma0.confidence_level > 0.0 &&
              cfg.gamma0.confidence_level < 1.0))
            throw ValidationError("gamma0.confidence_level must lie in (0, 1)");
    }

    if (doc.contains("dcsl")) {
        const json& d = doc.at("dcsl");
        if (!d.is_object())
            throw ValidationError("dcsl must be an object");
        check_keys(d, "dcsl.", {"lambda_per_s", "r_c_m", "T_c_K", "m_a_u"}, lax,
                   warnings);
        cfg.dcsl.lambda_rate =
            get_number(d, "lambda_per_s", "dcsl.", cfg.dcsl.lambda_rate);
        cfg.dcsl.r_c = get_number(d, "r_c_m", "dcsl.", cfg.dcsl.r_c);
        cfg.dcsl.m_a_u = get_number(d, "m_a_u", "dcsl.", cfg.dcsl.m_a_u);
        if (d.contains("T_c_K")) {
            const json& tc = d.at("T_c_K");
            cfg.dcsl.T_c_values.clear();
            if (tc.is_array()) {
                if (tc.empty())
                    throw ValidationError("dcsl.T_c_K must not be an empty array");
                for (const json& v : tc)
                    cfg.dcsl.T_c_values.push_back(
                        temperature_value(v, "dcsl.T_c_K[]"));
            } else {
                cfg.dcsl.T_c_values.push_back(temperature_value(tc, "dcsl.T_c_K"));
            }
        }
        for (double T : cfg.dcsl.T_c_values)
            if (!(T > 0.0))
                throw ValidationError("dcsl.T_c_K values must be positive");
        if (!(cfg.dcsl.r_c > 0.0))
            throw ValidationError("dcsl.r_c_m must be positive");
        if (!(cfg.dcsl.m_a_u > 0.0))
            throw ValidationError("dcsl.m_a_u must be positive");
        if (!(cfg.dcsl.lambda_rate >= 0.0))
            throw ValidationError("dcsl.lambda_per_s must be non-negative");
    }

    if (doc.contains("ddp")) {
        const json& d = doc.at("ddp");
        if (!d.is_object())
            throw ValidationError("ddp must be an object");
        check_keys(d, "ddp.",
                   {"R0_m", "T_DP_K", "mass_policy", "m_a_u", "density_kg_m3",
                    "regime", "lattice_constant_m", "validity_fraction"},
                   lax, warnings);
        cfg.ddp.R0 = get_number(d, "R0_m", "ddp.", cfg.ddp.R0);
        if (d.contains("T_DP_K"))
            cfg.ddp.T_DP = temperature_value(d.at("T_DP_K"), "ddp.T_DP_K");
        const std::string policy = get_string(d, "mass_policy", "ddp.",
                                              "fixed_nuclear");
        if (policy == "nucleon")
            cfg.ddp.policy_kind = MassPolicy::Kind::nucleon;
        else if (policy == "fixed_nuclear")
            cfg.ddp.policy_kind = MassPolicy::Kind::fixed_nuclear;
        else if (policy == "sphere_of_r0prime")
            cfg.ddp.policy_kind = MassPolicy::Kind::sphere_of_r0prime;
        else
            throw ValidationError("ddp.mass_policy must be one of nucleon, "
                                  "fixed_nuclear, sphere_of_r0prime");
        cfg.ddp.m_a_u = get_number(d, "m_a_u", "ddp.", cfg.ddp.m_a_u);
        cfg.ddp.density = get_number(d, "density_kg_m3", "ddp.", cfg.ddp.density);
        const std::string regime = get_string(d, "regime", "ddp.", "uniform");
        if (regime == "uniform")
            cfg.ddp.regime = DdpRegime::uniform;
        else if (regime == "granular")
            cfg.ddp.regime = DdpRegime::granular;
        else
            throw ValidationError("ddp.regime must be uniform or granular");
        cfg.ddp.lattice_constant = get_number(d, "lattice_constant_m", "ddp.",
                                              cfg.ddp.lattice_constant);
        cfg.ddp.validity_fraction = get_number(d, "validity_fraction", "ddp.",
                                               cfg.ddp.validity_fraction);
        if (!(cfg.ddp.R0 > 0.0))
            throw ValidationError("ddp.R0_m must be positive");
        if (!(cfg.ddp.T_DP > 0.0))
            throw ValidationError("ddp.T_DP_K must be positive");
        if (!(cfg.ddp.m_a_u > 0.0))
            throw ValidationError("ddp.m_a_u must be positive");
        if (cfg.ddp.density < 0.0)
            throw ValidationError("ddp.density_kg_m3 must be non-negative");
        if (!(cfg.ddp.lattice_constant >= 0.0))
            throw ValidationError("ddp.lattice_constant_m must be non-negative");
        if (!(cfg.ddp.validity_fraction > 0.0 && cfg.ddp.validity_fraction <= 1.0))
            throw ValidationError("ddp.validity_fraction must lie in (0, 1]");
    }

    if (doc.contains("cgf")) {
        const json& c = doc.at("cgf");
        if (!c.is_object())
            throw ValidationError("cgf must be an object");
        check_keys(c, "cgf.", {"xi", "r_c_m", "light_speed", "corr_rate_per_s"},
                   lax, warnings);
        cfg.cgf.xi = get_number(c, "xi", "cgf.", cfg.cgf.xi);
        cfg.cgf.r_c = get_number(c, "r_c_m", "cgf.", cfg.cgf.r_c);
        cfg.cgf.light_speed = get_bool(c, "light_speed", "cgf.", cfg.cgf.light_speed);
        if (c.contains("corr_rate_per_s")) {
            const json& cr = c.at("corr_rate_per_s");
            cfg.cgf.corr_rates.clear();
            if (cr.is_array()) {
                for (const json& v : cr) {
                    if (!v.is_number())
                        throw ValidationError("cgf.corr_rate_per_s entries must "
                                              "be numbers");
                    cfg.cgf.corr_rates.push_back(v.get<double>());
                }
            } else if (cr.is_number()) {
                cfg.cgf.corr_rates.push_back(cr.get<double>());
            } else {
                throw ValidationError("cgf.corr_rate_per_s must be a number or "
                                      "an array of numbers");
            }
        }
        if (!(cfg.cgf.xi >= 0.0))
            throw ValidationError("cgf.xi must be non-negative");
        if (!(cfg.cgf.r_c > 0.0))
            throw ValidationError("cgf.r_c_m must be positive");
        for (double r : cfg.cgf.corr_rates)
            if (!(r > 0.0))
                throw ValidationError("cgf.corr_rate_per_s values must be positive");
        if (!cfg.cgf.light_speed && cfg.cgf.corr_rates.empty())
            throw ValidationError("cgf needs light_speed or at least one "
                                  "corr_rate_per_s value");
    }

    if (doc.contains("grid")) {
        const json& g = doc.at("grid");
        if (!g.is_object())
            throw ValidationError("grid must be an object");
        check_keys(g, "grid.", {"min", "max", "points", "log"}, lax, warnings);
        GridConfig grid;
        if (!g.contains("min") || !g.contains("max"))
            throw ValidationError("grid needs both min and max");
        grid.min = get_number(g, "min", "grid.", 0.0);
        grid.max = get_number(g, "max", "grid.", 0.0);
        if (g.contains("points")) {
            const json& p = g.at("points");
            if (!p.is_number_integer())
                throw ValidationError("grid.points must be an integer");
            grid.points = p.get<int>();
        }
        grid.log_spaced = get_bool(g, "log", "grid.", true);
        if (grid.points < 2)
            throw ValidationError("grid.points must be at least 2");
        if (!(grid.max > grid.min))
            throw ValidationError("grid.max must exceed grid.min");
        if (grid.log_spaced && !(grid.min > 0.0))
            throw ValidationError("grid.min must be positive for a log grid");
        cfg.grid = grid;
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        if (!o.is_object())
            throw ValidationError("output must be an object");
        check_keys(o, "output.", {"directory", "csv", "json"}, lax, warnings);
        cfg.output.directory =
            get_string(o, "directory", "output.", cfg.output.directory);
        cfg.output.write_csv = get_bool(o, "csv", "output.", cfg.output.write_csv);
        cfg.output.write_json = get_bool(o, "json", "output.", cfg.output.write_json);
        if (cfg.output.directory.empty())
            throw ValidationError("output.directory must not be empty");
    }

    if (doc.contains("fit")) {
        const json& f = doc.at("fit");
        if (!f.is_object())
            throw ValidationError("fit must be an object");
        check_keys(f, "fit.",
                   {"quantile_family", "noise_floor", "correct_thermomolecular",
                    "confidence_level"},
                   lax, warnings);
        const std::string family =
            get_string(f, "quantile_family", "fit.", "normal");
        if (family == "normal")
            cfg.fit.quantile_family = QuantileFamily::normal;
        else if (family == "student_t")
            cfg.fit.quantile_family = QuantileFamily::student_t;
        else
            throw ValidationError("fit.quantile_family must be normal or "
                                  "student_t");
        cfg.fit.noise_floor =
            get_number(f, "noise_floor", "fit.", cfg.fit.noise_floor);
        cfg.fit.correct_thermomolecular =
            get_bool(f, "correct_thermomolecular", "fit.",
                     cfg.fit.correct_thermomolecular);
        cfg.fit.confidence_level =
            get_number(f, "confidence_level", "fit.", cfg.fit.confidence_level);
        if (!(cfg.fit.noise_floor >= 0.0))
            throw ValidationError("fit.noise_floor must be non-negative");
        if (!(cfg.fit.confidence_level > 0.0 && cfg.fit.confidence_level < 1.0))
            throw ValidationError("fit.confidence_level must lie in (0, 1)");
    }

    return cfg;
}

RunConfig load_config_file(const std::string& path, bool lax,
                           std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config file " + path + ": " + e.what());
    }
    return parse_config(doc, lax, warnings);
}

json canonical_json(const RunConfig& cfg) {
    json doc;
    doc["constants"] = {{"hbar", cfg.constants.hbar},
                        {"k_B", cfg.constants.k_B},
                        {"G", cfg.constants.G},
                        {"c", cfg.constants.c},
                        {"g", cfg.constants.g},
                        {"mu_0", cfg.constants.mu_0},
                        {"m_nucleon", cfg.constants.m_nucleon},
                        {"atomic_mass_unit", cfg.constants.atomic_mass_unit}};
    doc["sphere"] = {{"radius_m", cfg.sphere.radius},
                     {"density_kg_m3", cfg.sphere.density}};
    if (cfg.sphere.saturation_field)
        doc["sphere"]["saturation_field_T"] = *cfg.sphere.saturation_field;
    doc["gas"] = {{"molecular_mass_u",
                   cfg.gas.molecular_mass / cfg.constants.atomic_mass_unit},
                  {"temperature_K", cfg.gas.temperature},
                  {"gauge_temperature_K", cfg.gas.gauge_temperature}};
    doc["gamma0"] = {{"linewidth_hz", cfg.gamma0.linewidth_hz},
                     {"confidence_level", cfg.gamma0.confidence_level}};

    json tc = json::array();
    for (double T : cfg.dcsl.T_c_values)
        tc.push_back(temperature_json(T));
    doc["dcsl"] = {{"lambda_per_s", cfg.dcsl.lambda_rate},
                   {"r_c_m", cfg.dcsl.r_c},
                   {"T_c_K", tc},
                   {"m_a_u", cfg.dcsl.m_a_u}};

    const char* policy = "fixed_nuclear";
    if (cfg.ddp.policy_kind == MassPolicy::Kind::nucleon)
        policy = "nucleon";
    else if (cfg.ddp.policy_kind == MassPolicy::Kind::sphere_of_r0prime)
        policy = "sphere_of_r0prime";
    doc["ddp"] = {{"R0_m", cfg.ddp.R0},
                  {"T_DP_K", temperature_json(cfg.ddp.T_DP)},
                  {"mass_policy", policy},
                  {"m_a_u", cfg.ddp.m_a_u},
                  {"density_kg_m3", cfg.ddp.density},
                  {"regime", cfg.ddp.regime == DdpRegime::uniform ? "uniform"
                                                                  : "granular"},
                  {"lattice_constant_m", cfg.ddp.lattice_constant},
                  {"validity_fraction", cfg.ddp.validity_fraction}};

    doc["cgf"] = {{"xi", cfg.cgf.xi},
                  {"r_c_m", cfg.cgf.r_c},
                  {"light_speed", cfg.cgf.light_speed},
                  {"corr_rate_per_s", cfg.cgf.corr_rates}};

    if (cfg.grid)
        doc["grid"] = {{"min", cfg.grid->min},
                       {"max", cfg.grid->max},
                       {"points", cfg.grid->points},
                       {"log", cfg.grid->log_spaced}};

    doc["output"] = {{"directory", cfg.output.directory},
                     {"csv", cfg.output.write_csv},
                     {"json", cfg.output.write_json}};
    doc["fit"] = {{"quantile_family",
                   cfg.fit.quantile_family == QuantileFamily::normal
                       ? "normal"
                       : "student_t"},
                  {"noise_floor", cfg.fit.noise_floor},
                  {"correct_thermomolecular", cfg.fit.correct_thermomolecular},
                  {"confidence_level", cfg.fit.confidence_level}};
    return doc;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& cfg) {
    const std::string dump = canonical_json(cfg).dump();
    const std::uint64_t h = fnv1a64(dump);
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < 16; ++i)
        buf[15 - i] = hex[(h >> (4 * i)) & 0xF];
    buf[16] = '\0';
    return std::string(buf);
}

} // namespace mlev
