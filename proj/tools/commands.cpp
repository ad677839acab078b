#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "mlev/collapse.hpp"
#include "mlev/config.hpp"
#include "mlev/csvio.hpp"
#include "mlev/errors.hpp"
#include "mlev/exclusion.hpp"
#include "mlev/lattice.hpp"
#include "mlev/measurement.hpp"

namespace mlev::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RunConfig resolve_config(const CommonArgs& args, std::vector<std::string>* warnings) {
    RunConfig cfg = args.config_path.empty()
                        ? default_config()
                        : load_config_file(args.config_path, args.lax, warnings);
    if (args.gamma0_hz) {
        if (!(*args.gamma0_hz > 0.0))
            throw ValidationError("--gamma0-hz must be positive");
        cfg.gamma0.linewidth_hz = *args.gamma0_hz;
    }
    if (args.confidence) {
        if (!(*args.confidence > 0.0 && *args.confidence < 1.0))
            throw ValidationError("--confidence must lie strictly in (0, 1)");
        cfg.gamma0.confidence_level = *args.confidence;
        cfg.fit.confidence_level = *args.confidence;
    }
    if (args.out_dir)
        cfg.output.directory = *args.out_dir;
    if (args.noise_floor) {
        if (!(*args.noise_floor >= 0.0))
            throw ValidationError("--noise-floor must be non-negative");
        cfg.fit.noise_floor = *args.noise_floor;
    }
    if (args.correct_thermomolecular)
        cfg.fit.correct_thermomolecular = true;
    if (args.quantile_family) {
        if (*args.quantile_family == "normal")
            cfg.fit.quantile_family = QuantileFamily::normal;
        else if (*args.quantile_family == "student_t")
            cfg.fit.quantile_family = QuantileFamily::student_t;
        else
            throw ValidationError("--quantile-family must be normal or student_t");
    }
    if (args.grid_spec) {
        // min,max,points,log|lin
        const std::string& s = *args.grid_spec;
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        parts.push_back(cur);
        if (parts.size() != 4)
            throw ValidationError("--grid expects min,max,points,log|lin");
        GridConfig grid;
        auto parse_num = [&](const std::string& tok, const char* what) {
            double v = 0.0;
            const std::from_chars_result res =
                std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
                throw ValidationError(std::string("--grid ") + what +
                                      " is not a number: '" + tok + "'");
            return v;
        };
        grid.min = parse_num(parts[0], "min");
        grid.max = parse_num(parts[1], "max");
        const double pts = parse_num(parts[2], "points");
        grid.points = static_cast<int>(pts);
        if (grid.points != pts || grid.points < 2)
            throw ValidationError("--grid points must be an integer >= 2");
        if (parts[3] == "log")
            grid.log_spaced = true;
        else if (parts[3] == "lin" || parts[3] == "linear")
            grid.log_spaced = false;
        else
            throw ValidationError("--grid spacing must be log or lin");
        if (!(grid.max > grid.min))
            throw ValidationError("--grid max must exceed min");
        if (grid.log_spaced && !(grid.min > 0.0))
            throw ValidationError("--grid min must be positive for log spacing");
        cfg.grid = grid;
    }
    if (args.threads < 1)
        throw ValidationError("--threads must be at least 1");
    return cfg;
}

void check_model_name(const std::string& model) {
    if (model != "dcsl" && model != "ddp" && model != "cgf")
        throw ValidationError("--model must be one of dcsl, ddp, cgf");
}

GridConfig model_default_grid(const std::string& model) {
    GridConfig g;
    if (model == "dcsl") {
        g.min = 1e-9;
        g.max = 1e-3;
    } else if (model == "ddp") {
        g.min = 1e-9;
        g.max = 1e-4;
    } else {
        g.min = 1e-8;
        g.max = 1e-2;
    }
    return g;
}

// Shortest round-trip decimal, '+' dropped so the text can live in filenames.
std::string short_num(double v) {
    char buf[64];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    s.erase(std::remove(s.begin(), s.end(), '+'), s.end());
    return s;
}

void emit_report(const json& doc) { std::cout << doc.dump(2) << "\n"; }

json warnings_json(const std::vector<std::string>& warnings) {
    json arr = json::array();
    for (const std::string& w : warnings)
        arr.push_back(w);
    return arr;
}

struct CurveJob {
    std::string file_stem;
    ExclusionCurve curve;
};

std::vector<CurveJob> build_curves(const RunConfig& cfg, const std::string& model,
                                   int threads) {
    const GridConfig grid = cfg.grid ? *cfg.grid : model_default_grid(model);
    const std::vector<double> xs =
        make_grid(grid.min, grid.max, grid.points, grid.log_spaced);
    const double gamma0 = cfg.gamma0_angular();

    std::vector<CurveJob> jobs;
    if (model == "dcsl") {
        const double m_a = cfg.dcsl.m_a_u * cfg.constants.atomic_mass_unit;
        for (double T_c : cfg.dcsl.T_c_values) {
            CurveJob job;
            job.file_stem = "dcsl_Tc_" +
                            (std::isinf(T_c) ? std::string("inf") : short_num(T_c));
            job.curve = dcsl_curve(xs, T_c, gamma0, cfg.sphere, m_a,
                                   cfg.constants, threads);
            jobs.push_back(std::move(job));
        }
    } else if (model == "ddp") {
        DdpBoundOptions opt;
        opt.validity_fraction = cfg.ddp.validity_fraction;
        CurveJob job;
        const char* policy = "fixed_nuclear";
        if (cfg.ddp.policy_kind == MassPolicy::Kind::nucleon)
            policy = "nucleon";
        else if (cfg.ddp.policy_kind == MassPolicy::Kind::sphere_of_r0prime)
            policy = "sphere_of_r0prime";
        job.file_stem = std::string("ddp_") + policy + "_" +
                        (cfg.ddp.regime == DdpRegime::uniform ? "uniform"
                                                              : "granular");
        job.curve = ddp_curve(xs, gamma0, cfg.sphere, cfg.ddp_policy(),
                              cfg.ddp.regime, cfg.constants, opt, threads);
        jobs.push_back(std::move(job));
    } else {
        if (cfg.cgf.light_speed) {
            CurveJob job;
            job.file_stem = "cgf_light_speed";
            job.curve = cgf_curve(xs, std::nullopt, gamma0, cfg.sphere,
                                  cfg.constants, threads);
            jobs.push_back(std::move(job));
        }
        for (double rate : cfg.cgf.corr_rates) {
            CurveJob job;
            job.file_stem = "cgf_rate_" + short_num(rate);
            job.curve = cgf_curve(xs, rate, gamma0, cfg.sphere, cfg.constants,
                                  threads);
            jobs.push_back(std::move(job));
        }
        if (jobs.empty())
            throw ValidationError("cgf config requests no curves: enable "
                                  "light_speed or set corr_rate_per_s");
    }
    return jobs;
}

} // namespace

int cmd_predict(const CommonArgs& args, const std::string& model) {
    check_model_name(model);
    std::vector<std::string> warnings;
    const RunConfig cfg = resolve_config(args, &warnings);

    json report;
    report["model"] = model;
    report["config_hash"] = config_hash(cfg);

    if (model == "dcsl") {
        if (cfg.dcsl.T_c_values.size() != 1)
            throw ValidationError("predict needs a single dcsl.T_c_K value, got " +
                                  std::to_string(cfg.dcsl.T_c_values.size()));
        const DcslParams p = cfg.dcsl_params(cfg.dcsl.T_c_values.front());
        const RatePrediction rates = dcsl_rates(cfg.sphere, p, cfg.constants);
        report["parameters"] = {{"lambda_per_s", p.lambda_rate},
                                {"r_c_m", p.r_c},
                                {"T_c_K", std::isinf(p.T_c) ? json("inf")
                                                            : json(p.T_c)},
                                {"m_a_kg", p.m_a}};
        report["chi"] = p.chi(cfg.constants);
        report["eta_per_m2_s"] = rates.eta;
        report["gamma_per_s"] = rates.gamma;
        report["gamma_linewidth_hz"] = rates.gamma / kTwoPi;
        if (cfg.sphere.radius < 10.0 * p.r_c_prime(cfg.constants))
            warnings.push_back("sphere radius is under 10 dressed correlation "
                               "lengths; the uniform-sphere closed form is "
                               "near its small-sphere edge");
    } else if (model == "ddp") {
        const DdpParams p = cfg.ddp_params();
        const DdpResolved r = ddp_resolve(p, cfg.constants);
        double eta;
        if (cfg.ddp.regime == DdpRegime::uniform) {
            eta = ddp_rates_uniform(cfg.sphere, p, cfg.constants).eta;
        } else {
            eta = ddp_eta_granular(p, cfg.sphere.mass, cfg.constants, &warnings);
        }
        const double gamma = ddp_gamma(cfg.sphere, p, cfg.ddp.regime, cfg.constants);
        report["parameters"] = {
            {"R0_m", p.R0},
            {"T_DP_K", std::isinf(p.T_DP) ? json("inf") : json(p.T_DP)},
            {"mass_policy", std::string(
                 p.mass_policy.kind == MassPolicy::Kind::nucleon ? "nucleon"
                 : p.mass_policy.kind == MassPolicy::Kind::fixed_nuclear
                     ? "fixed_nuclear"
                     : "sphere_of_r0prime")},
            {"regime", cfg.ddp.regime == DdpRegime::uniform ? "uniform"
                                                            : "granular"},
            {"m_a_kg", r.m_a},
            {"R0_prime_m", r.r0_prime}};
        report["chi"] = r.chi;
        report["eta_per_m2_s"] = eta;
        report["gamma_per_s"] = gamma;
        report["gamma_linewidth_hz"] = gamma / kTwoPi;
        if (p.mass_policy.kind == MassPolicy::Kind::sphere_of_r0prime &&
            r.r0_prime > cfg.ddp.validity_fraction * cfg.sphere.radius)
            warnings.push_back("effective constituent radius exceeds " +
                               std::to_string(cfg.ddp.validity_fraction) +
                               " of the sphere radius; prediction is outside "
                               "the model's validity range");
    } else {
        if (!cfg.cgf.light_speed && cfg.cgf.corr_rates.size() != 1)
            throw ValidationError("predict needs light_speed or a single "
                                  "cgf.corr_rate_per_s value");
        std::optional<double> rate;
        if (!cfg.cgf.light_speed)
            rate = cfg.cgf.corr_rates.front();
        const CgfParams p = cfg.cgf_params(rate);
        const double gamma = cgf_gamma(cfg.sphere, p, cfg.constants);
        report["parameters"] = {{"xi", p.xi},
                                {"r_c_m", p.r_c},
                                {"corr_rate_per_s", p.effective_rate(cfg.constants)},
                                {"light_speed", p.light_speed}};
        report["gamma_per_s"] = gamma;
        report["gamma_linewidth_hz"] = gamma / kTwoPi;
    }

    report["warnings"] = warnings_json(warnings);
    emit_report(report);
    return 0;
}

int cmd_exclude(const CommonArgs& args, const std::string& model) {
    check_model_name(model);
    std::vector<std::string> warnings;
    const RunConfig cfg = resolve_config(args, &warnings);
    const std::string hash = config_hash(cfg);

    std::optional<std::string> overlay_name;
    std::string overlay_bytes;
    if (args.overlay_path) {
        load_polyline_csv(*args.overlay_path); // validates the table
        std::ifstream in(*args.overlay_path, std::ios::binary);
        if (!in)
            throw ValidationError("cannot open overlay file: " + *args.overlay_path);
        overlay_bytes.assign(std::istreambuf_iterator<char>(in),
                             std::istreambuf_iterator<char>());
        overlay_name =
            "overlay_" + fs::path(*args.overlay_path).filename().string();
    }

    const std::vector<CurveJob> jobs = build_curves(cfg, model, args.threads);

    const fs::path out_dir(cfg.output.directory);
    fs::create_directories(out_dir);

    json summary;
    summary["model"] = model;
    summary["config_hash"] = hash;
    summary["output_directory"] = out_dir.string();
    summary["files"] = json::array();

    for (const CurveJob& job : jobs) {
        const std::string csv_name = job.file_stem + ".csv";
        const CurveMinimum lo = curve_minimum(job.curve);

        std::size_t finite = 0;
        for (const CurvePoint& p : job.curve.points)
            if (p.y)
                ++finite;

        if (cfg.output.write_csv) {
            std::vector<std::pair<std::string, std::string>> meta;
            meta.emplace_back("model", job.curve.model);
            meta.emplace_back("config_hash", hash);
            meta.emplace_back("gamma0_linewidth_hz",
                              format_g17(cfg.gamma0.linewidth_hz));
            meta.emplace_back("gamma0_per_s", format_g17(job.curve.gamma0));
            meta.emplace_back("confidence_level",
                              format_g17(cfg.gamma0.confidence_level));
            for (const auto& [key, value] : job.curve.fixed_params)
                meta.emplace_back(key, value);
            if (overlay_name)
                meta.emplace_back("overlay_file", *overlay_name);
            write_curve_csv(out_dir / csv_name, job.curve, meta);
            summary["files"].push_back(csv_name);
        }

        if (cfg.output.write_json) {
            json side;
            side["model"] = job.curve.model;
            side["csv"] = csv_name;
            side["abscissa"] = job.curve.abscissa;
            side["ordinate"] = job.curve.ordinate;
            side["config_hash"] = hash;
            side["gamma0_linewidth_hz"] = cfg.gamma0.linewidth_hz;
            side["gamma0_per_s"] = job.curve.gamma0;
            side["confidence_level"] = cfg.gamma0.confidence_level;
            side["points"] = job.curve.points.size();
            side["finite_points"] = finite;
            side["fixed_params"] = json::object();
            for (const auto& [key, value] : job.curve.fixed_params)
                side["fixed_params"][key] = value;
            if (lo.found)
                side["minimum"] = {{"x", lo.x}, {"y", lo.y}};
            else
                side["minimum"] = nullptr;
            double best_y = 0.0, best_x = 0.0;
            bool any = false;
            for (const CurvePoint& p : job.curve.points)
                if (p.y && (!any || *p.y > best_y)) {
                    any = true;
                    best_x = p.x;
                    best_y = *p.y;
                }
            if (any)
                side["maximum"] = {{"x", best_x}, {"y", best_y}};
            else
                side["maximum"] = nullptr;
            if (overlay_name)
                side["overlay_file"] = *overlay_name;
            std::ofstream side_out(out_dir / (job.file_stem + ".json"),
                                   std::ios::binary);
            if (!side_out)
                throw ValidationError("cannot open output file: " +
                                      (out_dir / (job.file_stem + ".json")).string());
            side_out << side.dump(2) << "\n";
            summary["files"].push_back(job.file_stem + ".json");
        }
    }

    if (overlay_name) {
        std::ofstream out(out_dir / *overlay_name, std::ios::binary);
        if (!out)
            throw ValidationError("cannot open output file: " +
                                  (out_dir / *overlay_name).string());
        out << overlay_bytes;
        summary["files"].push_back(*overlay_name);
    }

    summary["warnings"] = warnings_json(warnings);
    emit_report(summary);
    return 0;
}

int cmd_fit_ringdown(const CommonArgs& args, const std::string& csv_path) {
    std::vector<std::string> warnings;
    const RunConfig cfg = resolve_config(args, &warnings);

    RingdownSeries series = load_ringdown_csv(csv_path);
    series.noise_floor = cfg.fit.noise_floor;
    const RingdownFit fit = fit_ringdown(series);

    json report;
    report["input"] = csv_path;
    report["n_samples"] = series.samples.size();
    report["noise_floor"] = series.noise_floor;
    report["tau_s"] = fit.tau;
    report["tau_sigma_s"] = fit.tau_sigma;
    report["gamma_per_s"] = fit.gamma;
    report["gamma_sigma_per_s"] = 2.0 * fit.tau_sigma / (fit.tau * fit.tau);
    report["gamma_linewidth_hz"] = fit.gamma_linewidth_hz;
    report["gamma_linewidth_sigma_hz"] =
        2.0 * fit.tau_sigma / (fit.tau * fit.tau) / kTwoPi;
    report["amplitude0"] = fit.amplitude0;
    report["chi2_reduced"] = fit.chi2_reduced;
    std::vector<std::string> all = warnings;
    all.insert(all.end(), fit.warnings.begin(), fit.warnings.end());
    report["warnings"] = warnings_json(all);
    emit_report(report);
    return 0;
}

int cmd_fit_pressure(const CommonArgs& args, const std::string& csv_path) {
    std::vector<std::string> warnings;
    const RunConfig cfg = resolve_config(args, &warnings);

    PressureSeries series = load_pressure_csv(csv_path);
    series.confidence_level = cfg.fit.confidence_level;
    if (cfg.fit.correct_thermomolecular)
        for (PressurePoint& p : series.points)
            p.pressure = thermomolecular_correct(p.pressure, cfg.gas);

    const DampingBound bound =
        fit_pressure_extrapolation(series, cfg.fit.quantile_family);

    json report;
    report["input"] = csv_path;
    report["n_points"] = series.points.size();
    report["thermomolecular_corrected"] = cfg.fit.correct_thermomolecular;
    report["quantile_family"] =
        cfg.fit.quantile_family == QuantileFamily::normal ? "normal" : "student_t";
    report["confidence_level"] = bound.confidence_level;
    report["coefficients"] = {{"c0_hz", bound.fit_coefficients[0]},
                              {"c1_hz_per_mbar", bound.fit_coefficients[1]},
                              {"c2_hz_per_mbar2", bound.fit_coefficients[2]}};
    report["coefficient_sigmas"] = {
        {"c0_hz", std::sqrt(bound.covariance[0][0])},
        {"c1_hz_per_mbar", std::sqrt(bound.covariance[1][1])},
        {"c2_hz_per_mbar2", std::sqrt(bound.covariance[2][2])}};
    json cov = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j)
            row.push_back(bound.covariance[i][j]);
        cov.push_back(row);
    }
    report["covariance"] = cov;
    report["chi2_reduced"] = bound.chi2_reduced;
    report["gamma0_linewidth_hz_upper"] = bound.gamma0_linewidth_hz;
    report["gamma0_per_s_upper"] = bound.gamma0_linewidth_hz * kTwoPi;
    report["warnings"] = warnings_json(warnings);
    emit_report(report);
    return 0;
}

int cmd_validate(const CommonArgs& args) {
    std::vector<std::string> warnings;
    const RunConfig cfg = resolve_config(args, &warnings);
    const PhysicalConstants& k = cfg.constants;

    json checks = json::array();
    bool all_pass = true;
    auto add_check = [&](const std::string& name, bool pass, double measured,
                         double tolerance, const std::string& note = "") {
        json entry;
        entry["name"] = name;
        entry["pass"] = pass;
        entry["measured"] = measured;
        entry["tolerance"] = tolerance;
        if (!note.empty())
            entry["note"] = note;
        checks.push_back(entry);
        all_pass = all_pass && pass;
    };

    // Quadrature against the closed-form sphere rate over a chi x size grid.
    {
        double worst = 0.0;
        const double chis[4] = {0.0, 1e-3, 1.0, 10.0};
        const std::vector<double> ratios = make_grid(1e-2, 1e2, 9, true);
        for (double chi : chis) {
            for (double ratio : ratios) {
                DcslParams p;
                p.lambda_rate = 1.0;
                p.m_a = 100.0 * k.atomic_mass_unit;
                p.r_c = cfg.sphere.radius / ratio;
                p.T_c = (chi == 0.0)
                            ? std::numeric_limits<double>::infinity()
                            : k.hbar * k.hbar /
                                  (8.0 * p.m_a * p.r_c * p.r_c * k.k_B * chi);
                const double closed = dcsl_rates(cfg.sphere, p, k).eta;
                auto ff = [&](double q) {
                    return sphere_form_factor(q, cfg.sphere, k);
                };
                const double quad = dcsl_eta_quadrature(ff, p, k);
                worst = std::max(worst, std::abs(quad / closed - 1.0));
            }
        }
        add_check("quadrature_vs_closed_form", worst < 1e-6, worst, 1e-6);
    }

    // Point-lattice double sums against the granular closed forms at a
    // spacing where cross terms are negligible.
    {
        double worst = 0.0;
        for (int n_max : {2, 4}) {
            DcslParams p;
            p.lambda_rate = 1.0;
            p.m_a = 100.0 * k.atomic_mass_unit;
            p.r_c = 1e-7;
            p.T_c = 1.0;
            LatticeSpec spec;
            spec.n_max = n_max;
            spec.cell_mass = p.m_a;
            spec.lattice_constant = 20.0 * p.r_c_prime(k);
            const auto sites = enumerate_sites(spec);
            const double lattice = dcsl_eta_lattice_sites(sites, spec, p, k);
            const double closed = dcsl_eta_granular(
                p, spec.cell_mass * static_cast<double>(sites.size()), k);
            worst = std::max(worst, std::abs(lattice / closed - 1.0));
        }
        add_check("lattice_dcsl_vs_granular", worst < 1e-10, worst, 1e-10);

        worst = 0.0;
        for (int n_max : {2, 4}) {
            DdpParams p;
            p.R0 = 1e-7;
            p.T_DP = 1.0;
            p.mass_policy = MassPolicy::fixed_nuclear(100.0 * k.atomic_mass_unit);
            const DdpResolved r = ddp_resolve(p, k);
            LatticeSpec spec;
            spec.n_max = n_max;
            spec.cell_mass = r.m_a;
            spec.lattice_constant = 20.0 * r.r0_prime;
            const auto sites = enumerate_sites(spec);
            const double lattice = ddp_eta_lattice_sites(sites, spec, p, k);
            const double closed = ddp_eta_granular(
                p, spec.cell_mass * static_cast<double>(sites.size()), k);
            worst = std::max(worst, std::abs(lattice / closed - 1.0));
        }
        add_check("lattice_ddp_vs_granular", worst < 1e-6, worst, 1e-6);
    }

    // A sphere much smaller than the regularization radius must join the
    // point-constituent form with the whole sphere as the single granule.
    {
        DdpParams p;
        p.R0 = cfg.sphere.radius / 1e-2;
        p.T_DP = std::numeric_limits<double>::infinity();
        p.mass_policy = MassPolicy::fixed_nuclear(cfg.sphere.mass);
        const double uniform = ddp_rates_uniform(cfg.sphere, p, k).eta;
        const double granular = ddp_eta_granular(p, cfg.sphere.mass, k);
        const double dev = std::abs(uniform / granular - 1.0);
        add_check("ddp_uniform_vs_granular_limit", dev < 1e-3, dev, 1e-3);
    }

    // Two algebraically equivalent damping expressions.
    {
        DcslParams p;
        p.lambda_rate = 1.0;
        p.m_a = 100.0 * k.atomic_mass_unit;
        p.r_c = 1e-7;
        p.T_c = 1.0;
        const double gamma = dcsl_rates(cfg.sphere, p, k).gamma;
        const double y = cfg.sphere.radius / p.r_c_prime(k);
        const double direct = 3.0 * p.lambda_rate * k.hbar * k.hbar *
                              cfg.sphere.mass * p.r_c * p.r_c * shape_k(y) /
                              (2.0 * k.k_B * p.T_c * k.m_nucleon * k.m_nucleon *
                               std::pow(cfg.sphere.radius, 4));
        const double dev = std::abs(gamma / direct - 1.0);
        add_check("dcsl_damping_identity", dev < 1e-12, dev, 1e-12);
    }

    // Free-molecular damping vs the measured slope of the reference run.
    // Known ~2x mismatch; reported, not hidden.
    {
        const double computed = epstein_linewidth_hz(1.0, cfg.sphere, cfg.gas, k);
        const double measured_slope = 1.9; // Hz/mbar, reference measurement
        const double ratio = computed / measured_slope;
        add_check("gas_damping_slope_vs_reference", true, ratio, 0.0,
                  "informational: computed free-molecular slope is " +
                      format_g17(computed) +
                      " Hz/mbar, about 2x the measured reference slope; see "
                      "README for discussion");
    }

    json report;
    report["checks"] = checks;
    report["passed"] = all_pass;
    report["config_hash"] = config_hash(cfg);
    report["warnings"] = warnings_json(warnings);
    emit_report(report);
    return all_pass ? 0 : 1;
}

} // namespace mlev::cli
