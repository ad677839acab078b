#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "mlev_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    ++counter;
    const fs::path out = scratch_dir() / ("stdout" + std::to_string(counter));
    const fs::path err = scratch_dir() / ("stderr" + std::to_string(counter));
    const std::string cmd = std::string(MLEV_CLI_BIN) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(MLEV_FIXTURE_DIR) + "/" + name;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p;
}

} // namespace

TEST_CASE("cli: predict dcsl with defaults") {
    CliResult r = run_cli("predict --model dcsl");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("model") == "dcsl");
    CHECK(j.at("config_hash") == "e4e07ca8225ebe94");
    CHECK(j.at("gamma_per_s").get<double>() ==
          doctest::Approx(4944.392313781863).epsilon(1e-12));
    CHECK(j.at("eta_per_m2_s").get<double>() ==
          doctest::Approx(7.490063067310572e+39).epsilon(1e-12));
    CHECK(j.at("chi").get<double>() ==
          doctest::Approx(6.063591765186245e-08).epsilon(1e-12));
    CHECK(j.at("gamma_linewidth_hz").get<double>() ==
          doctest::Approx(4944.392313781863 / (2.0 * 3.14159265358979324))
              .epsilon(1e-12));
    CHECK(j.at("warnings").empty());
}

TEST_CASE("cli: predict without dissipation reports zero damping") {
    const fs::path cfg = write_config("tc_inf.json",
                                      R"({"dcsl": {"T_c_K": "inf"}})");
    CliResult r = run_cli("predict --model dcsl --config " + cfg.string());
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("gamma_per_s").get<double>() == 0.0);
    CHECK(j.at("chi").get<double>() == 0.0);
    CHECK(j.at("eta_per_m2_s").get<double>() > 0.0);
}

TEST_CASE("cli: argument and input errors exit with code 2") {
    CHECK(run_cli("predict --model xyz").code == 2);
    CHECK(run_cli("predict").code == 2);
    CHECK(run_cli("").code == 2);

    CliResult missing =
        run_cli("predict --model dcsl --config /nonexistent/cfg.json");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("cannot open config file") != std::string::npos);

    const fs::path cfg = write_config("unknown_key.json",
                                      R"({"dcsl": {"rc_m": 1e-7}})");
    CliResult strict = run_cli("predict --model dcsl --config " + cfg.string());
    CHECK(strict.code == 2);
    CHECK(strict.err.find("unknown config key 'dcsl.rc_m'") != std::string::npos);

    CliResult lax =
        run_cli("predict --model dcsl --lax --config " + cfg.string());
    CHECK(lax.code == 0);
    const json j = json::parse(lax.out);
    REQUIRE(!j.at("warnings").empty());
    CHECK(j.at("warnings")[0].get<std::string>().find("ignored") !=
          std::string::npos);

    CliResult grid = run_cli("exclude --model dcsl --grid 1e-9,bogus,5,log");
    CHECK(grid.code == 2);
    CHECK(grid.err.find("--grid max is not a number") != std::string::npos);
}

TEST_CASE("cli: broken measurement tables exit with code 2 and name the fault") {
    CliResult bad = run_cli("fit-ringdown " + fixture("ringdown_malformed.csv"));
    CHECK(bad.code == 2);
    CHECK(bad.err.find("cannot parse 'xyz'") != std::string::npos);

    CliResult times = run_cli("fit-ringdown " + fixture("ringdown_bad_times.csv"));
    CHECK(times.code == 2);
    CHECK(times.err.find("strictly increasing") != std::string::npos);

    CliResult flat = run_cli("fit-ringdown " + fixture("ringdown_flat.csv"));
    CHECK(flat.code == 2);
    CHECK(flat.err.find("no decay") != std::string::npos);
}

TEST_CASE("cli: fit-ringdown recovers the clean decay") {
    CliResult r = run_cli("fit-ringdown " + fixture("ringdown_clean.csv"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("n_samples") == 60);
    CHECK(j.at("tau_s").get<double>() ==
          doctest::Approx(1.19e4).epsilon(1e-10));
    CHECK(j.at("gamma_per_s").get<double>() ==
          doctest::Approx(0.0001680672268907563).epsilon(1e-10));
    CHECK(j.at("gamma_linewidth_hz").get<double>() ==
          doctest::Approx(2.674872993141098e-05).epsilon(1e-10));
    CHECK(j.at("chi2_reduced").get<double>() < 1e-6);
    CHECK(j.at("warnings").empty());
}

TEST_CASE("cli: fit-ringdown surfaces small-sample warnings") {
    CliResult r = run_cli("fit-ringdown " + fixture("ringdown_three_points.csv"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    bool warned = false;
    for (const auto& w : j.at("warnings"))
        if (w.get<std::string>().find("fewer than 4 samples") !=
            std::string::npos)
            warned = true;
    CHECK(warned);
}

TEST_CASE("cli: fit-pressure reproduces the frozen extrapolation") {
    const std::string input = fixture("pressure_synthetic.csv");
    CliResult r = run_cli("fit-pressure " + input);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("n_points") == 25);
    CHECK(j.at("quantile_family") == "normal");
    CHECK(j.at("confidence_level").get<double>() == 0.90);
    CHECK(j.at("coefficients").at("c0_hz").get<double>() ==
          doctest::Approx(5.769261033151456e-06).epsilon(1e-9));
    CHECK(j.at("coefficients").at("c1_hz_per_mbar").get<double>() ==
          doctest::Approx(2.0922045177427986).epsilon(1e-9));
    CHECK(j.at("coefficients").at("c2_hz_per_mbar2").get<double>() ==
          doctest::Approx(0.06769448076612122).epsilon(1e-9));
    CHECK(j.at("chi2_reduced").get<double>() ==
          doctest::Approx(0.6191939772423674).epsilon(1e-9));
    CHECK(j.at("gamma0_linewidth_hz_upper").get<double>() ==
          doctest::Approx(6.479886367797957e-06).epsilon(1e-9));
    const double upper_90 = j.at("gamma0_linewidth_hz_upper").get<double>();

    CliResult r99 = run_cli("fit-pressure --confidence 0.99 " + input);
    REQUIRE(r99.code == 0);
    CHECK(json::parse(r99.out).at("gamma0_linewidth_hz_upper").get<double>() ==
          doctest::Approx(7.059229990266289e-06).epsilon(1e-9));

    CliResult rt = run_cli("fit-pressure --quantile-family student_t " + input);
    REQUIRE(rt.code == 0);
    const json jt = json::parse(rt.out);
    CHECK(jt.at("quantile_family") == "student_t");
    CHECK(jt.at("gamma0_linewidth_hz_upper").get<double>() > upper_90);
}

TEST_CASE("cli: exclude writes curves, sidecars, and a summary") {
    const fs::path dir = scratch_dir() / "exclude_dcsl";
    CliResult r = run_cli("exclude --model dcsl --out " + dir.string() +
                          " --grid 1e-8,1e-4,25,log");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("model") == "dcsl");
    CHECK(j.at("output_directory") == dir.string());
    const std::string hash = j.at("config_hash").get<std::string>();
    CHECK(hash.size() == 16);

    bool saw_csv = false, saw_json = false;
    for (const auto& f : j.at("files")) {
        const std::string name = f.get<std::string>();
        CHECK(fs::exists(dir / name));
        if (name == "dcsl_Tc_1.csv")
            saw_csv = true;
        if (name == "dcsl_Tc_1.json")
            saw_json = true;
    }
    REQUIRE(saw_csv);
    REQUIRE(saw_json);

    const std::string csv = slurp(dir / "dcsl_Tc_1.csv");
    CHECK(csv.find("# model: dcsl\n") == 0);
    CHECK(csv.find("# config_hash: " + hash + "\n") != std::string::npos);
    CHECK(csv.find("r_c_m,lambda_max_per_s\n") != std::string::npos);
    // 5 metadata keys + 4 fixed params + header + 25 rows
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n')
            ++lines;
    CHECK(lines == 35);

    const json side = json::parse(slurp(dir / "dcsl_Tc_1.json"));
    CHECK(side.at("points") == 25);
    CHECK(side.at("finite_points") == 25);
    CHECK(side.at("config_hash") == hash);
    CHECK(side.at("minimum").at("y").get<double>() > 0.0);
}

TEST_CASE("cli: exclude re-runs are byte-identical, threads included") {
    const fs::path dir = scratch_dir() / "exclude_repeat";
    const std::string base = "exclude --model ddp --out " + dir.string() +
                             " --grid 1e-7,1e-4,15,log";
    const fs::path cfg = write_config(
        "ddp_sphere.json",
        R"({"ddp": {"mass_policy": "sphere_of_r0prime"}})");
    const std::string with_cfg = base + " --config " + cfg.string();

    REQUIRE(run_cli(with_cfg).code == 0);
    const std::string first = slurp(dir / "ddp_sphere_of_r0prime_uniform.csv");
    REQUIRE(!first.empty());

    REQUIRE(run_cli(with_cfg + " --threads 4").code == 0);
    const std::string second = slurp(dir / "ddp_sphere_of_r0prime_uniform.csv");
    CHECK(first == second);

    // The sphere-policy curve loses its bound at large R0; "none" rows are
    // part of the stable byte format.
    CHECK(first.find(",none\n") != std::string::npos);
}

TEST_CASE("cli: exclude copies a validated overlay next to the curves") {
    const fs::path dir = scratch_dir() / "exclude_overlay";
    CliResult r = run_cli("exclude --model cgf --out " + dir.string() +
                          " --grid 1e-5,1e-4,3,log --overlay " +
                          fixture("overlay_polyline.csv"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    bool listed = false;
    for (const auto& f : j.at("files"))
        if (f.get<std::string>() == "overlay_overlay_polyline.csv")
            listed = true;
    CHECK(listed);
    CHECK(slurp(dir / "overlay_overlay_polyline.csv") ==
          slurp(fixture("overlay_polyline.csv")));
    const std::string csv = slurp(dir / "cgf_light_speed.csv");
    CHECK(csv.find("# overlay_file: overlay_overlay_polyline.csv\n") !=
          std::string::npos);
}

TEST_CASE("cli: validate passes and reports the known gas-damping offset") {
    CliResult r = run_cli("validate");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("passed") == true);
    REQUIRE(j.at("checks").size() == 6);
    bool flagged = false;
    for (const auto& c : j.at("checks")) {
        CHECK(c.at("pass") == true);
        if (c.at("name") == "gas_damping_slope_vs_reference") {
            CHECK(c.at("note").get<std::string>().find("2x") !=
                  std::string::npos);
            CHECK(c.at("measured").get<double>() ==
                  doctest::Approx(3.7906305290608846 / 1.9).epsilon(1e-9));
            flagged = true;
        }
    }
    CHECK(flagged);
}

TEST_CASE("cli: help exits cleanly") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("exclude --help").code == 0);
}
