#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "mlev/errors.hpp"

namespace {

// Exit codes: 0 success, 1 validation-suite failure, 2 input/config error,
// 3 numerical error.
int dispatch(const std::function<int()>& run) {
    try {
        return run();
    } catch (const mlev::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mlev::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

void add_common(CLI::App* cmd, mlev::cli::CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON configuration file");
    cmd->add_flag("--lax", args.lax,
                  "warn about unknown config keys instead of rejecting them");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipation predictions and exclusion curves for collapse "
                 "models probed by a levitated microsphere"};
    app.require_subcommand(1);

    mlev::cli::CommonArgs args;
    std::string model;
    std::string csv_path;

    CLI::App* predict =
        app.add_subcommand("predict", "print eta and gamma at one parameter point");
    add_common(predict, args);
    predict->add_option("--model", model, "collapse model")
        ->required()
        ->check(CLI::IsMember({"dcsl", "ddp", "cgf"}));

    CLI::App* exclude =
        app.add_subcommand("exclude", "write exclusion-curve files over a grid");
    add_common(exclude, args);
    exclude->add_option("--model", model, "collapse model")
        ->required()
        ->check(CLI::IsMember({"dcsl", "ddp", "cgf"}));
    double gamma0_hz = 0.0;
    CLI::Option* gamma0_opt = exclude->add_option(
        "--gamma0-hz", gamma0_hz, "damping bound as a linewidth in Hz");
    double confidence = 0.0;
    CLI::Option* conf_opt = exclude->add_option(
        "--confidence", confidence, "confidence level attached to the bound");
    std::string out_dir;
    CLI::Option* out_opt =
        exclude->add_option("--out", out_dir, "output directory");
    std::string grid_spec;
    CLI::Option* grid_opt = exclude->add_option(
        "--grid", grid_spec, "abscissa grid as min,max,points,log|lin");
    std::string overlay;
    CLI::Option* overlay_opt = exclude->add_option(
        "--overlay", overlay, "two-column x,y CSV copied next to the curves");
    exclude->add_option("--threads", args.threads,
                        "worker threads for grid evaluation");

    CLI::App* fit_ringdown = app.add_subcommand(
        "fit-ringdown", "fit an exponential decay to a ringdown CSV");
    add_common(fit_ringdown, args);
    fit_ringdown->add_option("csv", csv_path, "CSV with t_s,amplitude,sigma")
        ->required();
    double noise_floor = 0.0;
    CLI::Option* nf_opt = fit_ringdown->add_option(
        "--noise-floor", noise_floor,
        "amplitude noise floor added in quadrature to the sigmas");

    CLI::App* fit_pressure = app.add_subcommand(
        "fit-pressure", "extrapolate damping linewidth to zero pressure");
    add_common(fit_pressure, args);
    fit_pressure
        ->add_option("csv", csv_path, "CSV with pressure_mbar,linewidth_hz,sigma_hz")
        ->required();
    double fp_confidence = 0.0;
    CLI::Option* fp_conf_opt = fit_pressure->add_option(
        "--confidence", fp_confidence, "one-sided confidence level for the bound");
    fit_pressure->add_flag("--correct-thermomolecular",
                           args.correct_thermomolecular,
                           "rescale gauge pressures to the particle temperature");
    std::string quantile_family;
    CLI::Option* qf_opt = fit_pressure->add_option(
        "--quantile-family", quantile_family,
        "quantile family for the upper bound (normal or student_t)");

    CLI::App* validate = app.add_subcommand(
        "validate", "run the numerical cross-check suite and report pass/fail");
    add_common(validate, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*gamma0_opt)
        args.gamma0_hz = gamma0_hz;
    if (*conf_opt)
        args.confidence = confidence;
    if (*fp_conf_opt)
        args.confidence = fp_confidence;
    if (*out_opt)
        args.out_dir = out_dir;
    if (*grid_opt)
        args.grid_spec = grid_spec;
    if (*overlay_opt)
        args.overlay_path = overlay;
    if (*nf_opt)
        args.noise_floor = noise_floor;
    if (*qf_opt)
        args.quantile_family = quantile_family;

    if (predict->parsed())
        return dispatch([&] { return mlev::cli::cmd_predict(args, model); });
    if (exclude->parsed())
        return dispatch([&] { return mlev::cli::cmd_exclude(args, model); });
    if (fit_ringdown->parsed())
        return dispatch([&] { return mlev::cli::cmd_fit_ringdown(args, csv_path); });
    if (fit_pressure->parsed())
        return dispatch([&] { return mlev::cli::cmd_fit_pressure(args, csv_path); });
    if (validate->parsed())
        return dispatch([&] { return mlev::cli::cmd_validate(args); });

    std::cerr << "error: no subcommand selected\n";
    return 2;
}
