#pragma once

#include <optional>
#include <string>

namespace mlev::cli {

// Everything the subcommands share; CLI flags override config-file values.
struct CommonArgs {
    std::string config_path;
    bool lax = false;
    std::optional<double> gamma0_hz;
    std::optional<double> confidence;
    std::optional<std::string> out_dir;
    std::optional<std::string> grid_spec; // "min,max,points,log|lin"
    std::optional<std::string> overlay_path;
    int threads = 1;
    std::optional<double> noise_floor;
    bool correct_thermomolecular = false;
    std::optional<std::string> quantile_family;
};

int cmd_predict(const CommonArgs& args, const std::string& model);
int cmd_exclude(const CommonArgs& args, const std::string& model);
int cmd_fit_ringdown(const CommonArgs& args, const std::string& csv_path);
int cmd_fit_pressure(const CommonArgs& args, const std::string& csv_path);
int cmd_validate(const CommonArgs& args);

} // namespace mlev::cli
