#pragma once

// Run configuration (JSON). Every key is optional:
//   {"pendulum": {"mass": kg, "gravity": m/s^2, "n_particles": N},
//    "fit": {"level": 0.95, "sigma_amp_sq_m2": 5e-3, "sigma_period_s": 1e-4},
//    "grid": {"beta0_min": 1e-4, "beta0_max": 1e8, "points": 121},
//    "plot": {"alpha_min": -1, "alpha_max": 1},
//    "scenarios": "path/to/scenarios.json"}
// A relative scenarios path is resolved against the config file directory.

#include <filesystem>
#include <optional>
#include <string>

#include "gup/constants.hpp"
#include "gup/registry.hpp"

namespace gup {

struct RunConfig {
  struct Pendulum {
    double mass = constants::pendulum_mass;
    double gravity = constants::pendulum_gravity;
    double n_particles = constants::pendulum_nucleons;
  } pendulum;
  struct Fit {
    double level = 0.95;
    double sigma_amp_sq_m2 = constants::default_sigma_amp_sq;
    double sigma_period_s = constants::default_sigma_period;
  } fit;
  struct Grid {
    double beta0_min = 1e-4;
    double beta0_max = 1e8;
    std::size_t points = 121;
  } grid;
  struct Plot {
    double alpha_min = -1.0;
    double alpha_max = 1.0;
  } plot;
  std::optional<std::filesystem::path> scenarios;
};

/// Throws ParseError on malformed JSON and InvalidArgument naming the
/// offending key (e.g. "fit.level") on schema violations.
RunConfig parse_run_config(const std::string& json_text,
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// The explicit path if given, else $GUP_CONFIG if set and non-empty.
std::optional<std::filesystem::path> resolve_config_path(
    const std::optional<std::filesystem::path>& explicit_path);

/// Defaults when no path resolves.
RunConfig load_config_or_default(const std::optional<std::filesystem::path>& explicit_path);

/// The configured registry file, or the built-in registry.
Registry registry_for(const RunConfig& config);

}  // namespace gup
