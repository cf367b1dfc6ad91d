#pragma once

// Experiment scenario registry. Each scenario maps to an upper bound B on
// beta0 / N^alpha and a nucleon count N, which together fix an exclusion line
// in the (beta0, alpha) plane.
//
// JSON layout (SI units):
//   {"scenarios": [
//     {"label": "...", "kind": "pendulum-fit" | "oscillator-frequency" |
//                              "levitation" | "optomechanical",
//      "style": "solid" | "dashed", "plot": true,
//      "n_particles": 7.32e26, "n_particles_inferred": false,
//      "parameters": {...kind specific...},
//      "reference": {"alpha_min": 0.07, "ratio_upper": 0.011}}]}
//
// Kind-specific parameters:
//   pendulum-fit:          ratio_upper
//   oscillator-frequency:  alpha_min, ratio_upper (N = B^(-1/alpha_min))
//   levitation:            density, susceptibility, gradient, radius,
//                          amplitude, and damping + n_measurements or
//                          delta_omega_override
//   optomechanical:        ratio_upper, optionally phase_resolution and
//                          {finesse, wavelength, mass, omega, n_photons,
//                          p_mean} to derive B instead
// n_particles is required except for oscillator-frequency (derived from the
// line) and levitation (sphere mass over the atomic mass unit).

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gup/bounds.hpp"

namespace gup {

enum class ScenarioKind { pendulum_fit, oscillator_frequency, levitation, optomechanical };
enum class LineStyle { solid, dashed };

struct PendulumFitScenario {
  double ratio_upper = 0.0;
};

struct OscillatorFrequencyScenario {
  double alpha_min = 0.0;  // at beta0 = 1
  double ratio_upper = 0.0;
};

struct LevitationScenario {
  double density = 0.0;         // kg/m^3
  double susceptibility = 0.0;  // chi_v
  double gradient = 0.0;        // T/m
  double radius = 0.0;          // m
  double amplitude = 0.0;       // m
  double damping = 0.0;
  double n_measurements = 1.0;
  double delta_omega_override = 0.0;

  double mass() const;
  double omega() const;
  LevitationParams params() const;
};

struct OptomechanicalScenario {
  double ratio_upper = 0.0;
  double phase_resolution = 0.0;  // rad, used with `physics`
  std::optional<OptomechParams> physics;
};

using ScenarioParams = std::variant<PendulumFitScenario, OscillatorFrequencyScenario,
                                    LevitationScenario, OptomechanicalScenario>;

/// Published outputs kept for comparison only.
struct ReferenceValues {
  std::optional<double> alpha_min;
  std::optional<double> ratio_upper;
  std::optional<double> omega;
};

struct ExperimentScenario {
  std::string label;
  LineStyle style = LineStyle::solid;
  bool plot = true;
  std::optional<double> n_particles;
  bool n_particles_inferred = false;
  ScenarioParams params;
  ReferenceValues reference;

  ScenarioKind kind() const;
};

struct Registry {
  std::vector<ExperimentScenario> scenarios;
};

/// B, N and alpha_min at beta0 = 1 implied by a scenario.
struct ScenarioBound {
  double ratio_upper = 0.0;
  double n_particles = 0.0;
  double alpha_min = 0.0;
};

ScenarioBound evaluate(const ExperimentScenario& scenario);

/// Exclusion line of a scenario over the grid. Oscillator-frequency entries
/// are anchored on their registered alpha_min so the beta0 = 1 point is exact.
ExclusionBoundary scenario_boundary(const ExperimentScenario& scenario,
                                    std::span<const double> beta0_grid);

std::string to_string(ScenarioKind kind);
std::string to_string(LineStyle style);

/// Built-in scenarios: tabulated pendulum, two oscillator literature bounds,
/// optimistic and conservative levitation, optomechanical reference.
Registry default_registry();

/// Throws ParseError on malformed JSON and InvalidArgument naming the
/// offending key on schema violations.
Registry parse_registry(const std::string& json_text);
Registry load_registry(const std::filesystem::path& path);
std::string registry_to_json(const Registry& registry);

}  // namespace gup
