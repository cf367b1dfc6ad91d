#pragma once

// Command implementations behind the `gup` executable. Each returns a text
// report and a JSON report; the executable picks one and sets the exit code.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gup/bounds.hpp"
#include "gup/config.hpp"
#include "gup/dataset.hpp"
#include "gup/evfit.hpp"
#include "gup/pendulum.hpp"
#include "gup/svg.hpp"

namespace gup {

struct CommandOutput {
  std::string text;
  std::string json;
};

// fit

struct FitReport {
  std::size_t n_points = 0;
  double level = 0.95;
  LinearFit fit;
  Interval slope_ci;
  Interval intercept_ci;
  LengthEstimate length;
  SlopeCoefficients coefficients;
  RatioBound ratio;
  double ratio_upper_rounded = 0.0;  // one significant figure
  double n_particles = 0.0;
  double alpha_min = 0.0;          // from ratio.upper, beta0 = 1
  double alpha_min_rounded = 0.0;  // from ratio_upper_rounded, beta0 = 1
};

/// Fit, derived length, ratio bound and alpha_min. Throws InvalidArgument
/// when fewer than 3 points are given (no degrees of freedom).
FitReport run_fit(const MeasurementSeries& series, const RunConfig& config);
CommandOutput format_fit(const FitReport& report);
CommandOutput cmd_fit(const std::filesystem::path& dataset, const RunConfig& config);

// exclusion

struct ExclusionResult {
  std::vector<PlotCurve> curves;
  std::string csv;
  std::string svg;
  CommandOutput report;
};

/// Boundaries of the plotted registry scenarios over the configured grid.
ExclusionResult cmd_exclusion(const RunConfig& config);

/// CSV with columns label,beta0,alpha_min,style.
std::string exclusion_csv(const std::vector<PlotCurve>& curves);

/// Writes `content` to `path`; throws InvalidArgument if the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& content);

// period

enum class PeriodMethod { exact, first_order, trajectory };

struct PeriodRequest {
  PendulumConfig pendulum;
  /// Effective beta in (kg m/s)^-2.
  double beta = 0.0;
  /// Arc amplitude L phi in m.
  double amplitude = 0.0;
  PeriodMethod method = PeriodMethod::exact;
  double rel_tol = 1e-10;
  /// Trajectory length in small-angle periods.
  double periods = 2.0;
};

CommandOutput cmd_period(const PeriodRequest& request);

// quantum-check

struct QuantumCheckRequest {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double beta = 2e-4;
  double j = 4.0;
  /// Evolution time span, in periods 2 pi / omega.
  double periods = 1.0;
  std::size_t n_times = 65;
  /// Fock dimension; 0 picks the smallest adequate one.
  std::size_t dimension = 0;
  /// Deformation and amplitude for the hbar -> 0 comparison against the
  /// classical equations of motion, in the model's units.
  double classical_beta = 0.05;
  double classical_amplitude = 0.05;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct QuantumCheckReport {
  std::size_t dimension = 0;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Throws TruncationError when an explicit dimension cannot hold the state.
QuantumCheckReport run_quantum_check(const QuantumCheckRequest& request);
CommandOutput format_quantum_check(const QuantumCheckReport& report,
                                   const QuantumCheckRequest& request);

// scenarios list

CommandOutput cmd_scenarios_list(const RunConfig& config);

}  // namespace gup
