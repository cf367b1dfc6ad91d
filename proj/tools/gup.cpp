// gup: fits, bounds, exclusion plots and quantum checks for minimal-length
// deformed pendulum and oscillator models.
//
// Exit codes: 0 success, 1 usage / parse / input error, 2 numerical failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gup/commands.hpp"
#include "gup/deformation.hpp"
#include "gup/errors.hpp"
#include "gup/quantum.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;

void emit(const gup::CommandOutput& out, bool as_json) {
  std::cout << (as_json ? out.json : out.text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal-length deformation toolkit: fits, bounds and checks"};
  app.require_subcommand(1);

  std::string config_path;
  bool as_json = false;
  app.add_option("--config", config_path, "Run configuration (JSON); falls back to $GUP_CONFIG");
  app.add_flag("--json", as_json, "Print the machine-readable report instead of text");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit period against squared amplitude and bound the deformation");
  std::string dataset;
  std::string report_path;
  fit->add_option("csv", dataset, "Dataset (amplitude_sq_cm2,period_s[,sigma columns])")->required();
  fit->add_option("--report", report_path, "Also write the JSON report to this file");

  // exclusion
  auto* excl = app.add_subcommand("exclusion", "Exclusion boundaries in the (beta0, alpha) plane");
  std::string out_csv, out_svg;
  std::size_t points = 0;
  excl->add_option("--out-csv", out_csv, "CSV output path");
  excl->add_option("--out-svg", out_svg, "SVG output path");
  excl->add_option("--points", points, "Grid points (overrides the config)")->check(CLI::PositiveNumber);

  // period
  auto* period = app.add_subcommand("period", "Pendulum period under the deformation");
  double length = 2.9954;  // length inferred from the tabulated pendulum data
  std::optional<double> mass, gravity, beta, n_particles;
  double beta0 = 0.0, alpha = 0.0, amplitude = 0.0, rel_tol = 1e-10, periods = 2.0;
  bool m_exact = false, m_first = false, m_traj = false;
  period->add_option("--length", length, "Effective length (m)")->capture_default_str();
  period->add_option("--mass", mass, "Bob mass (kg); default from config");
  period->add_option("--gravity", gravity, "Local gravity (m/s^2); default from config");
  auto* beta_opt = period->add_option("--beta", beta, "Effective beta ((kg m/s)^-2)");
  auto* beta0_opt = period->add_option("--beta0", beta0, "beta0 (dimensionless)");
  auto* alpha_opt = period->add_option("--alpha", alpha, "Suppression exponent alpha");
  period->add_option("--n-particles", n_particles, "N for the suppression; default from config");
  beta_opt->excludes(beta0_opt)->excludes(alpha_opt);
  period->add_option("--amplitude", amplitude, "Arc amplitude L phi (m)")->required();
  auto* f_exact = period->add_flag("--exact", m_exact, "Adaptive quadrature of the period integral");
  auto* f_first = period->add_flag("--first-order", m_first, "First-order closed form");
  auto* f_traj = period->add_flag("--trajectory", m_traj, "Integrate the trajectory, print samples");
  f_exact->excludes(f_first)->excludes(f_traj);
  f_first->excludes(f_traj);
  period->add_option("--rel-tol", rel_tol, "Relative tolerance for --exact / --trajectory")->capture_default_str();
  period->add_option("--periods", periods, "Trajectory length in small-angle periods")->capture_default_str();

  // quantum-check
  auto* quantum = app.add_subcommand("quantum-check", "Run the truncated-Fock-space invariant suite");
  gup::QuantumCheckRequest qreq;
  std::optional<double> nu;
  quantum->add_option("--mass", qreq.mass, "Mass (model units)")->capture_default_str();
  quantum->add_option("--omega", qreq.omega, "Angular frequency")->capture_default_str();
  quantum->add_option("--hbar", qreq.hbar, "Reduced Planck constant")->capture_default_str();
  auto* q_beta = quantum->add_option("--beta", qreq.beta, "Deformation beta")->capture_default_str();
  quantum->add_option("--nu", nu, "Set beta from nu = beta m hbar omega / 2")->excludes(q_beta);
  quantum->add_option("--j", qreq.j, "Gazeau-Klauder action J")->capture_default_str();
  quantum->add_option("--periods", qreq.periods, "Time span in periods 2 pi / omega")->capture_default_str();
  quantum->add_option("--times", qreq.n_times, "Number of sample times")->capture_default_str();
  quantum->add_option("--dimension", qreq.dimension, "Fock dimension (0 = automatic)")->capture_default_str();
  quantum->add_option("--classical-beta", qreq.classical_beta, "beta for the hbar -> 0 check")->capture_default_str();
  quantum->add_option("--classical-amplitude", qreq.classical_amplitude,
                      "Amplitude for the hbar -> 0 check")->capture_default_str();

  // scenarios
  auto* scenarios = app.add_subcommand("scenarios", "Experiment scenario registry");
  scenarios->require_subcommand(1);
  auto* list = scenarios->add_subcommand("list", "List registered scenarios and their bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    const auto config = gup::load_config_or_default(
        config_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(config_path));

    if (*fit) {
      const auto out = gup::cmd_fit(dataset, config);
      if (!report_path.empty()) gup::write_file(report_path, out.json);
      emit(out, as_json);
    } else if (*excl) {
      auto cfg = config;
      if (points > 0) cfg.grid.points = points;
      const auto res = gup::cmd_exclusion(cfg);
      if (!out_csv.empty()) gup::write_file(out_csv, res.csv);
      if (!out_svg.empty()) gup::write_file(out_svg, res.svg);
      if (out_csv.empty() && out_svg.empty() && !as_json) {
        std::cout << res.csv;
      } else {
        emit(res.report, as_json);
      }
    } else if (*period) {
      gup::PeriodRequest req;
      req.pendulum = {mass.value_or(config.pendulum.mass), length,
                      gravity.value_or(config.pendulum.gravity)};
      if (beta) {
        req.beta = *beta;
      } else {
        gup::DeformationParams params;
        params.beta0 = beta0;
        params.alpha = alpha;
        params.n_particles = n_particles.value_or(config.pendulum.n_particles);
        req.beta = gup::effective_beta(params);
      }
      req.amplitude = amplitude;
      req.method = m_first  ? gup::PeriodMethod::first_order
                   : m_traj ? gup::PeriodMethod::trajectory
                            : gup::PeriodMethod::exact;
      req.rel_tol = rel_tol;
      req.periods = periods;
      emit(gup::cmd_period(req), as_json);
    } else if (*quantum) {
      if (nu) qreq.beta = 2.0 * *nu / (qreq.mass * qreq.hbar * qreq.omega);
      const auto rep = gup::run_quantum_check(qreq);
      emit(gup::format_quantum_check(rep, qreq), as_json);
      if (!rep.all_passed()) return exit_numerical;
    } else if (*list) {
      emit(gup::cmd_scenarios_list(config), as_json);
    }
  } catch (const gup::NumericalError& e) {
    std::cerr << "gup: numerical failure: " << e.what() << "\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "gup: error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_ok;
}
