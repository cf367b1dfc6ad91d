#include "gup/commands.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "gup/errors.hpp"
#include "gup/parallel.hpp"
#include "gup/quantum.hpp"
#include "gup/registry.hpp"

namespace gup {

using json = nlohmann::ordered_json;

namespace {

// Locale-independent formatting with `digits` significant figures.
std::string num(double v, int digits = 6) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, digits);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

json interval_json(const Interval& ci) {
  return {{"estimate", ci.estimate}, {"lower", ci.lower}, {"upper", ci.upper},
          {"half_width", ci.half_width()}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

// fit

FitReport run_fit(const MeasurementSeries& series, const RunConfig& config) {
  if (series.points.size() < 3) {
    throw InvalidArgument("a straight-line fit needs at least 3 rows to leave a degree of freedom (got " +
                          std::to_string(series.points.size()) + ", dof = " +
                          std::to_string(static_cast<long>(series.points.size()) - 2) + ")");
  }
  FitReport r;
  r.n_points = series.points.size();
  r.level = config.fit.level;
  r.fit = odr_fit(series);
  r.slope_ci = confidence_interval(r.fit, FitParameter::slope, r.level);
  r.intercept_ci = confidence_interval(r.fit, FitParameter::intercept, r.level);
  r.length = derived_length(r.fit.intercept, config.pendulum.gravity, r.fit.intercept_stderr);
  const PendulumConfig pend{config.pendulum.mass, r.length.value, config.pendulum.gravity};
  r.coefficients = slope_coefficients(pend);
  r.ratio = ratio_bound_from_fit(r.fit, pend, r.level);
  r.ratio_upper_rounded = round_one_significant(r.ratio.upper);
  r.n_particles = config.pendulum.n_particles;
  if (r.ratio.upper > 0.0) {
    r.alpha_min = alpha_bound(r.ratio.upper, r.n_particles, 1.0);
    r.alpha_min_rounded = alpha_bound(r.ratio_upper_rounded, r.n_particles, 1.0);
  } else {
    // Data disfavour any positive deformation; nothing to bound.
    r.alpha_min = r.alpha_min_rounded = std::numeric_limits<double>::infinity();
  }
  return r;
}

CommandOutput format_fit(const FitReport& r) {
  const std::string pct = num(100.0 * r.level, 4) + "%";
  std::string t;
  t += "points:               " + std::to_string(r.n_points) + "\n";
  t += "slope (s/m^2):        " + num(r.fit.slope, 6) + " +- " + num(r.slope_ci.half_width(), 3) +
       " (" + pct + ")\n";
  t += "intercept (s):        " + num(r.fit.intercept, 8) + " +- " +
       num(r.intercept_ci.half_width(), 3) + " (" + pct + ")\n";
  t += "reduced chi^2:        " + num(r.fit.reduced_chi2, 4) + " (dof " + std::to_string(r.fit.dof) +
       ")\n";
  t += "derived length (m):   " + num(r.length.value, 6) + " +- " + num(r.length.sigma, 2) + "\n";
  t += "slope theory (s/m^2): " + num(r.coefficients.classical, 5) + " - " +
       num(r.coefficients.deformation, 5) + " * beta0/N^alpha\n";
  t += "beta0/N^alpha:        [" + num(r.ratio.lower, 4) + ", " + num(r.ratio.upper, 4) + "]\n";
  t += "upper bound (1 s.f.): " + num(r.ratio_upper_rounded, 1) + "\n";
  t += "N:                    " + num(r.n_particles, 4) + "\n";
  t += "alpha_min (beta0=1):  " + num(r.alpha_min, 4) + " (exact bound), " +
       num(r.alpha_min_rounded, 4) + " (1 s.f. bound)\n";

  json j;
  j["points"] = r.n_points;
  j["level"] = r.level;
  j["slope"] = interval_json(r.slope_ci);
  j["slope_stderr"] = r.fit.slope_stderr;
  j["intercept"] = interval_json(r.intercept_ci);
  j["intercept_stderr"] = r.fit.intercept_stderr;
  j["covariance"] = r.fit.covariance;
  j["chi2"] = r.fit.objective;
  j["reduced_chi2"] = r.fit.reduced_chi2;
  j["dof"] = r.fit.dof;
  j["length"] = {{"value", r.length.value}, {"sigma", r.length.sigma}};
  j["slope_coefficients"] = {{"classical", r.coefficients.classical},
                             {"deformation", r.coefficients.deformation}};
  j["ratio_bound"] = {{"lower", r.ratio.lower}, {"upper", r.ratio.upper},
                      {"upper_rounded", r.ratio_upper_rounded}};
  j["n_particles"] = r.n_particles;
  if (std::isfinite(r.alpha_min)) {
    j["alpha_min"] = r.alpha_min;
    j["alpha_min_rounded_bound"] = r.alpha_min_rounded;
  } else {
    j["alpha_min"] = nullptr;
    j["alpha_min_rounded_bound"] = nullptr;
  }
  return {t, j.dump(2) + "\n"};
}

CommandOutput cmd_fit(const std::filesystem::path& dataset, const RunConfig& config) {
  const auto data = load_dataset(dataset);
  const auto series = to_series(data, config.fit.sigma_amp_sq_m2, config.fit.sigma_period_s);
  return format_fit(run_fit(series, config));
}

// exclusion

std::string exclusion_csv(const std::vector<PlotCurve>& curves) {
  std::string out = "label,beta0,alpha_min,style\n";
  for (const auto& c : curves) {
    for (const auto& p : c.boundary.points) {
      out += csv_field(c.label) + "," + format_double(p.beta0) + "," + format_double(p.alpha) + "," +
             to_string(c.style) + "\n";
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw InvalidArgument("write failed for " + path.string());
}

ExclusionResult cmd_exclusion(const RunConfig& config) {
  const auto registry = registry_for(config);
  const auto grid = log_grid(config.grid.beta0_min, config.grid.beta0_max, config.grid.points);
  ExclusionResult res;
  std::string t = pad("scenario", 46) + pad("style", 8) + pad("B", 12) + pad("N", 12) +
                  "alpha_min(beta0=1)\n";
  json list = json::array();
  for (const auto& s : registry.scenarios) {
    if (!s.plot) continue;
    const auto bound = evaluate(s);
    res.curves.push_back({s.label, s.style, scenario_boundary(s, grid)});
    t += pad(s.label, 46) + pad(to_string(s.style), 8) + pad(num(bound.ratio_upper, 4), 12) +
         pad(num(bound.n_particles, 4), 12) + num(bound.alpha_min, 4) + "\n";
    list.push_back({{"label", s.label},
                    {"style", to_string(s.style)},
                    {"ratio_upper", bound.ratio_upper},
                    {"n_particles", bound.n_particles},
                    {"alpha_min_at_unit_beta0", bound.alpha_min}});
  }
  res.csv = exclusion_csv(res.curves);
  res.svg = render_exclusion_svg(res.curves, {config.grid.beta0_min, config.grid.beta0_max,
                                              config.plot.alpha_min, config.plot.alpha_max});
  json j;
  j["grid"] = {{"beta0_min", config.grid.beta0_min},
               {"beta0_max", config.grid.beta0_max},
               {"points", config.grid.points}};
  j["excluded_side"] = "below";
  j["curves"] = list;
  res.report = {t, j.dump(2) + "\n"};
  return res;
}

// period

CommandOutput cmd_period(const PeriodRequest& req) {
  req.pendulum.validate();
  if (!(req.beta >= 0.0) || !std::isfinite(req.beta)) throw InvalidArgument("beta must be >= 0");
  const double phi = req.amplitude / req.pendulum.length;
  std::string t;
  json j;
  j["length"] = req.pendulum.length;
  j["mass"] = req.pendulum.mass;
  j["gravity"] = req.pendulum.gravity;
  j["beta"] = req.beta;
  j["amplitude"] = req.amplitude;
  t += "length_m: " + num(req.pendulum.length, 10) + "\n";
  t += "mass_kg: " + num(req.pendulum.mass, 10) + "\n";
  t += "gravity_m_s2: " + num(req.pendulum.gravity, 10) + "\n";
  t += "beta: " + num(req.beta, 10) + "\n";
  t += "amplitude_m: " + num(req.amplitude, 10) + "\n";

  switch (req.method) {
    case PeriodMethod::first_order: {
      if (!(req.amplitude >= 0.0) || !(req.amplitude < req.pendulum.length))
        throw InvalidArgument("invalid amplitude: need 0 <= A < L");
      const double period = period_first_order(req.pendulum, req.beta, req.amplitude);
      t += "method: first-order\ntolerance: truncation O(A^4, beta^2)\nperiod_s: " +
           num(period, 12) + "\n";
      j["method"] = "first-order";
      j["period"] = period;
      break;
    }
    case PeriodMethod::exact: {
      if (!(phi > 0.0) || !(phi < std::numbers::pi / 2))
        throw InvalidArgument("invalid amplitude: need 0 < A/L < pi/2");
      const double period = period_exact_quadrature(req.pendulum, req.beta, phi, req.rel_tol);
      t += "method: exact-quadrature\nrel_tol: " + num(req.rel_tol, 3) + "\nperiod_s: " +
           num(period, 12) + "\n";
      j["method"] = "exact-quadrature";
      j["rel_tol"] = req.rel_tol;
      j["period"] = period;
      break;
    }
    case PeriodMethod::trajectory: {
      if (!(phi > 0.0) || !(phi < std::numbers::pi / 2))
        throw InvalidArgument("invalid amplitude: need 0 < A/L < pi/2");
      if (!(req.periods > 0.0)) throw InvalidArgument("periods must be positive");
      TrajectoryOptions opts;
      opts.rel_tol = req.rel_tol;
      const double t_end = req.periods * req.pendulum.harmonic_period();
      const auto traj = integrate_trajectory(req.pendulum, req.beta, phi, t_end, opts);
      t += "method: trajectory\nrel_tol: " + num(req.rel_tol, 3) + "\n";
      j["method"] = "trajectory";
      j["rel_tol"] = req.rel_tol;
      if (traj.zero_crossings.size() >= 3) {
        const double period = traj.period_from_crossings();
        t += "period_s: " + num(period, 12) + "\n";
        j["period"] = period;
      } else {
        t += "period_s: n/a (fewer than three zero crossings)\n";
        j["period"] = nullptr;
      }
      t += "time_s,angle_rad,angular_velocity_rad_s,displacement_m\n";
      json samples = json::array();
      for (const auto& s : traj.samples) {
        t += format_double(s.time) + "," + format_double(s.angle) + "," +
             format_double(s.angular_velocity) + "," + format_double(s.displacement) + "\n";
        samples.push_back({s.time, s.angle, s.angular_velocity, s.displacement});
      }
      j["samples_columns"] = {"time_s", "angle_rad", "angular_velocity_rad_s", "displacement_m"};
      j["samples"] = samples;
      break;
    }
  }
  return {t, j.dump(2) + "\n"};
}

// quantum-check

bool QuantumCheckReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

std::vector<double> check_times(const QuantumCheckRequest& req) {
  const double t_max = req.periods * 2.0 * std::numbers::pi / req.omega;
  std::vector<double> ts(req.n_times);
  for (std::size_t i = 0; i < req.n_times; ++i)
    ts[i] = t_max * static_cast<double>(i) / static_cast<double>(req.n_times - 1);
  return ts;
}

// max_t |<x(t)>_matrix - x_closed_form(t)| for the state at rest at amplitude sqrt(2 hbar J / m omega).
double matrix_vs_closed_form(const OscillatorModel& model, double j, std::size_t dimension,
                             const std::vector<double>& times) {
  const auto ops = build_truncated_operators(model, dimension);
  const auto state = gazeau_klauder_state(model, j, 0.0, dimension);
  const double amp = std::sqrt(2.0 * model.hbar() * j / (model.mass() * model.omega()));
  const auto xs = kernels::parallel::gk_position_series(ops, model, state, times);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    worst = std::max(worst, std::abs(xs[i] - trajectory_x_closed_form(model, amp, times[i])));
  return worst;
}

double classical_deviation(double mass, double omega, double beta, double amplitude,
                           const std::vector<double>& times) {
  const OscillatorModel model(mass, omega, 0.0, beta);
  const auto ode = integrate_oscillator(mass, omega, beta, amplitude, times.back(), times.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    worst = std::max(worst,
                     std::abs(ode[i].position - trajectory_x_closed_form(model, amplitude, ode[i].time)));
  return worst;
}

}  // namespace

QuantumCheckReport run_quantum_check(const QuantumCheckRequest& req) {
  if (!(req.mass > 0.0) || !(req.omega > 0.0) || !(req.hbar > 0.0))
    throw InvalidArgument("quantum-check: mass, omega and hbar must be positive");
  if (!(req.beta >= 0.0)) throw InvalidArgument("quantum-check: beta must be >= 0");
  if (!(req.j > 0.0)) throw InvalidArgument("quantum-check: J must be positive");
  if (req.n_times < 2) throw InvalidArgument("quantum-check: need at least 2 times");
  if (!(req.periods > 0.0)) throw InvalidArgument("quantum-check: periods must be positive");
  if (!(req.classical_beta > 0.0) || !(req.classical_amplitude > 0.0))
    throw InvalidArgument("quantum-check: classical beta and amplitude must be positive");

  const OscillatorModel model(req.mass, req.omega, req.hbar, req.beta);
  const std::size_t dim = req.dimension > 0 ? req.dimension : gk_dimension(model, req.j);
  // Builds the state first so an undersized dimension reports as a truncation failure.
  const auto state = gazeau_klauder_state(model, req.j, 0.0, dim);
  if (dim < 8) throw TruncationError("dimension " + std::to_string(dim) + " below the minimum of 8");
  const auto ops = build_truncated_operators(model, dim);
  const auto times = check_times(req);

  QuantumCheckReport rep;
  rep.dimension = dim;

  {
    const double dev = std::abs(state.amplitudes.squaredNorm() - 1.0);
    rep.checks.push_back({"norm", dev <= 1e-10, dev, 1e-10, "| <J,g|J,g> - 1 |"});
  }
  {
    double worst = 0.0;
    for (double t : times) {
      const auto evolved = evolve_gk(state, model, t);
      const auto direct = gazeau_klauder_state(model, req.j, req.omega * t, dim);
      worst = std::max(worst, (evolved.amplitudes - direct.amplitudes).cwiseAbs().maxCoeff());
    }
    rep.checks.push_back({"temporal stability", worst <= 1e-12, worst, 1e-12,
                          "max | e^{-iHt}|J,0> - |J,wt> | over amplitudes"});
  }
  {
    const double target = req.hbar * req.omega * req.j;
    const double dev = std::abs(expectation(state.amplitudes, ops.h) - target) / target;
    rep.checks.push_back({"energy", dev <= 1e-10, dev, 1e-10, "| <h> / (hbar omega J) - 1 |"});
  }
  {
    // Three decades of beta ending at the requested one (or 1e-4 model units at beta = 0).
    const double top = req.beta > 0.0 ? req.beta : 1e-4 / (req.mass * req.hbar * req.omega);
    std::array<double, 3> lb{}, lr{};
    std::string detail = "residual at beta =";
    for (int k = 0; k < 3; ++k) {
      const double b = top * std::pow(10.0, k - 2);
      const OscillatorModel mk(req.mass, req.omega, req.hbar, b);
      const double res = commutator_residual(build_truncated_operators(mk, dim), mk);
      lb[k] = std::log(b);
      lr[k] = std::log(res);
      detail += " " + num(b, 3) + ": " + num(res, 3) + (k < 2 ? "," : "");
    }
    const double mb = (lb[0] + lb[1] + lb[2]) / 3.0, mr = (lr[0] + lr[1] + lr[2]) / 3.0;
    double sxy = 0.0, sxx = 0.0;
    for (int k = 0; k < 3; ++k) {
      sxy += (lb[k] - mb) * (lr[k] - mr);
      sxx += (lb[k] - mb) * (lb[k] - mb);
    }
    const double slope = sxy / sxx;
    rep.checks.push_back({"commutator scaling", std::abs(slope - 2.0) <= 0.1, slope, 0.1,
                          "log-log slope of interior [x,p] - i hbar (1 + beta p^2); " + detail});
  }
  {
    const double amp = std::sqrt(2.0 * req.hbar * req.j / (req.mass * req.omega));
    const double r1 = matrix_vs_closed_form(model, req.j, dim, times);
    if (req.beta == 0.0) {
      const double tol = 1e-12 * amp;
      rep.checks.push_back({"matrix vs closed form", r1 <= tol, r1, tol,
                            "max |<x(t)> - A cos(wt)| at beta = 0"});
    } else {
      const OscillatorModel half(req.mass, req.omega, req.hbar, 0.5 * req.beta);
      const double r2 = matrix_vs_closed_form(half, req.j, gk_dimension(half, req.j), times);
      const double ratio = r1 / r2;
      const double order = std::log2(ratio);
      rep.checks.push_back({"matrix vs closed form", ratio >= 3.5 && std::abs(order - 2.0) <= 0.2,
                            order, 0.2,
                            "residual " + num(r1, 3) + " at beta, " + num(r2, 3) +
                                " at beta/2; order in beta"});
    }
  }
  {
    const double bc = req.classical_beta, ac = req.classical_amplitude;
    const double scale = ac * bc * req.mass * req.mass * req.omega * req.omega * ac * ac;
    const double d1 = classical_deviation(req.mass, req.omega, bc, ac, times);
    const double d2 = classical_deviation(req.mass, req.omega, 0.5 * bc, ac, times);
    const double ratio = d1 / d2;
    rep.checks.push_back({"classical limit", d1 <= 1e-3 * scale && ratio >= 3.5, d1 / scale, 1e-3,
                          "max |x_ode - x_closed(hbar=0)| / (A beta m^2 w^2 A^2); halving beta divides it by " +
                              num(ratio, 3)});
  }
  return rep;
}

CommandOutput format_quantum_check(const QuantumCheckReport& rep, const QuantumCheckRequest& req) {
  const OscillatorModel model(req.mass, req.omega, req.hbar, req.beta);
  std::string t = "model: m=" + num(req.mass) + " omega=" + num(req.omega) + " hbar=" +
                  num(req.hbar) + " beta=" + num(req.beta) + " (nu=" + num(model.nu(), 4) + ")\n";
  t += "state: J=" + num(req.j) + ", dimension " + std::to_string(rep.dimension) + "\n";
  json checks = json::array();
  for (const auto& c : rep.checks) {
    t += std::string(c.passed ? "PASS" : "FAIL") + "  " + pad(c.name, 22) + " measured " +
         pad(num(c.measured, 4), 11) + " tol " + num(c.tolerance, 3) + "  (" + c.detail + ")\n";
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  t += rep.all_passed() ? "all checks passed\n" : "some checks failed\n";
  json j;
  j["model"] = {{"mass", req.mass}, {"omega", req.omega}, {"hbar", req.hbar},
                {"beta", req.beta}, {"nu", model.nu()}};
  j["j"] = req.j;
  j["dimension"] = rep.dimension;
  j["checks"] = checks;
  j["all_passed"] = rep.all_passed();
  return {t, j.dump(2) + "\n"};
}

// scenarios list

CommandOutput cmd_scenarios_list(const RunConfig& config) {
  const auto registry = registry_for(config);
  std::string t = pad("label", 46) + pad("kind", 22) + pad("style", 8) + pad("plot", 6) +
                  pad("B", 12) + pad("N", 14) + pad("alpha_min", 11) + "reference\n";
  json list = json::array();
  for (const auto& s : registry.scenarios) {
    const auto b = evaluate(s);
    t += pad(s.label, 46) + pad(to_string(s.kind()), 22) + pad(to_string(s.style), 8) +
         pad(s.plot ? "yes" : "no", 6) + pad(num(b.ratio_upper, 4), 12) +
         pad(num(b.n_particles, 4) + (s.n_particles_inferred ? "*" : ""), 14) +
         pad(num(b.alpha_min, 4), 11) +
         (s.reference.alpha_min ? num(*s.reference.alpha_min, 4) : std::string("-")) + "\n";
    json e = {{"label", s.label},
              {"kind", to_string(s.kind())},
              {"style", to_string(s.style)},
              {"plot", s.plot},
              {"ratio_upper", b.ratio_upper},
              {"n_particles", b.n_particles},
              {"n_particles_inferred", s.n_particles_inferred},
              {"alpha_min_at_unit_beta0", b.alpha_min}};
    if (s.reference.alpha_min) e["reference_alpha_min"] = *s.reference.alpha_min;
    if (const auto* lev = std::get_if<LevitationScenario>(&s.params)) {
      e["mass"] = lev->mass();
      e["omega"] = lev->omega();
    }
    list.push_back(e);
  }
  t += "* N inferred, not stated for the cited experiment\n";
  json j;
  j["scenarios"] = list;
  return {t, j.dump(2) + "\n"};
}

}  // namespace gup
