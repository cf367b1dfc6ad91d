#include "gup/registry.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "gup/errors.hpp"

namespace gup {

using json = nlohmann::ordered_json;

double LevitationScenario::mass() const {
  return density * (4.0 / 3.0) * std::numbers::pi * radius * radius * radius;
}

double LevitationScenario::omega() const {
  return levitation_frequency(density, susceptibility, gradient);
}

LevitationParams LevitationScenario::params() const {
  return {mass(), omega(), amplitude, damping, n_measurements, delta_omega_override};
}

ScenarioKind ExperimentScenario::kind() const { return static_cast<ScenarioKind>(params.index()); }

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::pendulum_fit: return "pendulum-fit";
    case ScenarioKind::oscillator_frequency: return "oscillator-frequency";
    case ScenarioKind::levitation: return "levitation";
    case ScenarioKind::optomechanical: return "optomechanical";
  }
  return "unknown";
}

std::string to_string(LineStyle style) { return style == LineStyle::solid ? "solid" : "dashed"; }

namespace {

double scenario_ratio_upper(const ExperimentScenario& s) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LevitationScenario>) {
          return levitation_ratio_bound(p.params());
        } else if constexpr (std::is_same_v<T, OptomechanicalScenario>) {
          return p.physics ? optomech_ratio_bound(p.phase_resolution, *p.physics) : p.ratio_upper;
        } else {
          return p.ratio_upper;
        }
      },
      s.params);
}

double scenario_nucleons(const ExperimentScenario& s, double upper) {
  if (s.n_particles) return *s.n_particles;
  if (const auto* osc = std::get_if<OscillatorFrequencyScenario>(&s.params))
    return std::pow(upper, -1.0 / osc->alpha_min);
  if (const auto* lev = std::get_if<LevitationScenario>(&s.params))
    return nucleon_count(lev->mass());
  throw InvalidArgument(s.label + ": n_particles is required for kind " + to_string(s.kind()));
}

}  // namespace

ScenarioBound evaluate(const ExperimentScenario& scenario) {
  ScenarioBound out;
  out.ratio_upper = scenario_ratio_upper(scenario);
  out.n_particles = scenario_nucleons(scenario, out.ratio_upper);
  if (const auto* osc = std::get_if<OscillatorFrequencyScenario>(&scenario.params)) {
    out.alpha_min = osc->alpha_min;
  } else {
    out.alpha_min = alpha_bound(out.ratio_upper, out.n_particles, 1.0);
  }
  return out;
}

ExclusionBoundary scenario_boundary(const ExperimentScenario& scenario,
                                    std::span<const double> beta0_grid) {
  const auto bound = evaluate(scenario);
  if (scenario.kind() == ScenarioKind::oscillator_frequency)
    return exclusion_boundary_from_alpha(bound.alpha_min, bound.n_particles, beta0_grid);
  return exclusion_boundary(bound.ratio_upper, bound.n_particles, beta0_grid);
}

Registry default_registry() {
  Registry reg;
  const auto osc_upper = 1e6;

  ExperimentScenario pendulum;
  pendulum.label = "Pendulum (conventional suspension)";
  pendulum.n_particles = constants::pendulum_nucleons;
  pendulum.params = PendulumFitScenario{1e-2};
  pendulum.reference = {0.07, 0.011, std::nullopt};
  reg.scenarios.push_back(pendulum);

  ExperimentScenario bawaj;
  bawaj.label = "Micro-oscillators (Bawaj 2015)";
  bawaj.n_particles_inferred = true;
  bawaj.params = OscillatorFrequencyScenario{-0.33, osc_upper};
  bawaj.reference = {-0.33, std::nullopt, std::nullopt};
  reg.scenarios.push_back(bawaj);

  ExperimentScenario bushev;
  bushev.label = "Macroscopic oscillator (Bushev 2019)";
  bushev.n_particles_inferred = true;
  bushev.params = OscillatorFrequencyScenario{-0.25, osc_upper};
  bushev.reference = {-0.25, std::nullopt, std::nullopt};
  reg.scenarios.push_back(bushev);

  LevitationScenario gold;
  gold.density = 19300.0;
  gold.susceptibility = 3.287e-5;
  gold.gradient = 1e3;
  gold.radius = 0.05;
  gold.amplitude = 0.1;

  ExperimentScenario optimistic;
  optimistic.label = "Diamagnetic levitation (single measurement)";
  optimistic.style = LineStyle::dashed;
  gold.damping = 1.2e-7;
  gold.n_measurements = 1.0;
  optimistic.params = gold;
  optimistic.reference = {0.35, std::nullopt, 36.71};
  reg.scenarios.push_back(optimistic);

  ExperimentScenario conservative;
  conservative.label = "Diamagnetic levitation (conservative)";
  conservative.style = LineStyle::dashed;
  conservative.plot = false;
  gold.damping = 0.0;
  gold.delta_omega_override = 1e-4;
  conservative.params = gold;
  conservative.reference = {0.24, std::nullopt, 36.71};
  reg.scenarios.push_back(conservative);

  ExperimentScenario opto;
  opto.label = "Optomechanical pulse (reference)";
  opto.style = LineStyle::dashed;
  opto.plot = false;
  opto.n_particles = 1e20;
  opto.n_particles_inferred = true;
  opto.params = OptomechanicalScenario{1e6, 0.0, std::nullopt};
  opto.reference = {-0.3, 1e6, std::nullopt};
  reg.scenarios.push_back(opto);

  return reg;
}

namespace {

// Schema helpers. `path` names the key being read in error messages.
const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidArgument(path + "." + key + ": missing required key");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw InvalidArgument(path + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidArgument(path + ": must be finite");
  return x;
}

double positive(const json& obj, const std::string& key, const std::string& path) {
  const double x = number(require(obj, key, path), path + "." + key);
  if (!(x > 0.0)) throw InvalidArgument(path + "." + key + ": must be positive");
  return x;
}

double non_negative_or(const json& obj, const std::string& key, const std::string& path,
                       double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  const double x = number(*it, path + "." + key);
  if (x < 0.0) throw InvalidArgument(path + "." + key + ": must be >= 0");
  return x;
}

std::optional<double> optional_number(const json& obj, const std::string& key,
                                      const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  return number(*it, path + "." + key);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InvalidArgument(path + "." + key + ": unknown key");
  }
}

ScenarioParams parse_params(ScenarioKind kind, const json& p, const std::string& path) {
  if (!p.is_object()) throw InvalidArgument(path + ": expected an object");
  switch (kind) {
    case ScenarioKind::pendulum_fit:
      reject_unknown(p, {"ratio_upper"}, path);
      return PendulumFitScenario{positive(p, "ratio_upper", path)};
    case ScenarioKind::oscillator_frequency: {
      reject_unknown(p, {"alpha_min", "ratio_upper"}, path);
      const double alpha = number(require(p, "alpha_min", path), path + ".alpha_min");
      if (alpha == 0.0) throw InvalidArgument(path + ".alpha_min: must be non-zero");
      const double upper = positive(p, "ratio_upper", path);
      if (upper == 1.0) throw InvalidArgument(path + ".ratio_upper: must differ from 1");
      return OscillatorFrequencyScenario{alpha, upper};
    }
    case ScenarioKind::levitation: {
      reject_unknown(p, {"density", "susceptibility", "gradient", "radius", "amplitude", "damping",
                         "n_measurements", "delta_omega_override"},
                     path);
      LevitationScenario s;
      s.density = positive(p, "density", path);
      s.susceptibility = positive(p, "susceptibility", path);
      s.gradient = positive(p, "gradient", path);
      s.radius = positive(p, "radius", path);
      s.amplitude = positive(p, "amplitude", path);
      s.damping = non_negative_or(p, "damping", path, 0.0);
      s.n_measurements = non_negative_or(p, "n_measurements", path, 1.0);
      s.delta_omega_override = non_negative_or(p, "delta_omega_override", path, 0.0);
      if (s.delta_omega_override == 0.0 && s.damping == 0.0)
        throw InvalidArgument(path + ".damping: required unless delta_omega_override is set");
      if (s.n_measurements < 1.0) throw InvalidArgument(path + ".n_measurements: must be >= 1");
      return s;
    }
    case ScenarioKind::optomechanical: {
      reject_unknown(p, {"ratio_upper", "phase_resolution", "physics"}, path);
      OptomechanicalScenario s;
      s.ratio_upper = positive(p, "ratio_upper", path);
      s.phase_resolution = non_negative_or(p, "phase_resolution", path, 0.0);
      if (auto it = p.find("physics"); it != p.end()) {
        const std::string pp = path + ".physics";
        if (!it->is_object()) throw InvalidArgument(pp + ": expected an object");
        reject_unknown(*it, {"finesse", "wavelength", "mass", "omega", "n_photons", "p_mean"}, pp);
        OptomechParams phys;
        phys.finesse = positive(*it, "finesse", pp);
        phys.wavelength = positive(*it, "wavelength", pp);
        phys.mass = positive(*it, "mass", pp);
        phys.omega = positive(*it, "omega", pp);
        phys.n_photons = positive(*it, "n_photons", pp);
        phys.p_mean = non_negative_or(*it, "p_mean", pp, 0.0);
        s.physics = phys;
        if (!(s.phase_resolution > 0.0))
          throw InvalidArgument(path + ".phase_resolution: required with physics");
      }
      return s;
    }
  }
  throw InvalidArgument(path + ": unknown kind");
}

ScenarioKind parse_kind(const json& v, const std::string& path) {
  if (!v.is_string()) throw InvalidArgument(path + ": expected a string");
  const auto s = v.get<std::string>();
  for (auto k : {ScenarioKind::pendulum_fit, ScenarioKind::oscillator_frequency,
                 ScenarioKind::levitation, ScenarioKind::optomechanical})
    if (s == to_string(k)) return k;
  throw InvalidArgument(path + ": unknown kind '" + s + "'");
}

ExperimentScenario parse_scenario(const json& j, const std::string& path) {
  if (!j.is_object()) throw InvalidArgument(path + ": expected an object");
  reject_unknown(j, {"label", "kind", "style", "plot", "n_particles", "n_particles_inferred",
                     "parameters", "reference"},
                 path);
  ExperimentScenario s;
  const auto& label = require(j, "label", path);
  if (!label.is_string() || label.get<std::string>().empty())
    throw InvalidArgument(path + ".label: expected a non-empty string");
  s.label = label.get<std::string>();
  const auto kind = parse_kind(require(j, "kind", path), path + ".kind");
  if (auto it = j.find("style"); it != j.end()) {
    if (*it == "solid") {
      s.style = LineStyle::solid;
    } else if (*it == "dashed") {
      s.style = LineStyle::dashed;
    } else {
      throw InvalidArgument(path + ".style: expected \"solid\" or \"dashed\"");
    }
  }
  if (auto it = j.find("plot"); it != j.end()) {
    if (!it->is_boolean()) throw InvalidArgument(path + ".plot: expected a boolean");
    s.plot = it->get<bool>();
  }
  if (auto it = j.find("n_particles"); it != j.end()) {
    const double n = number(*it, path + ".n_particles");
    if (!(n > 1.0)) throw InvalidArgument(path + ".n_particles: must exceed 1");
    s.n_particles = n;
  } else if (kind == ScenarioKind::pendulum_fit || kind == ScenarioKind::optomechanical) {
    throw InvalidArgument(path + ".n_particles: missing required key");
  }
  if (auto it = j.find("n_particles_inferred"); it != j.end()) {
    if (!it->is_boolean()) throw InvalidArgument(path + ".n_particles_inferred: expected a boolean");
    s.n_particles_inferred = it->get<bool>();
  }
  s.params = parse_params(kind, require(j, "parameters", path), path + ".parameters");
  if (auto it = j.find("reference"); it != j.end()) {
    const std::string rp = path + ".reference";
    if (!it->is_object()) throw InvalidArgument(rp + ": expected an object");
    reject_unknown(*it, {"alpha_min", "ratio_upper", "omega"}, rp);
    s.reference.alpha_min = optional_number(*it, "alpha_min", rp);
    s.reference.ratio_upper = optional_number(*it, "ratio_upper", rp);
    s.reference.omega = optional_number(*it, "omega", rp);
  }
  return s;
}

json params_to_json(const ScenarioParams& params) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        json j = json::object();
        if constexpr (std::is_same_v<T, PendulumFitScenario>) {
          j["ratio_upper"] = p.ratio_upper;
        } else if constexpr (std::is_same_v<T, OscillatorFrequencyScenario>) {
          j["alpha_min"] = p.alpha_min;
          j["ratio_upper"] = p.ratio_upper;
        } else if constexpr (std::is_same_v<T, LevitationScenario>) {
          j["density"] = p.density;
          j["susceptibility"] = p.susceptibility;
          j["gradient"] = p.gradient;
          j["radius"] = p.radius;
          j["amplitude"] = p.amplitude;
          if (p.damping > 0.0) j["damping"] = p.damping;
          j["n_measurements"] = p.n_measurements;
          if (p.delta_omega_override > 0.0) j["delta_omega_override"] = p.delta_omega_override;
        } else {
          j["ratio_upper"] = p.ratio_upper;
          if (p.physics) {
            j["phase_resolution"] = p.phase_resolution;
            j["physics"] = {{"finesse", p.physics->finesse},     {"wavelength", p.physics->wavelength},
                            {"mass", p.physics->mass},           {"omega", p.physics->omega},
                            {"n_photons", p.physics->n_photons}, {"p_mean", p.physics->p_mean}};
          }
        }
        return j;
      },
      params);
}

}  // namespace

Registry parse_registry(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InvalidArgument("registry: expected a JSON object");
  reject_unknown(root, {"scenarios"}, "registry");
  const auto& list = require(root, "scenarios", "registry");
  if (!list.is_array()) throw InvalidArgument("registry.scenarios: expected an array");
  Registry reg;
  for (std::size_t i = 0; i < list.size(); ++i)
    reg.scenarios.push_back(parse_scenario(list[i], "scenarios[" + std::to_string(i) + "]"));
  return reg;
}

Registry load_registry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open registry file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

std::string registry_to_json(const Registry& registry) {
  json list = json::array();
  for (const auto& s : registry.scenarios) {
    json j;
    j["label"] = s.label;
    j["kind"] = to_string(s.kind());
    j["style"] = to_string(s.style);
    j["plot"] = s.plot;
    if (s.n_particles) j["n_particles"] = *s.n_particles;
    j["n_particles_inferred"] = s.n_particles_inferred;
    j["parameters"] = params_to_json(s.params);
    json ref = json::object();
    if (s.reference.alpha_min) ref["alpha_min"] = *s.reference.alpha_min;
    if (s.reference.ratio_upper) ref["ratio_upper"] = *s.reference.ratio_upper;
    if (s.reference.omega) ref["omega"] = *s.reference.omega;
    if (!ref.empty()) j["reference"] = ref;
    list.push_back(j);
  }
  json root;
  root["scenarios"] = list;
  return root.dump(2) + "\n";
}

}  // namespace gup
