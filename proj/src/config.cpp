#include "gup/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gup/errors.hpp"

namespace gup {

using json = nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InvalidArgument((path.empty() ? key : path + "." + key) + ": unknown key");
  }
}

const json* section(const json& root, const char* key) {
  auto it = root.find(key);
  if (it == root.end()) return nullptr;
  if (!it->is_object()) throw InvalidArgument(std::string(key) + ": expected an object");
  return &*it;
}

void read_number(const json& obj, const char* key, const std::string& path, double& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  const std::string name = path + "." + key;
  if (!it->is_number()) throw InvalidArgument(name + ": expected a number");
  out = it->get<double>();
  if (!std::isfinite(out)) throw InvalidArgument(name + ": must be finite");
}

void require_positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw InvalidArgument(name + ": must be positive");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InvalidArgument("config: expected a JSON object");
  reject_unknown(root, {"pendulum", "fit", "grid", "plot", "scenarios"}, "");

  RunConfig cfg;
  if (const json* p = section(root, "pendulum")) {
    reject_unknown(*p, {"mass", "gravity", "n_particles"}, "pendulum");
    read_number(*p, "mass", "pendulum", cfg.pendulum.mass);
    read_number(*p, "gravity", "pendulum", cfg.pendulum.gravity);
    read_number(*p, "n_particles", "pendulum", cfg.pendulum.n_particles);
    require_positive(cfg.pendulum.mass, "pendulum.mass");
    require_positive(cfg.pendulum.gravity, "pendulum.gravity");
    if (!(cfg.pendulum.n_particles > 1.0))
      throw InvalidArgument("pendulum.n_particles: must exceed 1");
  }
  if (const json* f = section(root, "fit")) {
    reject_unknown(*f, {"level", "sigma_amp_sq_m2", "sigma_period_s"}, "fit");
    read_number(*f, "level", "fit", cfg.fit.level);
    read_number(*f, "sigma_amp_sq_m2", "fit", cfg.fit.sigma_amp_sq_m2);
    read_number(*f, "sigma_period_s", "fit", cfg.fit.sigma_period_s);
    if (!(cfg.fit.level > 0.0 && cfg.fit.level < 1.0))
      throw InvalidArgument("fit.level: must be in (0, 1)");
    require_positive(cfg.fit.sigma_amp_sq_m2, "fit.sigma_amp_sq_m2");
    require_positive(cfg.fit.sigma_period_s, "fit.sigma_period_s");
  }
  if (const json* g = section(root, "grid")) {
    reject_unknown(*g, {"beta0_min", "beta0_max", "points"}, "grid");
    read_number(*g, "beta0_min", "grid", cfg.grid.beta0_min);
    read_number(*g, "beta0_max", "grid", cfg.grid.beta0_max);
    if (auto it = g->find("points"); it != g->end()) {
      if (!it->is_number_integer() || it->get<long long>() < 1)
        throw InvalidArgument("grid.points: expected a positive integer");
      cfg.grid.points = it->get<std::size_t>();
    }
    require_positive(cfg.grid.beta0_min, "grid.beta0_min");
    if (!(cfg.grid.beta0_max >= cfg.grid.beta0_min))
      throw InvalidArgument("grid.beta0_max: must be >= grid.beta0_min");
  }
  if (const json* pl = section(root, "plot")) {
    reject_unknown(*pl, {"alpha_min", "alpha_max"}, "plot");
    read_number(*pl, "alpha_min", "plot", cfg.plot.alpha_min);
    read_number(*pl, "alpha_max", "plot", cfg.plot.alpha_max);
    if (!(cfg.plot.alpha_max > cfg.plot.alpha_min))
      throw InvalidArgument("plot.alpha_max: must exceed plot.alpha_min");
  }
  if (auto it = root.find("scenarios"); it != root.end()) {
    if (!it->is_string() || it->get<std::string>().empty())
      throw InvalidArgument("scenarios: expected a non-empty path string");
    std::filesystem::path p = it->get<std::string>();
    cfg.scenarios = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

std::optional<std::filesystem::path> resolve_config_path(
    const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return explicit_path;
  const char* env = std::getenv("GUP_CONFIG");
  if (env != nullptr && *env != '\0') return std::filesystem::path(env);
  return std::nullopt;
}

RunConfig load_config_or_default(const std::optional<std::filesystem::path>& explicit_path) {
  const auto path = resolve_config_path(explicit_path);
  return path ? load_run_config(*path) : RunConfig{};
}

Registry registry_for(const RunConfig& config) {
  return config.scenarios ? load_registry(*config.scenarios) : default_registry();
}

}  // namespace gup
