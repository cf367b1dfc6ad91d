#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gup/dataset.hpp"
#include "gup/errors.hpp"
#include "gup/registry.hpp"

using namespace gup;
using json = nlohmann::ordered_json;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_registry(text);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

std::string with(const std::string& scenario) { return "{\"scenarios\": [" + scenario + "]}"; }

const std::string pendulum_entry =
    R"({"label": "p", "kind": "pendulum-fit", "n_particles": 1e26, "parameters": {"ratio_upper": 0.01}})";

}  // namespace

TEST_CASE("bundled scenarios file matches the built-in registry") {
  const auto path = bundled_table_path().parent_path() / "scenarios.json";
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == registry_to_json(default_registry()));
  const auto reg = load_registry(path);
  CHECK(registry_to_json(reg) == ss.str());
}

TEST_CASE("default registry values") {
  const auto reg = default_registry();
  REQUIRE(reg.scenarios.size() == 6);
  const auto& s = reg.scenarios;
  CHECK(s[0].kind() == ScenarioKind::pendulum_fit);
  CHECK(std::round(100.0 * evaluate(s[0]).alpha_min) == 7.0);

  CHECK(evaluate(s[1]).alpha_min == -0.33);
  CHECK(evaluate(s[2]).alpha_min == -0.25);
  for (int i : {1, 2}) {
    const auto b = evaluate(s[i]);
    CHECK(alpha_bound(b.ratio_upper, b.n_particles, 1.0) == doctest::Approx(b.alpha_min).epsilon(1e-12));
    CHECK(s[i].n_particles_inferred);
  }

  const auto& lev = std::get<LevitationScenario>(s[3].params);
  CHECK(lev.omega() == doctest::Approx(*s[3].reference.omega).epsilon(0.3 / 36.71));
  CHECK(evaluate(s[3]).alpha_min == doctest::Approx(0.35).epsilon(0.01 / 0.35));
  CHECK(evaluate(s[4]).alpha_min == doctest::Approx(0.24).epsilon(0.01 / 0.24));
  CHECK(evaluate(s[3]).n_particles == doctest::Approx(nucleon_count(lev.mass())));
  CHECK(s[3].style == LineStyle::dashed);
  CHECK_FALSE(s[4].plot);

  CHECK(s[5].kind() == ScenarioKind::optomechanical);
  CHECK(evaluate(s[5]).alpha_min == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("scenario boundaries pass through the registered point") {
  const std::vector<double> grid = {1e-4, 1.0, 1e8};
  for (const auto& s : default_registry().scenarios) {
    CAPTURE(s.label);
    const auto line = scenario_boundary(s, grid);
    REQUIRE(line.points.size() == 3);
    CHECK(line.points[1].alpha == doctest::Approx(evaluate(s).alpha_min).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("registry round trips through JSON") {
  Registry reg = default_registry();
  OptomechanicalScenario opt;
  opt.ratio_upper = 1e6;
  opt.phase_resolution = 1e-3;
  opt.physics = OptomechParams{1e5, 1064e-9, 1e-11, 1e5, 1e8, 0.0};
  ExperimentScenario extra;
  extra.label = "physics-derived";
  extra.n_particles = 6e15;
  extra.params = opt;
  reg.scenarios.push_back(extra);
  const auto text = registry_to_json(reg);
  const auto back = parse_registry(text);
  CHECK(registry_to_json(back) == text);
  CHECK(evaluate(back.scenarios.back()).ratio_upper == doctest::Approx(optomech_ratio_bound(1e-3, *opt.physics)));
}

TEST_CASE("schema errors name the offending key") {
  CHECK_THROWS_AS(parse_registry("{\"scenarios\": ["), ParseError);
  CHECK(error_of("[]") == "registry: expected a JSON object");
  CHECK(error_of("{\"scenario\": []}") == "registry.scenario: unknown key");
  CHECK(error_of(with(pendulum_entry)) == "");
  CHECK(error_of(with(R"({"label": "p", "kind": "pendulum", "n_particles": 1e26, "parameters": {}})")) ==
        "scenarios[0].kind: unknown kind 'pendulum'");
  CHECK(error_of(with(R"({"label": "p", "kind": "pendulum-fit", "parameters": {"ratio_upper": 0.01}})")) ==
        "scenarios[0].n_particles: missing required key");
  CHECK(error_of(with(R"({"label": "p", "kind": "pendulum-fit", "n_particles": 1e26, "parameters": {}})")) ==
        "scenarios[0].parameters.ratio_upper: missing required key");
  CHECK(error_of(with(pendulum_entry + "," +
                      R"({"label": "q", "kind": "pendulum-fit", "n_particles": 1e26, "parameters": {"ratio_upper": -1}})")) ==
        "scenarios[1].parameters.ratio_upper: must be positive");
  CHECK(error_of(with(R"({"label": "p", "kind": "pendulum-fit", "n_particles": 1e26, "parameters": {"ratio_upper": 0.01, "extra": 1}})")) ==
        "scenarios[0].parameters.extra: unknown key");
  CHECK(error_of(with(R"({"label": "p", "kind": "pendulum-fit", "style": "dotted", "n_particles": 1e26, "parameters": {"ratio_upper": 0.01}})")) ==
        "scenarios[0].style: expected \"solid\" or \"dashed\"");
  CHECK(error_of(with(R"({"label": "o", "kind": "oscillator-frequency", "parameters": {"alpha_min": 0, "ratio_upper": 10}})")) ==
        "scenarios[0].parameters.alpha_min: must be non-zero");
  CHECK(error_of(with(R"({"label": "l", "kind": "levitation", "parameters": {"density": 19300, "susceptibility": 3e-5, "gradient": 1000, "radius": 0.05, "amplitude": 0.1}})")) ==
        "scenarios[0].parameters.damping: required unless delta_omega_override is set");
  CHECK(error_of(with(R"({"label": "p", "kind": "pendulum-fit", "n_particles": "many", "parameters": {"ratio_upper": 0.01}})"))
            .starts_with("scenarios[0].n_particles"));
  CHECK_THROWS_AS(load_registry("/nonexistent/scenarios.json"), InvalidArgument);
}
