#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <json.hpp>

#include "gup/commands.hpp"
#include "gup/errors.hpp"
#include "gup/quantum.hpp"

using namespace gup;
using json = nlohmann::json;

namespace {

MeasurementSeries bundled_series(const RunConfig& c) {
  return to_series(load_dataset(bundled_table_path()), c.fit.sigma_amp_sq_m2, c.fit.sigma_period_s);
}

}  // namespace

TEST_CASE("fit of the bundled table") {
  const RunConfig c;
  const auto r = run_fit(bundled_series(c), c);
  CHECK(r.n_points == 21);
  CHECK(r.fit.dof == 19);
  CHECK(r.fit.slope == doctest::Approx(0.0232).epsilon(0.0005 / 0.0232));
  const double half = 0.5 * (r.slope_ci.upper - r.slope_ci.lower);
  CHECK(half >= 0.0008);
  CHECK(half <= 0.0016);
  CHECK(std::abs(r.fit.intercept - 3.4730) <= 0.0002);
  CHECK(r.fit.reduced_chi2 >= 0.03);
  CHECK(r.fit.reduced_chi2 <= 0.15);
  CHECK(std::abs(r.length.value - 2.9954) <= 0.0004);
  CHECK(r.ratio.upper >= 0.009);
  CHECK(r.ratio.upper <= 0.013);
  CHECK(r.ratio_upper_rounded == doctest::Approx(0.01));
  CHECK(std::abs(r.alpha_min - 0.07) <= 0.01);
  CHECK(std::abs(r.alpha_min_rounded - 0.07) <= 0.01);

  const auto out = cmd_fit(bundled_table_path(), c);
  const auto j = json::parse(out.json);
  CHECK(j["points"] == 21);
  CHECK(j["alpha_min"].get<double>() == doctest::Approx(r.alpha_min));
  CHECK(out.text.find("alpha") != std::string::npos);
}

TEST_CASE("fit input errors") {
  const RunConfig c;
  MeasurementSeries two;
  two.points = {{0.0, 5e-3, 3.47, 1e-4}, {0.1, 5e-3, 3.48, 1e-4}};
  try {
    run_fit(two, c);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("at least 3 rows") != std::string::npos);
    CHECK(std::string(e.what()).find("dof = 0") != std::string::npos);
  }
  CHECK_THROWS_AS(cmd_fit("/nonexistent.csv", c), ParseError);
}

TEST_CASE("zero-slope data bound the ratio at the classical over deformation coefficient") {
  RunConfig c;
  MeasurementSeries flat;
  for (int i = 0; i < 10; ++i) flat.points.push_back({0.02 * i, 1e-6, 3.473, 1e-9});
  const auto r = run_fit(flat, c);
  CHECK(std::abs(r.fit.slope) < 1e-9);
  CHECK(r.ratio.upper == doctest::Approx(r.coefficients.classical / r.coefficients.deformation).epsilon(1e-6));
  CHECK(r.ratio.upper == doctest::Approx(0.123).epsilon(0.01));

  MeasurementSeries steep;
  for (int i = 0; i < 10; ++i) steep.points.push_back({0.02 * i, 1e-6, 3.473 + 0.05 * 0.02 * i, 1e-9});
  const auto s = run_fit(steep, c);
  CHECK(s.ratio.upper < 0.0);
  CHECK(std::isinf(s.alpha_min));
  CHECK(json::parse(format_fit(s).json)["alpha_min"].is_null());
}

TEST_CASE("exclusion over the default registry") {
  RunConfig c;
  c.grid.points = 121;
  const auto res = cmd_exclusion(c);
  REQUIRE(res.curves.size() == 4);
  auto alpha_at_one = [&](const PlotCurve& curve) {
    const auto it = std::find_if(curve.boundary.points.begin(), curve.boundary.points.end(),
                                 [](const BoundaryPoint& p) { return p.beta0 == 1.0; });
    REQUIRE(it != curve.boundary.points.end());
    return it->alpha;
  };
  CHECK(std::abs(alpha_at_one(res.curves[0]) - 0.07) <= 0.01);
  CHECK(alpha_at_one(res.curves[1]) == -0.33);
  CHECK(alpha_at_one(res.curves[2]) == -0.25);
  CHECK(std::abs(alpha_at_one(res.curves[3]) - 0.35) <= 0.01);
  CHECK(res.csv.find("Micro-oscillators (Bawaj 2015),1,-0.33,solid\n") != std::string::npos);
  CHECK(res.csv.find("Macroscopic oscillator (Bushev 2019),1,-0.25,solid\n") != std::string::npos);
  CHECK(std::count(res.csv.begin(), res.csv.end(), '\n') == 1 + 4 * 121);
  CHECK(res.svg.find("<polyline") != std::string::npos);
  CHECK(json::parse(res.report.json)["curves"].size() == 4);

  c.grid.beta0_min = c.grid.beta0_max = 1.0;
  c.grid.points = 1;
  const auto single = cmd_exclusion(c);
  for (const auto& curve : single.curves) CHECK(curve.boundary.points.size() == 1);
  CHECK(single.svg.find("<circle") != std::string::npos);
}

TEST_CASE("write_file reports unwritable paths") {
  CHECK_THROWS_AS(write_file("/nonexistent/dir/out.csv", "x"), InvalidArgument);
  const auto p = std::filesystem::temp_directory_path() / "gup_write_test.txt";
  write_file(p, "abc\n");
  CHECK(std::filesystem::file_size(p) == 4);
  std::filesystem::remove(p);
}

TEST_CASE("period command methods agree") {
  PeriodRequest req;
  req.pendulum = {constants::pendulum_mass, 2.9954, constants::pendulum_gravity};
  req.beta = 1e-3;
  req.amplitude = 0.03;
  req.method = PeriodMethod::exact;
  const double exact = json::parse(cmd_period(req).json)["period"].get<double>();
  req.method = PeriodMethod::first_order;
  const double first = json::parse(cmd_period(req).json)["period"].get<double>();
  CHECK(std::abs(exact - first) / exact < 1e-6);
  req.method = PeriodMethod::trajectory;
  req.rel_tol = 1e-11;
  const auto traj = json::parse(cmd_period(req).json);
  CHECK(traj["period"].get<double>() == doctest::Approx(exact).epsilon(1e-8));
  CHECK(traj["samples"].size() > 10);

  req.method = PeriodMethod::first_order;
  req.amplitude = 0.0;
  CHECK(json::parse(cmd_period(req).json)["period"].get<double>() ==
        doctest::Approx(req.pendulum.harmonic_period()));
  req.method = PeriodMethod::exact;
  CHECK_THROWS_AS(cmd_period(req), InvalidArgument);
  req.amplitude = 10.0;
  CHECK_THROWS_AS(cmd_period(req), InvalidArgument);
  req.amplitude = 0.03;
  req.beta = -1.0;
  CHECK_THROWS_AS(cmd_period(req), InvalidArgument);
}

TEST_CASE("quantum check suite") {
  QuantumCheckRequest req;
  const auto rep = run_quantum_check(req);
  REQUIRE(rep.checks.size() == 6);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
  CHECK(json::parse(format_quantum_check(rep, req).json)["all_passed"] == true);

  req.beta = 0.0;
  CHECK(run_quantum_check(req).all_passed());

  req.beta = 2e-4;
  req.dimension = 6;
  CHECK_THROWS_AS(run_quantum_check(req), TruncationError);
  req.dimension = 0;
  req.n_times = 1;
  CHECK_THROWS_AS(run_quantum_check(req), InvalidArgument);
}

TEST_CASE("scenarios list") {
  const auto out = cmd_scenarios_list(RunConfig{});
  const auto j = json::parse(out.json);
  CHECK(j["scenarios"].size() == 6);
  CHECK(out.text.find("levitation") != std::string::npos);
}
