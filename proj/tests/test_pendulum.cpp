#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gup/errors.hpp"
#include "gup/pendulum.hpp"
#include "oracles.hpp"

using namespace gup;

namespace {

const PendulumConfig unit{1.0, 1.0, 9.81};

}  // namespace

TEST_CASE("pendulum config validation and harmonic period") {
  CHECK(unit.harmonic_period() == doctest::Approx(2.0 * std::numbers::pi / std::sqrt(9.81)));
  CHECK(unit.omega0() == doctest::Approx(std::sqrt(9.81)));
  CHECK_THROWS_AS((PendulumConfig{0.0, 1.0, 9.81}.validate()), InvalidArgument);
  CHECK_THROWS_AS((PendulumConfig{1.0, -1.0, 9.81}.validate()), InvalidArgument);
}

TEST_CASE("first-order period") {
  CHECK(period_first_order(unit, 0.0, 0.0) == doctest::Approx(unit.harmonic_period()).epsilon(1e-15));
  const double a = 0.1, beta = 1e-3;
  const double expected = unit.harmonic_period() *
                          (1.0 + a * a / 16.0 - beta * unit.mass * unit.mass * unit.gravity * a * a / 2.0);
  CHECK(period_first_order(unit, beta, a) == doctest::Approx(expected).epsilon(1e-15));
  CHECK_THROWS_AS(period_first_order(unit, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(period_first_order(unit, 0.0, -0.1), InvalidArgument);
  CHECK_THROWS_AS(period_first_order(unit, -1.0, 0.1), InvalidArgument);

  DeformationParams params;
  params.beta0 = 2.0;
  CHECK(period_first_order(unit, params, a) == period_first_order(unit, effective_beta(params), a));
}

TEST_CASE("quadrature period at beta = 0 matches the AGM elliptic integral") {
  for (double phi : {0.01, 0.05, 0.2, 0.5, 1.0, 1.5}) {
    CAPTURE(phi);
    const double ref = oracle::pendulum_period(unit.length, unit.gravity, phi);
    CHECK(period_exact_quadrature(unit, 0.0, phi) == doctest::Approx(ref).epsilon(1e-11));
    CHECK(period_exact_quadrature(unit, 0.0, phi, 1e-12, PeriodIntegrand::linearized) ==
          doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("quadrature period domain checks") {
  CHECK_THROWS_AS(period_exact_quadrature(unit, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(period_exact_quadrature(unit, 0.0, 1.6), InvalidArgument);
  CHECK_THROWS_AS(period_exact_quadrature(unit, 0.0, 0.1, 1e-16), InvalidArgument);
  CHECK_THROWS_AS(period_exact_quadrature(unit, -1e-3, 0.1), InvalidArgument);
}

TEST_CASE("linearized integrand reproduces the first-order beta coefficient") {
  // T_lin is exactly linear in beta; its slope relative to T0 approaches
  // -m^2 g L phi^2 / 2 as phi -> 0.
  const double phi = 0.01, beta = 1e-3;
  const double t0 = period_exact_quadrature(unit, 0.0, phi, 1e-13, PeriodIntegrand::linearized);
  const double t1 = period_exact_quadrature(unit, beta, phi, 1e-13, PeriodIntegrand::linearized);
  const double slope = (t1 - t0) / (beta * unit.harmonic_period());
  const double expected = -unit.mass * unit.mass * unit.gravity * unit.length * phi * phi / 2.0;
  CHECK(slope == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("full and linearized integrands differ at second order in beta") {
  const double phi = 0.3;
  auto gap = [&](double beta) {
    return std::abs(period_exact_quadrature(unit, beta, phi, 1e-13) -
                    period_exact_quadrature(unit, beta, phi, 1e-13, PeriodIntegrand::linearized));
  };
  const double ratio = gap(2e-3) / gap(1e-3);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("the deformation shortens the period") {
  const double phi = 0.4;
  double prev = period_exact_quadrature(unit, 0.0, phi);
  for (double beta : {1e-4, 1e-3, 1e-2}) {
    const double t = period_exact_quadrature(unit, beta, phi);
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("first-order formula error is fourth order in the amplitude") {
  auto gap = [&](double phi) {
    const double exact = period_exact_quadrature(unit, 0.0, phi, 1e-13);
    return std::abs(exact - period_first_order(unit, 0.0, unit.length * phi)) / exact;
  };
  const double order = std::log2(gap(0.2) / gap(0.1));
  CHECK(order == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("trajectory period matches quadrature and AGM") {
  const double phi = 0.3;
  const auto traj = integrate_trajectory(unit, 0.0, phi, 5.0 * unit.harmonic_period());
  CHECK(traj.period_from_crossings() ==
        doctest::Approx(oracle::pendulum_period(unit.length, unit.gravity, phi)).epsilon(1e-8));

  const double beta = 1e-3;
  const auto deformed = integrate_trajectory(unit, beta, phi, 5.0 * unit.harmonic_period());
  CHECK(deformed.period_from_crossings() ==
        doctest::Approx(period_exact_quadrature(unit, beta, phi)).epsilon(1e-8));
}

TEST_CASE("trajectory turning points return to the amplitude") {
  const double phi = 0.8;
  const auto traj = integrate_trajectory(unit, 2e-3, phi, 4.0 * unit.harmonic_period());
  REQUIRE(traj.turning_angles.size() >= 7);
  for (double a : traj.turning_angles) CHECK(std::abs(a) == doctest::Approx(phi).epsilon(1e-9));
  for (std::size_t i = 1; i < traj.turning_angles.size(); ++i)
    CHECK(traj.turning_angles[i] * traj.turning_angles[i - 1] < 0.0);
  for (const auto& s : traj.samples) {
    CHECK(std::abs(s.angle) <= phi * (1.0 + 1e-9));
    CHECK(s.displacement == doctest::Approx(unit.length * std::sin(s.angle)));
  }
}

TEST_CASE("undeformed trajectory conserves energy") {
  const double phi = 0.6;
  const auto traj = integrate_trajectory(unit, 0.0, phi, 3.0 * unit.harmonic_period());
  const double e0 = deformed_energy(unit, 0.0, phi, 0.0);
  double worst = 0.0;
  for (const auto& s : traj.samples)
    worst = std::max(worst, std::abs(deformed_energy(unit, 0.0, s.angle, s.angular_velocity) - e0));
  CHECK(worst / std::abs(e0) < 1e-9);
}

TEST_CASE("deformed trajectories conserve the deformed energy only") {
  const double phi = 0.5;
  auto drift = [&](double beta, double energy_beta) {
    const auto traj = integrate_trajectory(unit, beta, phi, unit.harmonic_period());
    const double e0 = deformed_energy(unit, energy_beta, phi, 0.0);
    double worst = 0.0;
    for (const auto& s : traj.samples)
      worst = std::max(worst, std::abs(deformed_energy(unit, energy_beta, s.angle, s.angular_velocity) - e0));
    return worst / std::abs(e0);
  };
  CHECK(drift(1e-2, 1e-2) < 1e-12);
  // The undeformed energy is off by an amount linear in beta.
  const double d1 = drift(1e-2, 0.0), d2 = drift(5e-3, 0.0);
  CHECK(d1 > 1e-4);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("trajectory input checks") {
  CHECK_THROWS_AS(integrate_trajectory(unit, 0.0, 1e-7, 1.0), InvalidArgument);
  CHECK_THROWS_AS(integrate_trajectory(unit, 0.0, 0.1, 0.0), InvalidArgument);
  const auto shortrun = integrate_trajectory(unit, 0.0, 0.1, 0.1 * unit.harmonic_period());
  CHECK_THROWS_AS(shortrun.period_from_crossings(), NumericalError);
}

TEST_CASE("harmonic frequency shift") {
  CHECK(harmonic_frequency_shift(2.0, 3.0, 0.5, 0.1) == doctest::Approx(0.1 * 4.0 * 27.0 * 0.25 / 2.0));
  DeformationParams p;
  p.beta0 = 1.0;
  CHECK(harmonic_frequency_shift(1.0, 1.0, 1.0, p) ==
        doctest::Approx(effective_beta(p) / 2.0).epsilon(1e-15));
}

TEST_CASE("deformed classical oscillator") {
  const double m = 1.0, w = 1.0, a = 0.05;
  const double period = 2.0 * std::numbers::pi / w;
  SUBCASE("undeformed is a cosine") {
    const auto s = integrate_oscillator(m, w, 0.0, a, 3.0 * period, 301);
    REQUIRE(s.size() == 301);
    for (const auto& x : s) {
      CHECK(x.position == doctest::Approx(a * std::cos(w * x.time)).epsilon(1e-9).scale(a));
      CHECK(x.momentum == doctest::Approx(-m * w * a * std::sin(w * x.time)).epsilon(1e-9).scale(a));
    }
  }
  SUBCASE("frequency shift beta m^2 w^3 A^2 / 2") {
    // Phase lag after n periods against the undeformed motion.
    const double beta = 0.5;
    const int n = 20;
    const auto s = integrate_oscillator(m, w, beta, a, n * period, 2001);
    // Upward zero crossings of x define the period.
    std::vector<double> crossings;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i - 1].position < 0.0 && s[i].position >= 0.0) {
        const double f = s[i - 1].position / (s[i - 1].position - s[i].position);
        crossings.push_back(s[i - 1].time + f * (s[i].time - s[i - 1].time));
      }
    }
    REQUIRE(crossings.size() >= 10);
    const double measured = 2.0 * std::numbers::pi * (crossings.size() - 1) /
                            (crossings.back() - crossings.front());
    const double shift = harmonic_frequency_shift(m, w, a, beta);
    CHECK((measured - w) == doctest::Approx(shift).epsilon(0.05));
  }
  CHECK_THROWS_AS(integrate_oscillator(m, w, -1.0, a, 1.0, 10), InvalidArgument);
  CHECK_THROWS_AS(integrate_oscillator(m, w, 0.0, a, 1.0, 1), InvalidArgument);
}
