#include <doctest.h>

#include <cmath>

#include "gup/deformation.hpp"
#include "gup/errors.hpp"
#include "oracles.hpp"

using namespace gup;

TEST_CASE("effective beta scales with beta0 and N^-alpha") {
  DeformationParams p;
  p.beta0 = 1.0;
  const double pc = constants::planck_mass * constants::light_speed;
  CHECK(effective_beta(p) == doctest::Approx(1.0 / (pc * pc)).epsilon(1e-15));
  CHECK(planck_momentum_inv_sq(p) == doctest::Approx(1.0 / (pc * pc)).epsilon(1e-15));

  p.beta0 = 3.0;
  p.alpha = 0.5;
  p.n_particles = 1e4;
  CHECK(effective_beta(p) == doctest::Approx(3.0 / (100.0 * pc * pc)).epsilon(1e-14));

  p.beta0 = 0.0;
  CHECK(effective_beta(p) == 0.0);
}

TEST_CASE("deformation parameters are validated") {
  DeformationParams p;
  p.n_particles = 0.5;
  CHECK_THROWS_AS(effective_beta(p), InvalidArgument);
  p.n_particles = 1.0;
  p.planck_mass = 0.0;
  CHECK_THROWS_AS(effective_beta(p), InvalidArgument);
  p.planck_mass = constants::planck_mass;
  p.alpha = NAN;
  CHECK_THROWS_AS(effective_beta(p), InvalidArgument);
}

TEST_CASE("momentum remap is exact at beta = 0 and inverts") {
  CHECK(momentum_remap(1.2345, 0.0) == 1.2345);
  CHECK(momentum_unmap(1.2345, 0.0) == 1.2345);
  for (double beta : {1e-6, 1e-2, 1.0}) {
    for (double p : {-30.0, -1.0, 0.0, 0.5, 7.0}) {
      CHECK(momentum_unmap(momentum_remap(p, beta), beta) == doctest::Approx(p).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(momentum_remap(1.0, -1.0), InvalidArgument);
}

TEST_CASE("remapped momentum has a canonical bracket") {
  // d p~ / dp = 1 / (1 + beta p^2), which turns {x, p} = 1 + beta p^2 into {x, p~} = 1.
  const double beta = 0.3;
  for (double p : {-2.0, 0.1, 1.5}) {
    const double d = oracle::derivative([&](double q) { return momentum_remap(q, beta); }, p, 1e-5);
    CHECK(d * (1.0 + beta * p * p) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("remap saturates at pi / (2 sqrt(beta))") {
  const double beta = 4.0;
  CHECK(momentum_remap(1e12, beta) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-10));
}
