#include <doctest.h>

#include <cstring>

#include "gup/bounds.hpp"
#include "gup/parallel.hpp"

using namespace gup;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial references bit for bit") {
  CHECK(kernels::max_threads() >= 1);

  const auto grid = log_grid(1e-4, 1e8, 4097);
  const auto a_s = kernels::serial::alpha_grid(1e-2, 7.32e26, grid);
  CHECK(bitwise_equal(a_s, kernels::parallel::alpha_grid(1e-2, 7.32e26, grid)));
  CHECK(a_s[2048] == alpha_bound(1e-2, 7.32e26, grid[2048]));

  const PendulumConfig pend{1.2155, 2.9954, 9.80393};
  std::vector<double> angles;
  for (int i = 1; i <= 40; ++i) angles.push_back(0.035 * i);
  const auto p_s = kernels::serial::period_grid(pend, 1e-3, angles, 1e-11);
  CHECK(bitwise_equal(p_s, kernels::parallel::period_grid(pend, 1e-3, angles, 1e-11)));
  CHECK(p_s[7] == period_exact_quadrature(pend, 1e-3, angles[7], 1e-11));

  const OscillatorModel model(1.0, 1.0, 1.0, 1e-3);
  const std::size_t dim = gk_dimension(model, 4.0);
  const auto ops = build_truncated_operators(model, dim);
  const auto state = gazeau_klauder_state(model, 4.0, 0.0, dim);
  std::vector<double> times;
  for (int i = 0; i < 200; ++i) times.push_back(0.05 * i);
  const auto x_s = kernels::serial::gk_position_series(ops, model, state, times);
  CHECK(bitwise_equal(x_s, kernels::parallel::gk_position_series(ops, model, state, times)));
  CHECK(x_s[13] == expectation(evolve_gk(state, model, times[13]).amplitudes, ops.x));

  CHECK(kernels::parallel::alpha_grid(1e-2, 10.0, std::vector<double>{}).empty());
}
