#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gup {

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Embedded Dormand-Prince 5(4) pair with elementary step-size control.
/// The stepper owns its stage buffers; call reset() after changing state
/// discontinuously so the FSAL derivative is recomputed.
class DormandPrince45 {
 public:
  DormandPrince45(OdeRhs rhs, std::size_t dim, double rel_tol, double abs_tol);

  /// Advance (t, y) by one accepted step no longer than h_max. `h` is the
  /// trial size on entry and the suggested next size on return. Throws
  /// NumericalError when the step size underflows.
  void step(double& t, std::vector<double>& y, double& h, double h_max);

  void reset(double t, std::span<const double> y);

  /// dy/dt at the current state (valid after reset() or step()).
  const std::vector<double>& derivative() const { return k1_; }

  double rel_tol() const { return rel_tol_; }
  double abs_tol() const { return abs_tol_; }

 private:
  OdeRhs rhs_;
  std::size_t dim_;
  double rel_tol_, abs_tol_;
  std::vector<double> k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_;
};

}  // namespace gup
