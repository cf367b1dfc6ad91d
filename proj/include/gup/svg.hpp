#pragma once

#include <string>
#include <vector>

#include "gup/bounds.hpp"
#include "gup/registry.hpp"

namespace gup {

struct PlotCurve {
  std::string label;
  LineStyle style = LineStyle::solid;
  ExclusionBoundary boundary;
};

struct PlotAxes {
  double beta0_min = 1e-4;
  double beta0_max = 1e8;
  double alpha_min = -1.0;
  double alpha_max = 1.0;
};

/// Self-contained SVG exclusion plot: log10 beta0 horizontally, alpha
/// vertically, one polyline per curve with its excluded side shaded and a
/// legend. The output depends only on the inputs.
std::string render_exclusion_svg(const std::vector<PlotCurve>& curves, const PlotAxes& axes);

}  // namespace gup
