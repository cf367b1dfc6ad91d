#include "gup/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "gup/errors.hpp"

namespace gup {

namespace {

constexpr double width = 760.0;
constexpr double height = 480.0;
constexpr double left = 70.0;
constexpr double right = 260.0;
constexpr double top = 30.0;
constexpr double bottom = 60.0;
constexpr double plot_w = width - left - right;
constexpr double plot_h = height - top - bottom;

constexpr std::array<const char*, 8> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v, int digits = 2) {
  if (v == 0.0) v = 0.0;  // no "-0.00"
  std::array<char, 48> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
  if (ec != std::errc()) return "0";
  std::string s(buf.data(), ptr);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Tick step of 1, 2 or 5 times a power of ten giving roughly `target` ticks.
double nice_step(double range, int target) {
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double m = r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0;
  return m * mag;
}

}  // namespace

std::string render_exclusion_svg(const std::vector<PlotCurve>& curves, const PlotAxes& axes) {
  if (!(axes.beta0_min > 0.0) || !(axes.beta0_max >= axes.beta0_min) ||
      !(axes.alpha_max > axes.alpha_min))
    throw InvalidArgument("render_exclusion_svg: invalid axis ranges");

  double lx0 = std::log10(axes.beta0_min);
  double lx1 = std::log10(axes.beta0_max);
  if (lx1 - lx0 < 1e-9) {
    lx0 -= 0.5;
    lx1 += 0.5;
  }
  const double ay0 = axes.alpha_min, ay1 = axes.alpha_max;
  auto px = [&](double beta0) { return left + (std::log10(beta0) - lx0) / (lx1 - lx0) * plot_w; };
  auto py = [&](double alpha) { return top + (ay1 - alpha) / (ay1 - ay0) * plot_h; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) + "\" height=\"" +
       fixed(height, 0) + "\" viewBox=\"0 0 " + fixed(width, 0) + " " + fixed(height, 0) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<defs><clipPath id=\"plot-area\"><rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) +
       "\" width=\"" + fixed(plot_w) + "\" height=\"" + fixed(plot_h) +
       "\"/></clipPath></defs>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(width, 0) + "\" height=\"" + fixed(height, 0) +
       "\" style=\"fill:#ffffff\"/>\n";

  // Grid and ticks.
  const double xstep = std::max(1.0, std::ceil((lx1 - lx0) / 12.0));
  s += "<g style=\"stroke:#dddddd;stroke-width:1\">\n";
  for (double d = std::ceil(lx0 / xstep) * xstep; d <= lx1 + 1e-9; d += xstep) {
    const double x = left + (d - lx0) / (lx1 - lx0) * plot_w;
    s += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
         fixed(top + plot_h) + "\"/>\n";
  }
  const double ystep = nice_step(ay1 - ay0, 8);
  for (double a = std::ceil(ay0 / ystep - 1e-9) * ystep; a <= ay1 + 1e-9 * ystep; a += ystep) {
    s += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(py(a)) + "\" x2=\"" +
         fixed(left + plot_w) + "\" y2=\"" + fixed(py(a)) + "\"/>\n";
  }
  s += "</g>\n";

  s += "<g text-anchor=\"middle\" style=\"fill:#000000\">\n";
  for (double d = std::ceil(lx0 / xstep) * xstep; d <= lx1 + 1e-9; d += xstep) {
    const double x = left + (d - lx0) / (lx1 - lx0) * plot_w;
    s += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(top + plot_h + 18) + "\">10<tspan dy=\"-5\" font-size=\"9\">" +
         fixed(d, 0) + "</tspan></text>\n";
  }
  s += "</g>\n<g text-anchor=\"end\" style=\"fill:#000000\">\n";
  const int ydigits = ystep >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(ystep) - 1e-9));
  for (double a = std::ceil(ay0 / ystep - 1e-9) * ystep; a <= ay1 + 1e-9 * ystep; a += ystep) {
    s += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(py(a) + 4) + "\">" + fixed(a, ydigits) +
         "</text>\n";
  }
  s += "</g>\n";
  s += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"" + fixed(height - 15) +
       "\" text-anchor=\"middle\">&#946;&#8320; (log scale)</text>\n";
  s += "<text x=\"18\" y=\"" + fixed(top + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       fixed(top + plot_h / 2) + ")\">&#945;</text>\n";

  // Curves with their excluded side shaded.
  s += "<g clip-path=\"url(#plot-area)\">\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    if (c.boundary.points.empty()) continue;
    const char* color = palette[i % palette.size()];
    const double edge = c.boundary.excluded_side == ExcludedSide::below ? top + plot_h + 1 : top - 1;
    std::string pts;
    for (const auto& p : c.boundary.points) {
      if (!pts.empty()) pts += ' ';
      pts += fixed(px(p.beta0)) + "," + fixed(std::clamp(py(p.alpha), top - 1e4, top + plot_h + 1e4));
    }
    const auto& first = c.boundary.points.front();
    const auto& last = c.boundary.points.back();
    std::string shade = fixed(px(first.beta0)) + "," + fixed(edge) + " " + pts + " " +
                        fixed(px(last.beta0)) + "," + fixed(edge);
    s += "<polygon points=\"" + shade + "\" style=\"fill:" + color +
         ";fill-opacity:0.12;stroke:none\"/>\n";
    s += "<polyline points=\"" + pts + "\" style=\"fill:none;stroke:" + color + ";stroke-width:2" +
         (c.style == LineStyle::dashed ? ";stroke-dasharray:8,5" : "") + "\"/>\n";
    if (c.boundary.points.size() == 1) {
      s += "<circle cx=\"" + fixed(px(first.beta0)) + "\" cy=\"" + fixed(py(first.alpha)) +
           "\" r=\"3\" style=\"fill:" + color + "\"/>\n";
    }
  }
  s += "</g>\n";
  s += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(plot_w) +
       "\" height=\"" + fixed(plot_h) + "\" style=\"fill:none;stroke:#000000;stroke-width:1\"/>\n";

  // Legend.
  const double lx = left + plot_w + 15;
  s += "<g>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = palette[i % palette.size()];
    const double y = top + 10 + 22.0 * static_cast<double>(i);
    s += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(lx + 28) +
         "\" y2=\"" + fixed(y) + "\" style=\"stroke:" + color + ";stroke-width:2" +
         (c.style == LineStyle::dashed ? ";stroke-dasharray:8,5" : "") + "\"/>\n";
    s += "<text x=\"" + fixed(lx + 34) + "\" y=\"" + fixed(y + 4) + "\" font-size=\"11\">" +
         escape(c.label) + "</text>\n";
  }
  const double note_y = top + 10 + 22.0 * static_cast<double>(curves.size()) + 8;
  s += "<text x=\"" + fixed(lx) + "\" y=\"" + fixed(note_y) +
       "\" font-size=\"10\" style=\"fill:#555555\">shaded: excluded, dashed: projected</text>\n";
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace gup
