// SPDX-License-Identifier: MIT
// Single-panel SVG line plots with no dependencies; output bytes are a
// pure function of the data and options.
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "menukit/common.hpp"
#include "menukit/csvio.hpp"

namespace menukit {

struct PlotOptions {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool loglog = false;
};

namespace detail {

[[nodiscard]] inline std::string svg_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

// 640x480 panel, points joined in input order plus markers. Non-finite
// points are skipped, as are nonpositive ones on log axes; with nothing
// left the axes are still drawn over a default range.
[[nodiscard]] inline std::string render_plot(const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const PlotOptions& opt) {
  require(x.size() == y.size(), "render_plot: x and y lengths differ");

  const double px0 = 70.0, px1 = 615.0, py0 = 40.0, py1 = 425.0;
  const auto usable = [&](double vx, double vy) {
    if (!std::isfinite(vx) || !std::isfinite(vy)) return false;
    return !opt.loglog || (vx > 0.0 && vy > 0.0);
  };
  const auto tx = [&](double v) { return opt.loglog ? std::log10(v) : v; };

  double ux0 = 0.0, ux1 = 1.0, uy0 = 0.0, uy1 = 1.0;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!usable(x[i], y[i])) continue;
    const double ux = tx(x[i]), uy = tx(y[i]);
    if (!any) {
      ux0 = ux1 = ux;
      uy0 = uy1 = uy;
      any = true;
    } else {
      ux0 = std::min(ux0, ux);
      ux1 = std::max(ux1, ux);
      uy0 = std::min(uy0, uy);
      uy1 = std::max(uy1, uy);
    }
  }
  if (ux1 - ux0 < 1e-12) {
    ux0 -= 0.5;
    ux1 += 0.5;
  }
  if (uy1 - uy0 < 1e-12) {
    uy0 -= 0.5;
    uy1 += 0.5;
  }
  const auto sx = [&](double u) {
    return px0 + (u - ux0) / (ux1 - ux0) * (px1 - px0);
  };
  const auto sy = [&](double u) {
    return py1 - (u - uy0) / (uy1 - uy0) * (py1 - py0);
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
       "height=\"480\" viewBox=\"0 0 640 480\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" "
       "fill=\"#ffffff\"/>\n";
  s += "<rect x=\"" + detail::svg_coord(px0) + "\" y=\"" +
       detail::svg_coord(py0) + "\" width=\"" +
       detail::svg_coord(px1 - px0) + "\" height=\"" +
       detail::svg_coord(py1 - py0) +
       "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  const auto tick_label = [&](double u) {
    return format_num(opt.loglog ? std::pow(10.0, u) : u, 6);
  };
  for (int i = 0; i <= 4; ++i) {
    const double fu = static_cast<double>(i) / 4.0;
    const double ux = ux0 + fu * (ux1 - ux0);
    const double uy = uy0 + fu * (uy1 - uy0);
    const std::string gx = detail::svg_coord(sx(ux));
    const std::string gy = detail::svg_coord(sy(uy));
    s += "<line x1=\"" + gx + "\" y1=\"" + detail::svg_coord(py1) +
         "\" x2=\"" + gx + "\" y2=\"" + detail::svg_coord(py1 + 5.0) +
         "\" stroke=\"#333333\"/>\n";
    s += "<text x=\"" + gx + "\" y=\"" + detail::svg_coord(py1 + 18.0) +
         "\" font-family=\"monospace\" font-size=\"11\" "
         "text-anchor=\"middle\">" +
         tick_label(ux) + "</text>\n";
    s += "<line x1=\"" + detail::svg_coord(px0 - 5.0) + "\" y1=\"" + gy +
         "\" x2=\"" + detail::svg_coord(px0) + "\" y2=\"" + gy +
         "\" stroke=\"#333333\"/>\n";
    s += "<text x=\"" + detail::svg_coord(px0 - 8.0) + "\" y=\"" +
         detail::svg_coord(sy(uy) + 4.0) +
         "\" font-family=\"monospace\" font-size=\"11\" "
         "text-anchor=\"end\">" +
         tick_label(uy) + "</text>\n";
  }

  if (!opt.title.empty())
    s += "<text x=\"342\" y=\"24\" font-family=\"monospace\" "
         "font-size=\"15\" text-anchor=\"middle\">" +
         opt.title + "</text>\n";
  if (!opt.xlabel.empty())
    s += "<text x=\"342\" y=\"465\" font-family=\"monospace\" "
         "font-size=\"12\" text-anchor=\"middle\">" +
         opt.xlabel + "</text>\n";
  if (!opt.ylabel.empty())
    s += "<text x=\"16\" y=\"232\" font-family=\"monospace\" "
         "font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 232)\">" +
         opt.ylabel + "</text>\n";

  std::string points;
  std::string markers;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!usable(x[i], y[i])) continue;
    const std::string gx = detail::svg_coord(sx(tx(x[i])));
    const std::string gy = detail::svg_coord(sy(tx(y[i])));
    if (!points.empty()) points += ' ';
    points += gx + "," + gy;
    markers += "<circle cx=\"" + gx + "\" cy=\"" + gy +
               "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  }
  if (!points.empty())
    s += "<polyline points=\"" + points +
         "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  s += markers;
  s += "</svg>\n";
  return s;
}

}  // namespace menukit
