#pragma once

#include <fovgmres/types.hpp>

#include <string>
#include <vector>

namespace fovgmres {

/// Minimal static SVG plots: fixed viewport, axes with tick labels, one
/// polyline per series, text legend. Output is deterministic.
struct SvgSeries {
  std::string label;
  std::vector<Real> x;
  std::vector<Real> y;
};

/// Line chart with a log10 y-axis (nonpositive y values are dropped).
void write_svg_log_chart(const std::string& path, const std::string& title,
                         const std::vector<SvgSeries>& series);

/// Scatter of complex points plus rectangle outlines, linear axes.
struct SvgRect {
  std::string label;
  Real re_min, re_max, im_half;
};
void write_svg_plane(const std::string& path, const std::string& title,
                     const std::vector<Complex>& points, const std::vector<SvgRect>& rects);

}  // namespace fovgmres
