#pragma once

#include <string>
#include <vector>

namespace structcorr {

// Minimal self-contained SVG line plot with shaded mean +/- sd bands; just
// enough to eyeball simulation summaries without external tooling.
struct PlotSeries {
  std::string label;
  std::string color;            // CSS color
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> half_width;  // band half-width per point (e.g. sd)
};

std::string render_band_plot_svg(const std::string& title,
                                 const std::vector<PlotSeries>& series,
                                 int width = 640, int height = 400);

}  // namespace structcorr
