#include "structcorr/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace structcorr {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
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

}  // namespace

std::string render_band_plot_svg(const std::string& title,
                                 const std::vector<PlotSeries>& series,
                                 int width, int height) {
  const double margin_left = 60.0;
  const double margin_right = 20.0;
  const double margin_top = 40.0;
  const double margin_bottom = 45.0;
  const double plot_w = width - margin_left - margin_right;
  const double plot_h = height - margin_top - margin_bottom;

  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.mean[i])) continue;
      const double hw = (i < s.half_width.size() && std::isfinite(s.half_width[i]))
                            ? s.half_width[i]
                            : 0.0;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.mean[i] - hw);
      y_hi = std::max(y_hi, s.mean[i] + hw);
    }
  }
  if (!std::isfinite(x_lo)) {  // nothing plottable
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
  const double y_pad = std::max(1e-12, 0.05 * (y_hi - y_lo));
  y_lo -= y_pad;
  y_hi += y_pad;

  const auto px = [&](double x) {
    return margin_left + (x - x_lo) / (x_hi - x_lo) * plot_w;
  };
  const auto py = [&](double y) {
    return margin_top + (y_hi - y) / (y_hi - y_lo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2.0 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape_xml(title)
      << "</text>\n";

  // Axes with a handful of tick labels.
  svg << "<rect x=\"" << fmt(margin_left) << "\" y=\"" << fmt(margin_top)
      << "\" width=\"" << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / ticks;
    const double yv = y_lo + (y_hi - y_lo) * t / ticks;
    svg << "<text x=\"" << fmt(px(xv)) << "\" y=\""
        << fmt(margin_top + plot_h + 18) << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"11\">" << fmt(xv)
        << "</text>\n";
    svg << "<text x=\"" << fmt(margin_left - 6) << "\" y=\""
        << fmt(py(yv) + 4) << "\" text-anchor=\"end\" "
        << "font-family=\"sans-serif\" font-size=\"11\">" << fmt(yv)
        << "</text>\n";
  }

  for (const PlotSeries& s : series) {
    // Shaded band: forward pass over mean + hw, reverse over mean - hw.
    std::ostringstream band;
    std::ostringstream line;
    bool first = true;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.mean[i])) continue;
      const double hw = (i < s.half_width.size() && std::isfinite(s.half_width[i]))
                            ? s.half_width[i]
                            : 0.0;
      band << (first ? "M" : "L") << fmt(px(s.x[i])) << ","
           << fmt(py(s.mean[i] + hw)) << " ";
      line << (first ? "M" : "L") << fmt(px(s.x[i])) << ","
           << fmt(py(s.mean[i])) << " ";
      first = false;
    }
    for (std::size_t ri = s.x.size(); ri-- > 0;) {
      if (!std::isfinite(s.x[ri]) || !std::isfinite(s.mean[ri])) continue;
      const double hw = (ri < s.half_width.size() && std::isfinite(s.half_width[ri]))
                            ? s.half_width[ri]
                            : 0.0;
      band << "L" << fmt(px(s.x[ri])) << "," << fmt(py(s.mean[ri] - hw))
           << " ";
    }
    if (!first) {
      svg << "<path d=\"" << band.str() << "Z\" fill=\"" << s.color
          << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
      svg << "<path d=\"" << line.str() << "\" fill=\"none\" stroke=\""
          << s.color << "\" stroke-width=\"1.5\"/>\n";
    }
  }

  // Legend, top-right corner.
  double ly = margin_top + 14;
  for (const PlotSeries& s : series) {
    const double lx = margin_left + plot_w - 110;
    svg << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 9)
        << "\" width=\"16\" height=\"10\" fill=\"" << s.color << "\"/>\n";
    svg << "<text x=\"" << fmt(lx + 22) << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_xml(s.label) << "</text>\n";
    ly += 16;
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace structcorr
