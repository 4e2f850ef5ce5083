#include "psilab/svg_plot.hpp"

#include "psilab/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace psilab {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
constexpr double kMargin = 56.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double midpoint(const ErrorTerm& xi) {
  const auto& e = xi.enclosure();
  return Rational((e.lo + e.hi) / 2).get_d();
}

struct Axes {
  bool log = true;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double width = 0, height = 0;

  double tx(double t) const {
    const double v = log ? std::log10(t) : t;
    return kMargin + (v - x0) / (x1 - x0) * (width - 2 * kMargin);
  }
  double ty(double psi) const {
    const double v = log ? std::log10(psi) : psi;
    return height - kMargin - (v - y0) / (y1 - y0) * (height - 2 * kMargin);
  }
};

}  // namespace

std::string render_psi_svg(const std::vector<std::string>& names, const std::vector<StepTrajectory>& trajectories,
                           std::size_t highlight, const Integer& t_max, const PlotOptions& options) {
  if (highlight >= trajectories.size() || names.size() != trajectories.size()) {
    throw Error(ErrorKind::InvalidArgument, "cli_app", "plot", "member index out of range");
  }
  const double t_end = t_max.get_d();
  double psi_min = 1.0;
  for (const auto& traj : trajectories) {
    for (const auto& b : traj.breakpoints()) {
      if (b.q <= t_max) psi_min = std::min(psi_min, midpoint(b.xi));
    }
  }

  Axes ax;
  ax.log = options.log_axes;
  ax.width = options.width;
  ax.height = options.height;
  if (ax.log) {
    ax.x0 = 0.0;
    ax.x1 = std::max(std::log10(t_end), 1.0);
    ax.y0 = std::floor(std::log10(psi_min));
    ax.y1 = 0.0;
  } else {
    ax.x0 = 1.0;
    ax.x1 = std::max(t_end, 2.0);
    ax.y0 = 0.0;
    ax.y1 = 0.5;
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<title>psi step functions, highlighted: " << names[highlight] << "</title>\n";

  // Frame and axis labels.
  const double left = kMargin, right = ax.width - kMargin, top = kMargin, bottom = ax.height - kMargin;
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right) << "\" y2=\""
      << fmt(bottom) << "\"/>\n";
  svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left) << "\" y2=\"" << fmt(bottom)
      << "\"/>\n</g>\n";
  svg << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(ax.height - 16) << "\" font-size=\"13\" "
      << "text-anchor=\"middle\">t" << (ax.log ? " (log scale)" : "") << "</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt((top + bottom) / 2) << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << fmt((top + bottom) / 2) << ")\">psi(t)" << (ax.log ? " (log scale)" : "")
      << "</text>\n";
  if (ax.log) {
    for (int d = 0; d <= static_cast<int>(std::floor(ax.x1)); ++d) {
      const double x = ax.tx(std::pow(10.0, d));
      svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(bottom + 16) << "\" font-size=\"11\" text-anchor=\"middle\">1e"
          << d << "</text>\n";
    }
    for (int d = static_cast<int>(ax.y0); d <= 0; ++d) {
      const double y = ax.ty(std::pow(10.0, d));
      svg << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + 4) << "\" font-size=\"11\" text-anchor=\"end\">1e"
          << d << "</text>\n";
    }
  }

  // Shared denominators: times at which two or more members jump.
  std::map<Integer, int> jumps;
  for (const auto& traj : trajectories) {
    for (const auto& b : traj.breakpoints()) {
      if (b.q <= t_max) ++jumps[b.q];
    }
  }
  svg << "<g stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
  for (const auto& [t, count] : jumps) {
    if (count < 2 || t < 2) continue;
    const double x = ax.tx(t.get_d());
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(bottom)
        << "\"/>\n";
  }
  svg << "</g>\n";

  auto draw = [&](std::size_t m, bool emphasized) {
    const auto& bps = trajectories[m].breakpoints();
    std::ostringstream points;
    for (std::size_t i = 0; i < bps.size() && bps[i].q <= t_max; ++i) {
      const double y = ax.ty(midpoint(bps[i].xi));
      const double x_start = ax.tx(bps[i].q.get_d());
      const bool last = i + 1 >= bps.size() || bps[i + 1].q > t_max;
      const double x_end = ax.tx(last ? t_end : bps[i + 1].q.get_d());
      if (i) points << ' ';
      points << fmt(x_start) << ',' << fmt(y) << ' ' << fmt(x_end) << ',' << fmt(y);
    }
    const char* color = kPalette[m % (sizeof kPalette / sizeof kPalette[0])];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << (emphasized ? "2.5" : "1")
        << "\" stroke-opacity=\"" << (emphasized ? "1" : "0.55") << "\" points=\"" << points.str() << "\"/>\n";
    if (emphasized) {
      svg << "<g fill=\"" << color << "\">\n";
      for (std::size_t i = 1; i < bps.size() && bps[i].q <= t_max; ++i) {
        svg << "<circle cx=\"" << fmt(ax.tx(bps[i].q.get_d())) << "\" cy=\"" << fmt(ax.ty(midpoint(bps[i].xi)))
            << "\" r=\"3\"/>\n";
      }
      svg << "</g>\n";
    }
  };
  for (std::size_t m = 0; m < trajectories.size(); ++m) {
    if (m != highlight) draw(m, false);
  }
  draw(highlight, true);

  // Legend.
  for (std::size_t m = 0; m < names.size(); ++m) {
    const double y = top + 14.0 * static_cast<double>(m);
    const char* color = kPalette[m % (sizeof kPalette / sizeof kPalette[0])];
    svg << "<rect x=\"" << fmt(right - 120) << "\" y=\"" << fmt(y - 8) << "\" width=\"10\" height=\"10\" fill=\""
        << color << "\"/>\n";
    svg << "<text x=\"" << fmt(right - 104) << "\" y=\"" << fmt(y + 1) << "\" font-size=\"11\"" 
        << (m == highlight ? " font-weight=\"bold\"" : "") << ">" << names[m] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace psilab
