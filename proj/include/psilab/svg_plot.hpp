#pragma once

#include "psilab/psi.hpp"

#include <string>
#include <vector>

namespace psilab {

struct PlotOptions {
  bool log_axes = true;
  int width = 800;
  int height = 480;
};

// Overlaid psi step functions of every trajectory on [1, t_max] with the
// `highlight` member drawn on top, dashed markers at shared denominators and
// dots at the highlighted member's own jumps.
std::string render_psi_svg(const std::vector<std::string>& names, const std::vector<StepTrajectory>& trajectories,
                           std::size_t highlight, const Integer& t_max, const PlotOptions& options = {});

}  // namespace psilab
