#pragma once

#include "psilab/continued_fraction.hpp"
#include "psilab/error_term.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace psilab {

struct Breakpoint {
  std::size_t index = 0;  // nu
  Integer q;
  ErrorTerm xi;
};

// psi_alpha(t) = xi_nu on [q_nu, q_{nu+1}). When a_1 = 1 the steps at
// q_0 = q_1 = 1 collapse and only nu = 1 is kept.
class StepTrajectory {
 public:
  // `horizon` is one less than the first denominator beyond the last breakpoint.
  StepTrajectory(ContinuedFraction owner, std::vector<Breakpoint> breakpoints, Integer horizon);

  const ContinuedFraction& owner() const { return owner_; }
  const std::vector<Breakpoint>& breakpoints() const { return breakpoints_; }
  // Largest t at which psi is determined by the stored breakpoints; at
  // least t_max.
  const Integer& horizon() const { return horizon_; }

  // Position of the step containing t, or npos outside [1, horizon].
  std::size_t locate(const Integer& t) const;
  bool is_breakpoint(const Integer& t) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  ContinuedFraction owner_;
  std::vector<Breakpoint> breakpoints_;
  Integer horizon_;
};

StepTrajectory build_trajectory(const ContinuedFraction& cf, const Integer& t_max,
                                std::size_t max_compare_depth = kDefaultMaxCompareDepth);

ErrorTerm psi_at(const StepTrajectory& traj, const Integer& t);
ErrorTerm psi_left_limit(const StepTrajectory& traj, const Integer& t);

struct BruteForcePsi {
  Integer argmin;
  Interval value;
};

// min_{1 <= q <= t} ||q * alpha|| from an enclosure of alpha alone; the
// enclosure must be narrower than 1 / (4 t^2).
BruteForcePsi brute_force_psi(const Interval& alpha, const Integer& t);

// The same oracle swept over t = 1, 2, ..., t_max in one pass. Entry t - 1
// holds the result for t.
std::vector<BruteForcePsi> brute_force_psi_scan(const Interval& alpha, std::size_t t_max);

// `q <tab> xi_lo <tab> xi_hi` per breakpoint; `approx_digits > 0` appends a
// decimal midpoint column.
void write_trajectory(std::ostream& out, const StepTrajectory& traj, int approx_digits = 0);

}  // namespace psilab
