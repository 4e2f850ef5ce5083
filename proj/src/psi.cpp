#include "psilab/psi.hpp"

#include "psilab/error.hpp"

#include <algorithm>
#include <ostream>

namespace psilab {

StepTrajectory::StepTrajectory(ContinuedFraction owner, std::vector<Breakpoint> breakpoints, Integer horizon)
    : owner_(std::move(owner)), breakpoints_(std::move(breakpoints)), horizon_(std::move(horizon)) {
  if (breakpoints_.empty() || horizon_ < breakpoints_.back().q) {
    throw Error(ErrorKind::InvalidArgument, "psi_engine", "StepTrajectory", "no breakpoints below the horizon");
  }
}

std::size_t StepTrajectory::locate(const Integer& t) const {
  if (t < 1 || t > horizon_) return npos;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](const Integer& value, const Breakpoint& b) { return value < b.q; });
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

bool StepTrajectory::is_breakpoint(const Integer& t) const {
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](const Breakpoint& b, const Integer& value) { return b.q < value; });
  return it != breakpoints_.end() && it->q == t;
}

StepTrajectory build_trajectory(const ContinuedFraction& cf, const Integer& t_max, std::size_t max_compare_depth) {
  if (t_max < 1) throw Error(ErrorKind::InvalidArgument, "psi_engine", "build_trajectory", "t_max must be >= 1");
  // The first denominator past t_max only closes the last step.
  const auto conv = convergents_through(cf, t_max);
  std::vector<Breakpoint> points;
  points.reserve(conv.size());
  for (std::size_t i = 0; i + 1 < conv.size(); ++i) {
    const auto& c = conv[i];
    if (!points.empty() && points.back().q == c.q) points.pop_back();  // q_0 = q_1 = 1
    points.push_back({c.index, c.q, ErrorTerm(cf, c.index)});
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (compare_errors(points[i - 1].xi, points[i].xi, max_compare_depth) != Ordering::Greater) {
      throw Error(ErrorKind::Violation, "psi_engine", "build_trajectory",
                  "xi_" + std::to_string(points[i - 1].index) + " <= xi_" + std::to_string(points[i].index));
    }
  }
  return StepTrajectory(cf, std::move(points), conv.back().q - 1);
}

ErrorTerm psi_at(const StepTrajectory& traj, const Integer& t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "psi_engine", "psi_at", "t must be >= 1");
  const std::size_t i = traj.locate(t);
  if (i == StepTrajectory::npos) {
    throw Error(ErrorKind::OutOfHorizon, "psi_engine", "psi_at",
                "t = " + t.get_str() + " beyond horizon " + traj.horizon().get_str());
  }
  return traj.breakpoints()[i].xi;
}

ErrorTerm psi_left_limit(const StepTrajectory& traj, const Integer& t) {
  if (t < 2) throw Error(ErrorKind::InvalidArgument, "psi_engine", "psi_left_limit", "t must be >= 2");
  if (t > traj.horizon()) {
    throw Error(ErrorKind::OutOfHorizon, "psi_engine", "psi_left_limit",
                "t = " + t.get_str() + " beyond horizon " + traj.horizon().get_str());
  }
  return psi_at(traj, t - 1);
}

namespace {

// Open enclosure of ||q * alpha||.
Interval distance_to_nearest(const Interval& alpha, const Integer& q) {
  const Rational lo = alpha.lo * q;
  const Rational hi = alpha.hi * q;
  const Rational half(1, 2);
  const Integer n_lo = floor_of(lo + half);
  const Integer n_hi = floor_of(hi + half);
  if (n_lo != n_hi) {
    throw Error(ErrorKind::PrecisionInsufficient, "psi_engine", "brute_force_psi",
                "nearest integer to q*alpha undetermined at q = " + q.get_str());
  }
  const Rational n(n_lo);
  if (lo >= n) return {lo - n, hi - n};
  if (hi <= n) return {n - hi, n - lo};
  throw Error(ErrorKind::PrecisionInsufficient, "psi_engine", "brute_force_psi",
              "enclosure of q*alpha contains an integer at q = " + q.get_str());
}

void check_width(const Interval& alpha, const Integer& t) {
  const Rational limit = make_rational(1, 4 * t * t);
  if (alpha.width() >= limit) {
    throw Error(ErrorKind::PrecisionInsufficient, "psi_engine", "brute_force_psi",
                "enclosure width must be below 1/(4 t^2) for t = " + t.get_str());
  }
}

// Keeps the certified running minimum; overlapping candidates cannot be
// ranked and are reported instead of guessed.
void absorb(BruteForcePsi& best, const Integer& q, Interval candidate) {
  if (candidate.hi <= best.value.lo) {
    best = {q, std::move(candidate)};
  } else if (candidate.lo < best.value.hi) {
    throw Error(ErrorKind::PrecisionInsufficient, "psi_engine", "brute_force_psi",
                "||q alpha|| at q = " + q.get_str() + " and q = " + best.argmin.get_str() + " not separated");
  }
}

}  // namespace

BruteForcePsi brute_force_psi(const Interval& alpha, const Integer& t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "psi_engine", "brute_force_psi", "t must be >= 1");
  check_width(alpha, t);
  BruteForcePsi best{1, distance_to_nearest(alpha, 1)};
  for (Integer q = 2; q <= t; ++q) absorb(best, q, distance_to_nearest(alpha, q));
  return best;
}

std::vector<BruteForcePsi> brute_force_psi_scan(const Interval& alpha, std::size_t t_max) {
  if (t_max < 1) throw Error(ErrorKind::InvalidArgument, "psi_engine", "brute_force_psi", "t must be >= 1");
  check_width(alpha, Integer(static_cast<unsigned long>(t_max)));
  std::vector<BruteForcePsi> out;
  out.reserve(t_max);
  BruteForcePsi best{1, distance_to_nearest(alpha, 1)};
  out.push_back(best);
  for (std::size_t q = 2; q <= t_max; ++q) {
    const Integer qq(static_cast<unsigned long>(q));
    absorb(best, qq, distance_to_nearest(alpha, qq));
    out.push_back(best);
  }
  return out;
}

void write_trajectory(std::ostream& out, const StepTrajectory& traj, int approx_digits) {
  for (const auto& b : traj.breakpoints()) {
    const auto& e = b.xi.enclosure();
    out << b.q.get_str() << '\t' << to_fraction_string(e.lo) << '\t' << to_fraction_string(e.hi);
    if (approx_digits > 0) out << '\t' << to_decimal_string((e.lo + e.hi) / 2, approx_digits);
    out << '\n';
  }
}

}  // namespace psilab
