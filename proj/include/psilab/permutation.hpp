#pragma once

#include "psilab/continued_fraction.hpp"
#include "psilab/psi.hpp"
#include "psilab/structure.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace psilab {

// Member indices (0-based) ordered by strictly decreasing psi.
using Permutation = std::vector<std::size_t>;

// Comma-joined 1-based labels, e.g. "2,1".
std::string format_permutation(const Permutation& p);

struct Member {
  std::string name;
  ContinuedFraction cf;
};

inline constexpr unsigned long kMinimumBurnIn = 100;

struct TupleOptions {
  // Defaults to max(largest coincidence time from screening, 100).
  std::optional<Integer> burn_in;
  Integer t_max = 10000;
  std::size_t max_compare_depth = kDefaultMaxCompareDepth;
  // Convergent depth for pairwise screening; 0 derives it from t_max.
  std::size_t screening_depth = 0;
};

struct PairScreening {
  std::size_t i = 0;
  std::size_t j = 0;
  CoincidenceLog log;
};

class TupleContext {
 public:
  // Screens every pair; a proven dependence (alpha +- beta in Z) throws
  // ErrorKind::Dependent and a failed denominator identity throws
  // ErrorKind::Violation.
  static TupleContext create(std::vector<Member> members, const TupleOptions& options);

  std::size_t size() const { return members_.size(); }
  const std::vector<Member>& members() const { return members_; }
  const std::vector<StepTrajectory>& trajectories() const { return trajectories_; }
  const std::vector<PairScreening>& screening() const { return screening_; }
  const Integer& burn_in() const { return burn_in_; }
  const Integer& t_max() const { return t_max_; }
  std::size_t max_compare_depth() const { return max_compare_depth_; }
  // Largest denominator involved in any pairwise coincidence.
  const Integer& coincidence_horizon() const { return coincidence_horizon_; }

  // Same members and screening over another window; trajectories are rebuilt
  // when the new window reaches further.
  TupleContext with_window(const Integer& burn_in, const Integer& t_max) const;

 private:
  TupleContext() = default;

  std::vector<Member> members_;
  std::vector<StepTrajectory> trajectories_;
  std::vector<PairScreening> screening_;
  Integer burn_in_;
  Integer t_max_;
  Integer coincidence_horizon_;
  std::size_t max_compare_depth_ = kDefaultMaxCompareDepth;
};

struct PermutationEvent {
  Integer t;
  Permutation before;  // sigma(t - 1)
  Permutation after;   // sigma(t)
  std::vector<std::size_t> jumpers;
};

struct PermutationOccurrence {
  Permutation perm;
  Integer first;
  Integer last;
};

struct TrajectoryReport {
  Integer window_lo;  // events cover (window_lo, window_hi]
  Integer window_hi;
  std::vector<std::string> names;
  Permutation initial;  // sigma(window_lo)
  std::vector<PermutationEvent> events;
  std::vector<PermutationOccurrence> census;  // in order of first occurrence
  std::size_t k_hat = 0;
  std::size_t max_tau = 0;
  std::vector<std::vector<std::size_t>> sign_changes;  // symmetric, zero diagonal
};

Permutation sigma_at(const TupleContext& ctx, const Integer& t);

// Breakpoint times of all members in (lo, hi], merged and deduplicated.
std::vector<Integer> merged_event_times(const TupleContext& ctx, const Integer& lo, const Integer& hi);

TrajectoryReport sweep(const TupleContext& ctx, unsigned threads = 1);
TrajectoryReport sweep(const TupleContext& ctx, const Integer& lo, const Integer& hi, unsigned threads = 1);

std::size_t tau_at(const TupleContext& ctx, const Integer& t);

// Order flips of (psi_i, psi_j) across the pair's breakpoints in (burn_in, t_max].
std::size_t sign_change_count(const TupleContext& ctx, std::size_t i, std::size_t j);

void write_report(std::ostream& out, const TrajectoryReport& report, bool with_events = true);

}  // namespace psilab
