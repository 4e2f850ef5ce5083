#pragma once

#include "psilab/permutation.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace psilab {

// Pair (m, s) of I_j whose relative order differs between sigma_1 and
// sigma_i, together with the first time t0 in (T_1, T_i] at which psi_m
// drops below psi_s.
struct SwapWitness {
  std::size_t j = 0;
  std::size_t i = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  std::optional<Integer> t0;
};

struct RestrictedCheck {
  std::size_t j = 0;
  std::size_t s = 0;
  Permutation restricted;      // sigma_s restricted to I_j
  bool matches_first = true;   // only asserted for s < j
};

// Replay of the n <= k(k+1)/2 argument on one finite window. T_1 is the
// window start; T_j (j >= 2) is the first time t > T_1 at which a
// permutation differing from sigma_1 .. sigma_{j-1} appears. All indices are
// in the caller's original labeling; `relabel[r]` is the member holding rank
// r in sigma_1, so that sigma_1 is the identity after relabeling.
struct ProofTrace {
  std::size_t n = 0;
  std::vector<Integer> times;            // T_1 .. T_k
  std::vector<Permutation> perms;        // sigma_1 .. sigma_k
  std::vector<std::size_t> relabel;
  std::vector<std::vector<std::size_t>> index_sets;  // I_2 .. I_k
  std::vector<std::size_t> counts;                   // n_2 .. n_k
  std::vector<RestrictedCheck> restricted_checks;
  std::vector<SwapWitness> witnesses;
  bool disjoint = true;
  std::vector<std::size_t> uncovered;  // members other than sigma_1's last missing from every I_j

  std::size_t k() const { return times.size(); }
  bool restricted_equalities_hold() const;
};

ProofTrace build_proof_trace(const TupleContext& ctx, const TrajectoryReport& report);

struct NjBound {
  std::size_t j = 0;
  std::size_t n_j = 0;
  std::size_t bound = 0;  // k - j + 2
  bool pass = false;
};

std::vector<NjBound> check_nj_bound(const ProofTrace& trace);

struct TheoremBound {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t covered = 0;  // 1 + sum n_j
  std::size_t bound = 0;    // k(k+1)/2
  long long cover_margin = 0;  // covered - n
  long long chain_margin = 0;  // bound - covered
  long long margin = 0;        // bound - n
  bool pass = false;
};

TheoremBound check_theorem_bound(const ProofTrace& trace);

// Horizon-doubling driver: sweeps, builds the trace and evaluates every
// check, doubling t_max (up to `retries` times) while any check fails.
struct BoundVerification {
  bool passed = false;
  std::size_t attempts = 0;
  Integer t_max;
  std::optional<TupleContext> context;
  std::optional<TrajectoryReport> report;
  std::optional<ProofTrace> trace;
  std::vector<NjBound> nj;
  std::optional<TheoremBound> theorem;
  bool tau_within_k_hat = false;  // max_tau <= k_hat
  std::string failure;        // last failing check, empty on success
};

inline constexpr std::size_t kDefaultBoundRetries = 8;

BoundVerification verify_bound(const std::vector<Member>& members, const TupleOptions& options,
                               std::size_t retries = kDefaultBoundRetries, unsigned threads = 1);

void write_proof_trace(std::ostream& out, const ProofTrace& trace, const std::vector<std::string>& names);
void write_bound_checks(std::ostream& out, const std::vector<NjBound>& nj, const TheoremBound& theorem);

}  // namespace psilab
