#pragma once

#include "psilab/continued_fraction.hpp"
#include "psilab/error_term.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace psilab {

enum class Verdict { IndependentLikely, Dependent, Undecided };

const char* to_string(Verdict v) noexcept;

struct SharedPair {
  std::size_t nu = 0;
  std::size_t mu = 0;
  Integer q;       // q_nu = r_mu
  Integer q_next;  // q_{nu+1} = r_{mu+1}
};

struct StarCoincidence {
  std::size_t nu = 0;
  std::size_t mu = 0;
  Rational star;
  // q_{nu-1} = r_{mu-1} and q_nu = r_mu, recomputed from the convergents.
  bool denominators_match = false;
  Integer q;
};

struct CoincidenceLog {
  std::vector<SharedPair> shared_pairs;
  std::vector<StarCoincidence> equal_stars;
  std::size_t horizon = 0;
  Verdict verdict = Verdict::Undecided;
  std::optional<IntegerCombination> combination;  // set when both values are exact
  // Largest denominator involved in any logged coincidence (0 if none).
  Integer coincidence_time;

  bool stars_share_denominators() const;
};

CoincidenceLog scan_coincidences(const ContinuedFraction& a, const ContinuedFraction& b, std::size_t depth);

enum class LemmaOutcome { NotApplicable, Confirmed, Violation };

const char* to_string(LemmaOutcome o) noexcept;

struct LemmaCheck {
  LemmaOutcome outcome = LemmaOutcome::NotApplicable;
  std::size_t nu = 0, mu = 0, d = 0;
  // Relations found for the three inequality hypotheses: "<", "=", ">" or
  // "" when not evaluated.
  std::string xi_vs_eta;
  std::string xi_next_vs_eta;
  std::string q_vs_r;
  std::optional<Rational> star_a;  // alpha*_{nu+2}
  std::optional<Rational> star_b;  // beta*_{mu+2}
  std::string certificate;        // filled for Confirmed and Violation
};

// Hypotheses: xi_nu <= eta_mu, xi_{nu+1} <= eta_{mu+d-1}, q_{nu+1} <= r_{mu+1},
// q_{nu+2} = r_{mu+d}. Conclusion: the three inequalities are equalities,
// d = 2 and alpha*_{nu+2} = beta*_{mu+2}.
LemmaCheck check_lemma_mm(const ContinuedFraction& a, const ContinuedFraction& b, std::size_t nu, std::size_t mu,
                          std::size_t d, std::size_t max_compare_depth = kDefaultMaxCompareDepth);

struct LemmaScanSummary {
  std::size_t not_applicable = 0;
  std::size_t confirmed = 0;
  std::size_t violations = 0;
  std::size_t undecided = 0;
  std::vector<LemmaCheck> notable;  // every Confirmed and Violation record
};

LemmaScanSummary scan_lemma_mm(const ContinuedFraction& a, const ContinuedFraction& b, std::size_t max_index,
                               std::size_t max_d, std::size_t max_compare_depth = kDefaultMaxCompareDepth);

enum class PatternStatus { NotApplicable, Holds, Fails };

const char* to_string(PatternStatus s) noexcept;

// At a shared denominator T = q_nu = r_mu with psi_a(T-1) < psi_b(T-1), the
// order is expected to be reversed at the earlier time q_{nu-1} - 1. The
// record also carries the comparison at r_{mu-1} - 1.
struct RemarkRecord {
  Integer shared;
  std::size_t nu = 0, mu = 0;
  Interval a_before, b_before;  // psi at shared - 1
  PatternStatus status = PatternStatus::NotApplicable;
  Integer earlier_a;  // q_{nu-1} - 1
  Interval a_at_earlier_a, b_at_earlier_a;
  std::string relation_at_earlier_a;  // order of psi_a vs psi_b: "<", ">", "?"
  Integer earlier_b;  // r_{mu-1} - 1
  Interval a_at_earlier_b, b_at_earlier_b;
  std::string relation_at_earlier_b;
};

// Shared denominators T with min_time < T and indices up to `depth`.
std::vector<RemarkRecord> check_remark_pattern(const ContinuedFraction& a, const ContinuedFraction& b,
                                               std::size_t depth, const Integer& min_time = 1,
                                               std::size_t max_compare_depth = kDefaultMaxCompareDepth);

void write_coincidence_log(std::ostream& out, const CoincidenceLog& log);
void write_lemma_summary(std::ostream& out, const LemmaScanSummary& summary);
// Records at or below `burn_in` are tagged transient.
void write_remark_records(std::ostream& out, const std::vector<RemarkRecord>& records, const Integer& burn_in = 0);

}  // namespace psilab
