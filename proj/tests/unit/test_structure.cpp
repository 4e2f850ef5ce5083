#include "doctest.h"

#include "../corpus.hpp"
#include "../oracle.hpp"

#include "psilab/error.hpp"
#include "psilab/psi.hpp"
#include "psilab/structure.hpp"

#include <random>
#include <sstream>

using namespace psilab;

namespace {

ContinuedFraction sqrt2() { return ContinuedFraction::periodic(1, {}, {2}); }
ContinuedFraction phi() { return ContinuedFraction::periodic(1, {}, {1}); }

}  // namespace

TEST_SUITE("structure_checks") {

TEST_CASE("coincidence verdicts") {
  const auto dep = scan_coincidences(sqrt2(), surd_to_cf(QuadraticSurd(1, 1, 2)), 40);
  CHECK(dep.verdict == Verdict::Dependent);
  CHECK(dep.combination == IntegerCombination::DiffInteger);
  CHECK(scan_coincidences(sqrt2(), sqrt2(), 40).verdict == Verdict::Dependent);

  const auto ind = scan_coincidences(sqrt2(), phi(), 40);
  CHECK(ind.verdict == Verdict::IndependentLikely);
  CHECK(ind.combination == IntegerCombination::Neither);
  for (const auto& s : ind.equal_stars) CHECK(s.nu <= 5);
  CHECK(ind.stars_share_denominators());
}

TEST_CASE("late coincidences make the verdict undecided") {
  // Shares its first 30 coefficients with sqrt2, then departs: the rule
  // backing hides the relation from the exact checks.
  const auto near = ContinuedFraction::rule(1, [](std::size_t nu) { return Integer(nu <= 30 ? 2 : 3); }, 200);
  const auto log = scan_coincidences(sqrt2(), near, 40);
  CHECK(log.verdict == Verdict::Undecided);
  CHECK_FALSE(log.combination.has_value());
}

TEST_CASE("equal stars share both denominators") {
  std::mt19937_64 rng(41);
  std::size_t logged = 0;
  for (int k = 0; k < 40; ++k) {
    std::vector<long> taken;
    const auto a = surd_to_cf(corpus::random_surd(rng, taken));
    const auto b = surd_to_cf(corpus::random_surd(rng, taken));
    const auto log = scan_coincidences(a, b, 40);
    CHECK(log.stars_share_denominators());
    const auto qa = convergents(a, 41), qb = convergents(b, 41);
    for (const auto& s : log.equal_stars) {
      ++logged;
      CHECK(qa[s.nu - 1].q == qb[s.mu - 1].q);
      CHECK(qa[s.nu].q == qb[s.mu].q);
    }
  }
  CHECK(logged > 0);
}

TEST_CASE("lemma on equal errors: constructed confirmation") {
  // b equals a, so with mu = nu and d = 2 every hypothesis is an equality.
  const auto a = surd_to_cf(QuadraticSurd(0, 1, 7));
  for (std::size_t nu = 0; nu < 6; ++nu) {
    const auto c = check_lemma_mm(a, a, nu, nu, 2);
    CHECK(c.outcome == LemmaOutcome::Confirmed);
    CHECK(c.xi_vs_eta == "=");
    CHECK(c.xi_next_vs_eta == "=");
    CHECK(c.star_a == c.star_b);
  }
  // a shared prefix followed by a departure: the equalities fail strictly,
  // so one of the hypotheses has to fail too
  const auto b = ContinuedFraction::periodic(2, {1, 1, 1, 4, 1, 1, 1}, {5});
  const auto c = check_lemma_mm(a, b, 1, 1, 2);
  CHECK(c.outcome != LemmaOutcome::Violation);
}

TEST_CASE("lemma on equal errors: fourth hypothesis gate") {
  const auto c = check_lemma_mm(sqrt2(), phi(), 3, 3, 1);
  CHECK(c.outcome == LemmaOutcome::NotApplicable);
  CHECK(c.xi_vs_eta.empty());
}

TEST_CASE("lemma scan over random independent pairs") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 4; ++k) {
    std::vector<long> taken;
    const auto a = surd_to_cf(corpus::random_surd(rng, taken));
    const auto b = surd_to_cf(corpus::random_surd(rng, taken));
    const auto s = scan_lemma_mm(a, b, 25, 4);
    CHECK(s.violations == 0);
    CHECK(s.undecided == 0);
    CHECK(s.not_applicable + s.confirmed == 26 * 26 * 4);
  }
}

TEST_CASE("remark records for phi and sqrt2") {
  const auto records = check_remark_pattern(phi(), sqrt2(), 30);
  REQUIRE(records.size() == 2);
  const auto& r = records[1];
  CHECK(r.shared == 5);
  CHECK(r.nu == 4);
  CHECK(r.mu == 2);
  // psi_phi(4) < psi_sqrt2(4), checked against the decimal oracle
  const mpf_class p4 = 5 - 3 * ((1 + sqrt(mpf_class(5, oracle::kBits))) / 2);
  const mpf_class s4 = 3 - 2 * sqrt(mpf_class(2, oracle::kBits));
  CHECK(p4 < s4);
  CHECK(oracle::inside(p4, r.a_before.lo, r.a_before.hi));
  CHECK(oracle::inside(s4, r.b_before.lo, r.b_before.hi));
  CHECK(r.status == PatternStatus::Holds);
  CHECK(r.earlier_a == 2);
  CHECK(r.relation_at_earlier_a == ">");
  CHECK(r.earlier_b == 1);
  CHECK(r.relation_at_earlier_b == "<");
}

TEST_CASE("remark precondition gate and empty inputs") {
  const auto swapped = check_remark_pattern(sqrt2(), phi(), 30);
  REQUIRE(swapped.size() == 2);
  CHECK(swapped[1].status == PatternStatus::NotApplicable);
  // sqrt2 and sqrt3 share only q = 1, which is never a jump time
  CHECK(check_remark_pattern(sqrt2(), ContinuedFraction::periodic(1, {}, {1, 2}), 6).empty());
  CHECK(check_remark_pattern(sqrt2(), phi(), 30, 5).empty());
}

TEST_CASE("writers") {
  std::ostringstream out;
  write_coincidence_log(out, scan_coincidences(phi(), sqrt2(), 40));
  CHECK(out.str().find("verdict=INDEPENDENT_LIKELY") != std::string::npos);
  CHECK(out.str().find("star\t2\t1\t1/2\tdenominators=ok") != std::string::npos);
  std::ostringstream rem;
  write_remark_records(rem, check_remark_pattern(phi(), sqrt2(), 30), 3);
  CHECK(rem.str().find("remark\ttransient\t2") != std::string::npos);
  CHECK(rem.str().find("remark\tsettled\t5") != std::string::npos);
}

}  // TEST_SUITE
