#include "doctest.h"

#include "../corpus.hpp"
#include "../oracle.hpp"

#include "psilab/continued_fraction.hpp"
#include "psilab/error.hpp"
#include "psilab/error_term.hpp"

#include <random>

using namespace psilab;

namespace {

ContinuedFraction sqrt2() { return ContinuedFraction::periodic(1, {}, {2}); }
ContinuedFraction phi() { return ContinuedFraction::periodic(1, {}, {1}); }

Rational q(long n, long d) { return make_rational(n, d); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no psilab::Error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_SUITE("cf_core") {

TEST_CASE("convergents of sqrt 2") {
  const auto c = convergents(sqrt2(), 5);
  const long p[] = {1, 3, 7, 17, 41}, qq[] = {1, 2, 5, 12, 29};
  for (int i = 0; i < 5; ++i) {
    CHECK(c[i].p == p[i]);
    CHECK(c[i].q == qq[i]);
    // |q sqrt2 - p| < 1/q against an independent decimal value
    const mpf_class err = abs(mpf_class(qq[i], oracle::kBits) * sqrt(mpf_class(2, oracle::kBits)) - p[i]);
    CHECK(err < mpf_class(1, oracle::kBits) / qq[i]);
  }
}

TEST_CASE("zero-depth convergent is a0") {
  const auto c = convergents(ContinuedFraction::finite(7, {}), 1);
  REQUIRE(c.size() == 1);
  CHECK(c[0].p == 7);
  CHECK(c[0].q == 1);
}

TEST_CASE("phi denominators are Fibonacci") {
  const auto c = convergents(phi(), 6);
  const long f[] = {1, 1, 2, 3, 5, 8};
  for (int i = 0; i < 6; ++i) CHECK(c[i].q == f[i]);
}

TEST_CASE("convergents_through stops after the first q beyond the bound") {
  const auto c = convergents_through(sqrt2(), 12);
  REQUIRE(c.size() == 5);
  CHECK(c.back().q == 29);
}

TEST_CASE("coefficient access and invariants") {
  CHECK(kind_of([] { ContinuedFraction::periodic(1, {}, {}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ContinuedFraction::finite(1, {2, 0, 3}); }) == ErrorKind::InvalidArgument);
  const auto f = ContinuedFraction::finite(3, {1, 4, 1, 5});
  CHECK(f.coefficient(4) == 5);
  CHECK_FALSE(f.available(5));
  CHECK(kind_of([&] { f.coefficient(5); }) == ErrorKind::DepthExhausted);
  const auto capped = sqrt2().with_depth_cap(10);
  CHECK(capped.coefficient(10) == 2);
  CHECK(kind_of([&] { capped.coefficient(11); }) == ErrorKind::DepthCapExceeded);
  const auto rule = ContinuedFraction::rule(2, [](std::size_t nu) { return Integer(nu % 3 == 2 ? 2 * (nu / 3 + 1) : 1); }, 30);
  CHECK(rule.coefficient(2) == 2);
  CHECK(rule.coefficient(5) == 4);
  CHECK(kind_of([&] { rule.coefficient(31); }) == ErrorKind::DepthExhausted);
}

TEST_CASE("star values") {
  CHECK(star_value(sqrt2(), 3) == q(5, 12));
  CHECK(star_value(phi(), 5) == q(5, 8));
  const auto f = ContinuedFraction::finite(0, {7, 3});
  CHECK(star_value(f, 1) == q(1, 7));
  CHECK(kind_of([] { star_value(sqrt2(), 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("star value matches direct folding of the reversed word") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto spec = corpus::random_periodic(rng);
    const auto cf = corpus::to_cf(spec);
    std::vector<long> a;
    for (std::size_t nu = 1; nu <= 20; ++nu) a.push_back(cf.coefficient(nu).get_si());
    for (std::size_t nu = 1; nu <= 20; ++nu) CHECK(star_value(cf, nu) == oracle::reversed_fold(a, nu));
  }
}

TEST_CASE("tails") {
  const auto t = tail(sqrt2(), 1);
  for (std::size_t nu = 0; nu < 10; ++nu) CHECK(t.coefficient(nu) == 2);
  const auto f = tail(ContinuedFraction::finite(3, {1, 4, 1, 5}), 2);
  CHECK(f.coefficient(0) == 4);
  CHECK(f.coefficient(1) == 1);
  CHECK(f.coefficient(2) == 5);
  CHECK_FALSE(f.available(3));
  for (std::size_t k = 1; k < 6; ++k) {
    const auto p = tail(phi(), k);
    for (std::size_t nu = 0; nu < 8; ++nu) CHECK(p.coefficient(nu) == 1);
  }
}

TEST_CASE("determinant alternates on random periodic expansions") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const auto cf = corpus::to_cf(corpus::random_periodic(rng));
    const auto c = convergents(cf, 41);
    for (std::size_t nu = 1; nu < c.size(); ++nu) {
      const Integer det = c[nu].p * c[nu - 1].q - c[nu - 1].p * c[nu].q;
      CHECK(det == (nu % 2 == 1 ? 1 : -1));
      if (nu >= 2) {
        CHECK(c[nu].q > c[nu - 1].q);
        CHECK(c[nu].q == cf.coefficient(nu) * c[nu - 1].q + c[nu - 2].q);
        CHECK(c[nu].p == cf.coefficient(nu) * c[nu - 1].p + c[nu - 2].p);
      }
    }
  }
}

}  // TEST_SUITE

TEST_SUITE("quadratic_surd") {

TEST_CASE("canonical form") {
  const QuadraticSurd a(0, 1, 8);
  CHECK(a.radicand() == 2);
  CHECK(a.root_coefficient() == 2);
  CHECK(a == QuadraticSurd(0, 2, 2));
  CHECK(kind_of([] { QuadraticSurd(0, 1, 9); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { QuadraticSurd(1, 0, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("floor and sign") {
  CHECK(QuadraticSurd(0, 1, 2).floor() == 1);
  CHECK(QuadraticSurd(0, -1, 2).floor() == -2);
  CHECK(QuadraticSurd(q(1, 2), q(1, 2), 5).floor() == 1);
  CHECK(QuadraticSurd(3, -2, 2).sign() == 1);   // 3 - 2.828
  CHECK(QuadraticSurd(-3, 2, 2).sign() == -1);
  const auto e = QuadraticSurd(0, 1, 2).enclose(60);
  CHECK(e.width() <= make_rational(1, 1) / Rational(Integer(1) << 60));
  CHECK(oracle::inside(sqrt(mpf_class(2, oracle::kBits)), e.lo, e.hi));
}

TEST_CASE("surd to continued fraction") {
  const auto s2 = surd_to_cf(QuadraticSurd(0, 1, 2));
  CHECK(s2.a0() == 1);
  CHECK(s2.preperiod().empty());
  CHECK(s2.period() == std::vector<Integer>{2});
  const auto golden = surd_to_cf(QuadraticSurd(q(1, 2), q(1, 2), 5));
  CHECK(golden.a0() == 1);
  CHECK(golden.period() == std::vector<Integer>{1});
  const auto shifted = surd_to_cf(QuadraticSurd(2, 1, 2));
  CHECK(shifted.a0() == 3);
  CHECK(shifted.period() == std::vector<Integer>{2});
  // reconverting: convergents approach the decimal value
  const auto c = convergents(shifted, 30).back();
  const mpf_class v = 2 + sqrt(mpf_class(2, oracle::kBits));
  CHECK(abs(mpf_class(c.p, oracle::kBits) / mpf_class(c.q, oracle::kBits) - v) < mpf_class(1e-20, oracle::kBits));
}

TEST_CASE("surd round trip on random periodic expansions") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const auto spec = corpus::random_periodic(rng);
    const auto cf = corpus::to_cf(spec);
    const auto value = surd_from_periodic(cf);
    const auto e = value.enclose(200);
    CHECK(oracle::inside(oracle::periodic_value(spec.a0, spec.pre, spec.period), e.lo, e.hi));
    const auto back = surd_to_cf(value);
    for (std::size_t nu = 0; nu < 40; ++nu) CHECK(back.coefficient(nu) == cf.coefficient(nu));
  }
}

TEST_CASE("integer combinations") {
  const QuadraticSurd r2(0, 1, 2);
  CHECK(integer_combination_check(r2, QuadraticSurd(1, -1, 2)) == IntegerCombination::SumInteger);
  CHECK(integer_combination_check(r2, QuadraticSurd(3, 1, 2)) == IntegerCombination::DiffInteger);
  CHECK(integer_combination_check(r2, QuadraticSurd(0, 1, 3)) == IntegerCombination::Neither);
  CHECK(integer_combination_check(r2, QuadraticSurd(q(1, 2), 1, 2)) == IntegerCombination::Neither);
}

}  // TEST_SUITE

TEST_SUITE("error_term") {

TEST_CASE("initial enclosures") {
  const auto a = error_enclosure(sqrt2(), 1, 0);
  CHECK(a.enclosure().lo == q(1, 7));
  CHECK(a.enclosure().hi == q(1, 5));
  CHECK(oracle::inside(3 - 2 * sqrt(mpf_class(2, oracle::kBits)), a.enclosure().lo, a.enclosure().hi));
  const auto b = error_enclosure(phi(), 0, 0);
  CHECK(b.enclosure().lo == q(1, 2));
  CHECK(b.enclosure().hi == 1);
}

TEST_CASE("refinement nests and keeps the true value") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const auto spec = corpus::random_periodic(rng);
    const auto cf = corpus::to_cf(spec);
    const auto alpha = oracle::periodic_value(spec.a0, spec.pre, spec.period);
    const auto c = convergents(cf, 12);
    for (std::size_t nu = 0; nu < 10; ++nu) {
      const mpf_class truth = abs(alpha * mpf_class(c[nu].q, oracle::kBits) - mpf_class(c[nu].p, oracle::kBits));
      ErrorTerm x(cf, nu);
      Interval prev = x.enclosure();
      CHECK(oracle::inside(truth, prev.lo, prev.hi));
      for (int d = 0; d < 12; ++d) {
        x.refine();
        const Interval& cur = x.enclosure();
        CHECK(prev.contains(cur));
        CHECK(cur.width() < prev.width());
        CHECK(oracle::inside(truth, cur.lo, cur.hi));
        prev = cur;
      }
    }
  }
}

TEST_CASE("compare_errors") {
  ErrorTerm a(sqrt2(), 1), b(phi(), 3);
  CHECK(compare_errors(a, b) == Ordering::Greater);
  ErrorTerm b2(phi(), 3), a2(sqrt2(), 1);
  CHECK(compare_errors(b2, a2) == Ordering::Less);
  ErrorTerm x(sqrt2(), 4), y(sqrt2(), 5);
  CHECK(compare_errors(x, y) == Ordering::Greater);
  ErrorTerm s(sqrt2(), 3), t(sqrt2(), 3);
  CHECK(kind_of([&] { compare_errors(s, t, 16); }) == ErrorKind::Undecided);
  CHECK(exactly_equal(s, t) == std::optional<bool>(true));
}

TEST_CASE("compare is antisymmetric and transitive on random terms") {
  std::mt19937_64 rng(99);
  std::vector<ErrorTerm> terms;
  std::vector<long> taken;
  for (int k = 0; k < 6; ++k) {
    const auto cf = surd_to_cf(corpus::random_surd(rng, taken));
    for (std::size_t nu = 1; nu < 4; ++nu) terms.emplace_back(cf, nu);
  }
  const std::size_t n = terms.size();
  std::vector<std::vector<int>> less(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto x = terms[i];
      auto y = terms[j];
      auto u = terms[j];
      auto v = terms[i];
      const bool lt = compare_errors(x, y) == Ordering::Less;
      CHECK(lt == (compare_errors(u, v) == Ordering::Greater));
      less[i][j] = lt;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (less[i][j] && less[j][k]) CHECK(less[i][k]);
}

TEST_CASE("xi recurrence: xi_{nu-1} = a_{nu+1} xi_nu + xi_{nu+1}") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const auto cf = corpus::to_cf(corpus::random_periodic(rng));
    for (std::size_t nu = 1; nu < 12; ++nu) {
      const auto prev = ErrorTerm(cf, nu - 1).exact();
      const auto cur = ErrorTerm(cf, nu).exact();
      const auto next = ErrorTerm(cf, nu + 1).exact();
      REQUIRE(prev);
      const Rational a(cf.coefficient(nu + 1));
      const auto rhs = *cur * a;
      CHECK(prev->root_coefficient() == rhs.root_coefficient() + next->root_coefficient());
      CHECK(prev->rational_part() == rhs.rational_part() + next->rational_part());
    }
  }
}

}  // TEST_SUITE
