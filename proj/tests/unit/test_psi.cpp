#include "doctest.h"

#include "../corpus.hpp"
#include "../oracle.hpp"

#include "psilab/error.hpp"
#include "psilab/psi.hpp"

#include <random>
#include <sstream>

using namespace psilab;

namespace {

ContinuedFraction sqrt2() { return ContinuedFraction::periodic(1, {}, {2}); }
ContinuedFraction phi() { return ContinuedFraction::periodic(1, {}, {1}); }

std::vector<Integer> breakpoint_qs(const StepTrajectory& t) {
  std::vector<Integer> out;
  for (const auto& b : t.breakpoints()) out.push_back(b.q);
  return out;
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

mpf_class sqrt2_value() { return sqrt(mpf_class(2, oracle::kBits)); }
mpf_class phi_value() { return (1 + sqrt(mpf_class(5, oracle::kBits))) / 2; }

}  // namespace

TEST_SUITE("psi_engine") {

TEST_CASE("trajectory breakpoints") {
  CHECK(breakpoint_qs(build_trajectory(sqrt2(), 12)) == ints({1, 2, 5, 12}));
  CHECK(breakpoint_qs(build_trajectory(phi(), 8)) == ints({1, 2, 3, 5, 8}));
  const auto one = build_trajectory(sqrt2(), 1);
  CHECK(one.breakpoints().front().q == 1);
  CHECK(one.locate(1) == 0);
  // q_0 = q_1 = 1 keeps only nu = 1
  CHECK(build_trajectory(phi(), 8).breakpoints().front().index == 1);
}

TEST_CASE("horizon lies below the next denominator") {
  const auto t = build_trajectory(sqrt2(), 12);
  CHECK(t.horizon() == 28);
  CHECK(t.locate(29) == StepTrajectory::npos);
  CHECK_THROWS_AS(psi_at(t, 29), Error);
}

TEST_CASE("psi_at and left limits") {
  const auto s = build_trajectory(sqrt2(), 100);
  const auto f = build_trajectory(phi(), 100);
  CHECK(psi_at(s, 4).index() == 1);
  CHECK(oracle::inside(3 - 2 * sqrt2_value(), psi_at(s, 4).enclosure().lo, psi_at(s, 4).enclosure().hi));
  CHECK(psi_at(f, 4).q() == 3);
  CHECK(oracle::inside(5 - 3 * phi_value(), psi_at(f, 4).enclosure().lo, psi_at(f, 4).enclosure().hi));
  CHECK(psi_at(s, 1).index() == 0);
  CHECK(psi_at(f, 1).index() == 1);
  CHECK(psi_left_limit(s, 5).index() == 1);
  CHECK(psi_at(s, 5).index() == 2);
  CHECK(psi_left_limit(s, 4).index() == psi_at(s, 4).index());
  CHECK(psi_left_limit(f, 2).q() == 1);
}

TEST_CASE("right continuity: psi is constant on [q_nu, q_{nu+1})") {
  const auto s = build_trajectory(sqrt2(), 200);
  for (const auto& b : s.breakpoints()) {
    if (b.q > s.horizon()) break;
    CHECK(psi_at(s, b.q).index() == b.index);
    if (b.q > 1) CHECK(psi_left_limit(s, b.q).index() != b.index);
  }
}

TEST_CASE("brute force examples") {
  const auto alpha = QuadraticSurd(0, 1, 2).enclose(80);
  const auto r4 = brute_force_psi(alpha, 4);
  CHECK(r4.argmin == 2);
  const auto r12 = brute_force_psi(alpha, 12);
  CHECK(r12.argmin == 12);
  CHECK(oracle::inside(17 - 12 * sqrt2_value(), r12.value.lo, r12.value.hi));
  const auto g = brute_force_psi(QuadraticSurd(make_rational(1, 2), make_rational(1, 2), 5).enclose(80), 1);
  CHECK(g.argmin == 1);
  // ||phi|| = 2 - phi; phi - 1 is xi_0, which the collapse q_0 = q_1 = 1 skips
  CHECK(oracle::inside(2 - phi_value(), g.value.lo, g.value.hi));
  // an enclosure that is too wide is refused, not guessed
  CHECK_THROWS_AS(brute_force_psi(QuadraticSurd(0, 1, 2).enclose(4), 100), Error);
}

TEST_CASE("breakpoint selection agrees with the brute-force scan") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const auto spec = corpus::random_periodic(rng);
    const auto cf = corpus::to_cf(spec);
    const auto traj = build_trajectory(cf, 2000);
    const auto scan = oracle::brute_scan(oracle::periodic_value(spec.a0, spec.pre, spec.period), 2000);
    for (unsigned long t = 1; t <= 2000; ++t) {
      const auto& b = traj.breakpoints()[traj.locate(t)];
      CHECK(b.q == Integer(static_cast<unsigned long>(scan.argmin[t - 1])));
    }
  }
}

TEST_CASE("serialization") {
  std::ostringstream out;
  write_trajectory(out, build_trajectory(sqrt2(), 5));
  CHECK(out.str() == "1\t1/3\t1/2\n2\t1/7\t1/5\n5\t1/17\t1/12\n");
  std::ostringstream approx;
  write_trajectory(approx, build_trajectory(sqrt2(), 1), 4);
  CHECK(approx.str().find("0.4166") != std::string::npos);
}

}  // TEST_SUITE
