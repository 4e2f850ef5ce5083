#include "doctest.h"

#include "../corpus.hpp"
#include "../oracle.hpp"

#include "psilab/error.hpp"
#include "psilab/permutation.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace psilab;

namespace {

std::vector<Member> phi_sqrt2() {
  return {{"phi", ContinuedFraction::periodic(1, {}, {1})}, {"sqrt2", ContinuedFraction::periodic(1, {}, {2})}};
}

TupleContext context(std::vector<Member> m, long burn_in, long t_max) {
  TupleOptions o;
  o.burn_in = Integer(burn_in);
  o.t_max = t_max;
  return TupleContext::create(std::move(m), o);
}

// sigma(t) from the floating-point oracle: members by decreasing psi.
std::vector<Permutation> oracle_sigmas(const std::vector<oracle::Scan>& scans, std::size_t t_max) {
  std::vector<Permutation> out;
  for (std::size_t t = 1; t <= t_max; ++t) {
    Permutation p(scans.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
    std::sort(p.begin(), p.end(), [&](std::size_t a, std::size_t b) { return scans[a].value[t - 1] > scans[b].value[t - 1]; });
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_SUITE("perm_dynamics") {

TEST_CASE("sigma examples") {
  const auto ctx = context(phi_sqrt2(), 1, 10000);
  CHECK(format_permutation(sigma_at(ctx, 4)) == "2,1");
  // psi_phi(1) = ||phi|| = 2 - phi ~ 0.382 lies below psi_sqrt2(1) = sqrt2 - 1 ~ 0.414
  CHECK(format_permutation(sigma_at(ctx, 1)) == "2,1");
  const mpf_class phi = (1 + sqrt(mpf_class(5, oracle::kBits))) / 2;
  CHECK(oracle::nearest_distance(phi) < oracle::nearest_distance(sqrt(mpf_class(2, oracle::kBits))));
  // constant between breakpoints of both members
  CHECK(sigma_at(ctx, 6) == sigma_at(ctx, 7));
}

TEST_CASE("tau examples") {
  const auto ctx = context(phi_sqrt2(), 1, 10000);
  CHECK(tau_at(ctx, 5) == 2);
  CHECK(tau_at(ctx, 4) == 0);
  CHECK(tau_at(ctx, 12) == 1);
}

TEST_CASE("census over (1, 10^4] matches the oracle sweep") {
  const auto ctx = context(phi_sqrt2(), 1, 10000);
  const auto report = sweep(ctx);
  CHECK(report.k_hat == 2);
  CHECK(report.max_tau <= report.k_hat);
  CHECK(sign_change_count(ctx, 0, 1) >= 2);
  CHECK(report.sign_changes[0][1] == sign_change_count(ctx, 0, 1));

  const mpf_class phi = (1 + sqrt(mpf_class(5, oracle::kBits))) / 2;
  const mpf_class s2 = sqrt(mpf_class(2, oracle::kBits));
  const auto sigmas = oracle_sigmas({oracle::brute_scan(phi, 10000), oracle::brute_scan(s2, 10000)}, 10000);
  std::set<Permutation> seen(sigmas.begin() + 1, sigmas.end());
  CHECK(seen.size() == report.k_hat);
  for (const auto& e : report.events) {
    const auto t = e.t.get_ui();
    CHECK(e.before == sigmas[t - 2]);
    CHECK(e.after == sigmas[t - 1]);
  }
  std::size_t flips = 0;
  for (std::size_t t = 2; t <= 10000; ++t) flips += sigmas[t - 1] != sigmas[t - 2];
  CHECK(flips == sign_change_count(ctx, 0, 1));
}

TEST_CASE("events carry the jumping members") {
  const auto ctx = context(phi_sqrt2(), 1, 400);
  const auto report = sweep(ctx);
  for (const auto& e : report.events) {
    CHECK(e.jumpers.size() == tau_at(ctx, e.t));
    for (auto m : e.jumpers) CHECK(ctx.trajectories()[m].is_breakpoint(e.t));
  }
  CHECK(report.events.front().t == 2);
}

TEST_CASE("event-free window") {
  // sqrt2 jumps at 169, 408; phi at 144, 233, 377
  const auto ctx = context(phi_sqrt2(), 145, 168);
  const auto report = sweep(ctx);
  CHECK(report.events.empty());
  CHECK(report.k_hat == 1);
  CHECK(sign_change_count(ctx, 0, 1) == 0);
}

TEST_CASE("shared prefix: simultaneous jumps alternate the order") {
  // Both start [1; 2, 2, 2, 2, 2, 2, ...]; the second leaves the sqrt2 pattern
  // at a_7. The denominators agree through q_6 = 169, so every jump is shared
  // and the order of xi_nu follows the tail comparison, whose sign alternates
  // with the distance to the first differing coefficient.
  std::vector<Member> m{{"a", ContinuedFraction::periodic(1, {}, {2})},
                        {"b", ContinuedFraction::periodic(1, {2, 2, 2, 2, 2, 2}, {3, 1})}};
  const auto ctx = context(m, 1, 400);
  const auto report = sweep(ctx);
  CHECK(sign_change_count(ctx, 0, 1) == 6);
  for (const auto& e : report.events) CHECK(e.jumpers.size() == 2);

  const auto scans = std::vector<oracle::Scan>{
      oracle::brute_scan(oracle::periodic_value(1, {}, {2}), 400),
      oracle::brute_scan(oracle::periodic_value(1, {2, 2, 2, 2, 2, 2}, {3, 1}), 400)};
  const auto sigmas = oracle_sigmas(scans, 400);
  std::size_t flips = 0;
  for (std::size_t t = 2; t <= 400; ++t) flips += sigmas[t - 1] != sigmas[t - 2];
  CHECK(flips == 6);
  // beyond q_7 the denominators differ and the alternation stops being forced
  const auto later = context(m, 170, 5000);
  CHECK(sweep(later).max_tau == 1);
}

TEST_CASE("dependent members are rejected") {
  std::vector<Member> m{{"a", ContinuedFraction::periodic(1, {}, {2})}, {"b", ContinuedFraction::periodic(2, {}, {2})}};
  try {
    context(m, 1, 100);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Dependent);
  }
}

TEST_CASE("window validation and default burn-in") {
  CHECK_THROWS_AS(context(phi_sqrt2(), 100, 100), Error);
  TupleOptions o;
  o.t_max = 1000;
  const auto ctx = TupleContext::create(phi_sqrt2(), o);
  CHECK(ctx.burn_in() == 100);
}

TEST_CASE("sweeps are deterministic across thread counts") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    TupleOptions o;
    o.t_max = 100000;
    const auto ctx = TupleContext::create(corpus::random_tuple(rng, 4), o);
    std::ostringstream one, many;
    write_report(one, sweep(ctx, 1));
    write_report(many, sweep(ctx, 4));
    CHECK(one.str() == many.str());
  }
}

TEST_CASE("adjacent windows concatenate") {
  std::mt19937_64 rng(37);
  TupleOptions o;
  o.t_max = 50000;
  const auto ctx = TupleContext::create(corpus::random_tuple(rng, 3), o);
  const Integer mid = 7000;
  const auto whole = sweep(ctx, ctx.burn_in(), ctx.t_max());
  const auto left = sweep(ctx, ctx.burn_in(), mid);
  const auto right = sweep(ctx, mid, ctx.t_max());
  REQUIRE(whole.events.size() == left.events.size() + right.events.size());
  for (std::size_t i = 0; i < left.events.size(); ++i) CHECK(whole.events[i].t == left.events[i].t);
  for (std::size_t i = 0; i < right.events.size(); ++i)
    CHECK(whole.events[left.events.size() + i].after == right.events[i].after);
  CHECK(right.initial == (left.events.empty() ? left.initial : left.events.back().after));
}

TEST_CASE("merged event times") {
  const auto ctx = context(phi_sqrt2(), 1, 100);
  const auto times = merged_event_times(ctx, 1, 30);
  const std::vector<Integer> expected{2, 3, 5, 8, 12, 13, 21, 29};
  CHECK(times == expected);
}

}  // TEST_SUITE
