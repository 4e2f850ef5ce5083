#pragma once

// Test-only reference values computed along paths that share nothing with the
// library: floating-point quadratic formula for periodic expansions, plain
// recurrences for convergents, and direct nearest-integer scans.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr mp_bitcnt_t kBits = 1024;

inline mpf_class mpf(long v) { return mpf_class(v, kBits); }

// Value of [a0; pre..., (period)...] from the fixed point of the period.
inline mpf_class periodic_value(long a0, const std::vector<long>& pre, const std::vector<long>& period) {
  // x = [period; x] = (P x + P') / (Q x + Q')
  mpz_class p = 1, p_prev = 0, q = 0, q_prev = 1;
  for (long a : period) {
    mpz_class np = a * p + p_prev;
    mpz_class nq = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = np;
    q = nq;
  }
  // Q x^2 + (Q' - P) x - P' = 0, positive root.
  mpf_class A(q, kBits), B(q_prev - p, kBits), C(-p_prev, kBits);
  mpf_class disc(B * B - 4 * A * C, kBits);
  mpf_class x((-B + sqrt(disc)) / (2 * A), kBits);
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) x = mpf(*it) + 1 / x;
  return mpf(a0) + 1 / x;
}

// Distance from v to the nearest integer.
inline mpf_class nearest_distance(const mpf_class& v) {
  mpf_class f(floor(v), kBits);
  mpf_class d(v - f, kBits);
  mpf_class e(1 - d, kBits);
  return d < e ? d : e;
}

struct Scan {
  std::vector<std::uint64_t> argmin;  // entry t - 1
  std::vector<mpf_class> value;
};

// min_{1 <= q <= t} ||q alpha|| for every t up to t_max.
inline Scan brute_scan(const mpf_class& alpha, std::uint64_t t_max) {
  Scan s;
  s.argmin.reserve(t_max);
  s.value.reserve(t_max);
  mpf_class best = nearest_distance(alpha);
  std::uint64_t arg = 1;
  for (std::uint64_t q = 1; q <= t_max; ++q) {
    mpf_class d = nearest_distance(alpha * mpf_class(static_cast<unsigned long>(q), kBits));
    if (d < best) {
      best = d;
      arg = q;
    }
    s.argmin.push_back(arg);
    s.value.push_back(best);
  }
  return s;
}

// q_nu by the textbook recurrence over the given coefficient list a_1, a_2, ...
inline std::vector<mpz_class> denominators(const std::vector<long>& a, std::size_t count) {
  std::vector<mpz_class> q{1};
  mpz_class prev = 0;
  for (std::size_t i = 0; q.size() < count; ++i) {
    mpz_class next = a[i] * q.back() + prev;
    prev = q.back();
    q.push_back(next);
  }
  return q;
}

inline std::vector<mpz_class> numerators(long a0, const std::vector<long>& a, std::size_t count) {
  std::vector<mpz_class> p{a0};
  mpz_class prev = 1;
  for (std::size_t i = 0; p.size() < count; ++i) {
    mpz_class next = a[i] * p.back() + prev;
    prev = p.back();
    p.push_back(next);
  }
  return p;
}

// [0; a_nu, ..., a_1] by folding from the innermost term.
inline mpq_class reversed_fold(const std::vector<long>& a, std::size_t nu) {
  mpq_class x = 0;
  for (std::size_t i = 0; i < nu; ++i) {
    x = 1 / (mpq_class(a[i]) + x);
    x.canonicalize();
  }
  return x;
}

inline bool inside(const mpf_class& v, const mpq_class& lo, const mpq_class& hi) {
  return mpf_class(lo, kBits) < v && v < mpf_class(hi, kBits);
}

}  // namespace oracle
