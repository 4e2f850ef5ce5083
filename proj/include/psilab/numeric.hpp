#pragma once

#include <gmpxx.h>

#include <string>

namespace psilab {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer floor_div(const Integer& a, const Integer& b);
Integer floor_of(const Rational& x);
Integer isqrt(const Integer& n);

// "num/den" in lowest terms; integers keep the "/1" so the form is uniform.
std::string to_fraction_string(const Rational& x);
Rational parse_rational(const std::string& text);

// Fixed-point decimal rendering truncated toward zero, for --approx output.
std::string to_decimal_string(const Rational& x, int digits);

// Open interval (lo, hi) with reduced endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo < x && x < hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

}  // namespace psilab
