#pragma once

#include "psilab/numeric.hpp"

#include <string>

namespace psilab {

inline constexpr unsigned long kDefaultFactorBound = 1'000'000;

// Exact real number r + s*sqrt(D) with D square-free, D >= 2 and s != 0.
class QuadraticSurd {
 public:
  // `radicand` may carry square factors; they are pulled into the root
  // coefficient. Trial factoring runs up to `factor_bound`; a cofactor that
  // cannot be certified square-free within that bound is rejected.
  QuadraticSurd(Rational rational_part, Rational root_coefficient, const Integer& radicand,
                unsigned long factor_bound = kDefaultFactorBound);

  const Rational& rational_part() const { return rational_; }
  const Rational& root_coefficient() const { return root_; }
  const Integer& radicand() const { return radicand_; }

  int sign() const;
  Integer floor() const;
  // Certified enclosure of width at most 2^-bits.
  Interval enclose(unsigned bits) const;

  QuadraticSurd operator-() const;
  QuadraticSurd operator+(const Rational& x) const;
  QuadraticSurd operator-(const Rational& x) const;
  QuadraticSurd operator*(const Rational& x) const;
  QuadraticSurd abs() const { return sign() < 0 ? -*this : *this; }

  // (a*x + b) / (c*x + d) for integer a, b, c, d with ad - bc != 0.
  QuadraticSurd mobius(const Integer& a, const Integer& b, const Integer& c, const Integer& d) const;

  std::string to_string() const;

  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;

 private:
  struct Canonical {};
  QuadraticSurd(Canonical, Rational rational_part, Rational root_coefficient, Integer radicand);

  Rational rational_;
  Rational root_;
  Integer radicand_;
};

// Sign of u + v*sqrt(D) for square-free D >= 2, computed exactly.
int surd_sign(const Rational& u, const Rational& v, const Integer& radicand);

}  // namespace psilab
