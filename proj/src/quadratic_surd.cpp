#include "psilab/quadratic_surd.hpp"

#include "psilab/error.hpp"

namespace psilab {

namespace {

Error surd_error(const std::string& message) {
  return Error(ErrorKind::InvalidArgument, "cf_core", "QuadraticSurd", message);
}

// Returns (f, m) with n = f^2 * m and m square-free.
std::pair<Integer, Integer> split_square(Integer n, unsigned long bound) {
  Integer factor = 1;
  for (unsigned long p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    const Integer pp = Integer(p) * p;
    if (pp > n) break;
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
      n /= pp;
      factor *= p;
    }
  }
  // Every prime left in n exceeds min(bound, sqrt(n)); if n < bound^2 it is
  // 1 or a single prime.
  const Integer limit = Integer(bound) * bound;
  if (n >= limit && mpz_perfect_square_p(n.get_mpz_t()) == 0) {
    // A square factor would need a prime above the bound; only a perfect
    // square test can still catch the simplest case.
    throw surd_error("radicand cofactor " + n.get_str() + " cannot be certified square-free within factor bound");
  }
  if (n >= limit) {
    const Integer root = isqrt(n);
    return {factor * root, Integer(1)};
  }
  return {factor, n};
}

}  // namespace

int surd_sign(const Rational& u, const Rational& v, const Integer& radicand) {
  const int su = sgn(u);
  const int sv = sgn(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  // Opposite signs: compare u^2 with v^2 * D.
  const Rational lhs = u * u;
  const Rational rhs = v * v * radicand;
  const int c = cmp(lhs, rhs);
  return c > 0 ? su : sv;
}

QuadraticSurd::QuadraticSurd(Rational rational_part, Rational root_coefficient, const Integer& radicand,
                             unsigned long factor_bound) {
  rational_part.canonicalize();
  root_coefficient.canonicalize();
  if (radicand <= 0) throw surd_error("radicand must be positive, got " + radicand.get_str());
  if (root_coefficient == 0) throw surd_error("root coefficient must be nonzero");
  auto [factor, squarefree] = split_square(radicand, factor_bound);
  if (squarefree == 1) throw surd_error("radicand " + radicand.get_str() + " is a perfect square");
  rational_ = rational_part;
  root_ = root_coefficient * factor;
  root_.canonicalize();
  radicand_ = squarefree;
}

QuadraticSurd::QuadraticSurd(Canonical, Rational rational_part, Rational root_coefficient, Integer radicand)
    : rational_(std::move(rational_part)), root_(std::move(root_coefficient)), radicand_(std::move(radicand)) {
  rational_.canonicalize();
  root_.canonicalize();
  if (root_ == 0) throw surd_error("arithmetic produced a rational value");
}

int QuadraticSurd::sign() const { return surd_sign(rational_, root_, radicand_); }

Integer QuadraticSurd::floor() const {
  Integer m = floor_of(enclose(8).lo);
  while (surd_sign(rational_ - Rational(m + 1), root_, radicand_) >= 0) ++m;
  while (surd_sign(rational_ - Rational(m), root_, radicand_) < 0) --m;
  return m;
}

Interval QuadraticSurd::enclose(unsigned bits) const {
  // sqrt(D) in [s/2^k, (s+1)/2^k] with s = isqrt(D * 4^k); the extra bits
  // absorb the scaling by |root coefficient|.
  Integer coef_bits = ::abs(root_.get_num()) / root_.get_den() + 1;
  const unsigned k = bits + static_cast<unsigned>(mpz_sizeinbase(coef_bits.get_mpz_t(), 2)) + 2;
  Integer scaled = radicand_ << (2 * k);
  const Integer s = isqrt(scaled);
  Rational lo_root = Rational(s) / Rational(Integer(1) << k);
  Rational hi_root = Rational(s + 1) / Rational(Integer(1) << k);
  lo_root.canonicalize();
  hi_root.canonicalize();
  Rational a = rational_ + root_ * lo_root;
  Rational b = rational_ + root_ * hi_root;
  a.canonicalize();
  b.canonicalize();
  if (a > b) std::swap(a, b);
  return {a, b};
}

QuadraticSurd QuadraticSurd::operator-() const { return {Canonical{}, -rational_, -root_, radicand_}; }

QuadraticSurd QuadraticSurd::operator+(const Rational& x) const {
  return {Canonical{}, rational_ + x, root_, radicand_};
}

QuadraticSurd QuadraticSurd::operator-(const Rational& x) const {
  return {Canonical{}, rational_ - x, root_, radicand_};
}

QuadraticSurd QuadraticSurd::operator*(const Rational& x) const {
  if (x == 0) throw surd_error("scaling by zero");
  return {Canonical{}, rational_ * x, root_ * x, radicand_};
}

QuadraticSurd QuadraticSurd::mobius(const Integer& a, const Integer& b, const Integer& c, const Integer& d) const {
  if (a * d - b * c == 0) throw surd_error("singular Mobius transform");
  // (u + v sqrt D) / (w + z sqrt D), multiplied through by the conjugate.
  const Rational u = rational_ * a + b;
  const Rational v = root_ * a;
  const Rational w = rational_ * c + d;
  const Rational z = root_ * c;
  const Rational norm = w * w - z * z * radicand_;
  const Rational r = (u * w - v * z * radicand_) / norm;
  const Rational s = (v * w - u * z) / norm;
  return {Canonical{}, r, s, radicand_};
}

std::string QuadraticSurd::to_string() const {
  return to_fraction_string(rational_) + " + " + to_fraction_string(root_) + "*sqrt(" + radicand_.get_str() + ")";
}

}  // namespace psilab
