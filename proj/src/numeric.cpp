#include "psilab/numeric.hpp"

#include "psilab/error.hpp"

#include <regex>
#include <stdexcept>

namespace psilab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DepthExhausted: return "depth-exhausted";
    case ErrorKind::DepthCapExceeded: return "depth-cap-exceeded";
    case ErrorKind::Undecided: return "undecided-ordering";
    case ErrorKind::OutOfHorizon: return "out-of-horizon";
    case ErrorKind::PrecisionInsufficient: return "precision-insufficient";
    case ErrorKind::Dependent: return "dependent";
    case ErrorKind::WindowTooShort: return "window-too-short";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::Violation: return "violation";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string module, std::string operation, const std::string& message)
    : std::runtime_error(module + "/" + operation + ": " + to_string(kind) + ": " + message),
      kind_(kind),
      module_(std::move(module)),
      operation_(std::move(operation)) {}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_of(const Rational& x) { return floor_div(x.get_num(), x.get_den()); }

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::string to_fraction_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  // GMP tolerates embedded whitespace, so the shape is checked first.
  static const std::regex shape(R"([+-]?[0-9]+(/[0-9]+)?)");
  Rational r;
  if (!std::regex_match(text, shape) || r.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0 ||
      r.get_den() == 0) {
    throw Error(ErrorKind::ParseError, "numeric", "parse_rational", "not a rational: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

std::string to_decimal_string(const Rational& x, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer scaled = x.get_num() * scale;
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  const bool negative = q < 0 || (q == 0 && x < 0);
  Integer mag = abs(q);
  std::string s = mag.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  return negative ? "-" + s : s;
}

}  // namespace psilab
