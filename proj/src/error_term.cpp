#include "psilab/error_term.hpp"

#include "psilab/error.hpp"

#include <utility>

namespace psilab {

ErrorTerm::ErrorTerm(ContinuedFraction owner, std::size_t index) : owner_(std::move(owner)), index_(index) {
  const auto conv = convergents(owner_, index_ + 1);
  p_ = conv[index_].p;
  q_ = conv[index_].q;
  q_prev_ = index_ == 0 ? Integer(0) : conv[index_ - 1].q;
  tail_p_ = owner_.coefficient(index_ + 1);
  tail_p_prev_ = 1;
  tail_q_ = 1;
  tail_q_prev_ = 0;
  update_enclosure();
}

void ErrorTerm::update_enclosure() {
  // alpha_{nu+1} lies strictly between P/Q and (P + P')/(Q + Q').
  auto xi_at = [this](const Integer& tp, const Integer& tq) { return make_rational(tq, q_ * tp + q_prev_ * tq); };
  Rational a = xi_at(tail_p_, tail_q_);
  Rational b = xi_at(tail_p_ + tail_p_prev_, tail_q_ + tail_q_prev_);
  if (a > b) std::swap(a, b);
  enclosure_ = {std::move(a), std::move(b)};
}

bool ErrorTerm::can_refine() const { return owner_.available(index_ + depth_ + 2); }

void ErrorTerm::refine() {
  const Integer b = owner_.coefficient(index_ + depth_ + 2);
  Integer np = b * tail_p_ + tail_p_prev_;
  Integer nq = b * tail_q_ + tail_q_prev_;
  tail_p_prev_ = std::exchange(tail_p_, std::move(np));
  tail_q_prev_ = std::exchange(tail_q_, std::move(nq));
  ++depth_;
  update_enclosure();
}

std::optional<QuadraticSurd> ErrorTerm::exact() const {
  auto value = owner_.exact_value();
  if (!value) return std::nullopt;
  return ((*value) * Rational(q_) - Rational(p_)).abs();
}

ErrorTerm error_enclosure(const ContinuedFraction& cf, std::size_t nu, std::size_t depth) {
  ErrorTerm term(cf, nu);
  for (std::size_t i = 0; i < depth; ++i) term.refine();
  return term;
}

const char* to_string(Ordering o) noexcept { return o == Ordering::Less ? "LESS" : "GREATER"; }

Ordering compare_errors(ErrorTerm& x, ErrorTerm& y, std::size_t max_depth) {
  for (;;) {
    if (x.enclosure().hi <= y.enclosure().lo) return Ordering::Less;
    if (y.enclosure().hi <= x.enclosure().lo) return Ordering::Greater;
    const bool rx = x.depth() < max_depth && x.can_refine();
    const bool ry = y.depth() < max_depth && y.can_refine();
    if (!rx && !ry) {
      throw Error(ErrorKind::Undecided, "cf_core", "compare_errors",
                  "xi_" + std::to_string(x.index()) + " and xi_" + std::to_string(y.index()) +
                      " still overlap at depths " + std::to_string(x.depth()) + "/" + std::to_string(y.depth()));
    }
    if (rx && (!ry || x.enclosure().width() >= y.enclosure().width())) {
      x.refine();
    } else {
      y.refine();
    }
  }
}

std::optional<bool> exactly_equal(const ErrorTerm& x, const ErrorTerm& y) {
  auto a = x.exact();
  if (!a) return std::nullopt;
  auto b = y.exact();
  if (!b) return std::nullopt;
  return *a == *b;
}

}  // namespace psilab
