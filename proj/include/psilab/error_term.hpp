#pragma once

#include "psilab/continued_fraction.hpp"
#include "psilab/numeric.hpp"

#include <cstddef>
#include <optional>

namespace psilab {

inline constexpr std::size_t kDefaultMaxCompareDepth = 64;

// Certified enclosure of xi_nu = |q_nu * alpha - p_nu| = 1 / (q_nu * alpha_{nu+1} + q_{nu-1}).
//
// The tail alpha_{nu+1} is bracketed by consecutive convergents of its own
// expansion; each refinement consumes one more coefficient. The enclosure is
// an open interval, so touching endpoints of two terms already certify order.
class ErrorTerm {
 public:
  ErrorTerm(ContinuedFraction owner, std::size_t index);

  std::size_t index() const { return index_; }
  const ContinuedFraction& owner() const { return owner_; }
  const Interval& enclosure() const { return enclosure_; }
  // Coefficients consumed beyond a_{nu+1}.
  std::size_t depth() const { return depth_; }
  const Integer& q() const { return q_; }
  const Integer& p() const { return p_; }

  bool can_refine() const;
  void refine();

  // |q_nu * alpha - p_nu| exactly, when the owner has an exact backend.
  std::optional<QuadraticSurd> exact() const;

 private:
  void update_enclosure();

  ContinuedFraction owner_;
  std::size_t index_;
  std::size_t depth_ = 0;
  Integer p_;
  Integer q_;
  Integer q_prev_;
  // Convergents of the tail alpha_{nu+1} at the current depth and one before.
  Integer tail_p_, tail_p_prev_;
  Integer tail_q_, tail_q_prev_;
  Interval enclosure_;
};

ErrorTerm error_enclosure(const ContinuedFraction& cf, std::size_t nu, std::size_t depth);

enum class Ordering { Less, Greater };

const char* to_string(Ordering o) noexcept;

// Refines both terms (wider first) until their enclosures separate. Throws
// ErrorKind::Undecided when neither can be refined further within
// `max_depth` and they still overlap.
Ordering compare_errors(ErrorTerm& x, ErrorTerm& y, std::size_t max_depth = kDefaultMaxCompareDepth);

// Exact equality via the owners' surd backends; nullopt when either lacks one.
std::optional<bool> exactly_equal(const ErrorTerm& x, const ErrorTerm& y);

}  // namespace psilab
