#pragma once

#include "psilab/numeric.hpp"
#include "psilab/quadratic_surd.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace psilab {

inline constexpr std::size_t kDefaultDepthCap = 512;

enum class Backing { Finite, Periodic, Rule };

// Coefficient stream [a0; a1, a2, ...] of an irrational number. Immutable;
// copies share the underlying storage.
class ContinuedFraction {
 public:
  // Maps nu >= 1 to a_nu.
  using Rule = std::function<Integer(std::size_t)>;

  // `coefficients` holds a_1, a_2, ...; it is a prefix of an irrational
  // expansion and reading past its end is an error.
  static ContinuedFraction finite(Integer a0, std::vector<Integer> coefficients,
                                  std::size_t depth_cap = kDefaultDepthCap);
  static ContinuedFraction periodic(Integer a0, std::vector<Integer> preperiod, std::vector<Integer> period,
                                    std::size_t depth_cap = kDefaultDepthCap);
  static ContinuedFraction rule(Integer a0, Rule rule, std::size_t declared_depth,
                                std::size_t depth_cap = kDefaultDepthCap);

  Backing backing() const;
  const Integer& a0() const;
  // a_nu; nu == 0 yields a0.
  Integer coefficient(std::size_t nu) const;
  // True when coefficient(nu) would succeed.
  bool available(std::size_t nu) const;
  std::size_t depth_cap() const;
  ContinuedFraction with_depth_cap(std::size_t cap) const;

  // Only meaningful for the matching backing; empty otherwise.
  const std::vector<Integer>& preperiod() const;
  const std::vector<Integer>& period() const;
  const std::vector<Integer>& finite_coefficients() const;

  // Exact value when the stream is eventually periodic.
  std::optional<QuadraticSurd> exact_value() const;

  // Same coefficient description (not value equality for rule backings).
  bool same_description(const ContinuedFraction& other) const;

 private:
  struct Data;
  explicit ContinuedFraction(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

struct Convergent {
  std::size_t index = 0;
  Integer p;
  Integer q;
};

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count);
// Convergents nu = 0, 1, ... up to and including the first with q > bound.
std::vector<Convergent> convergents_through(const ContinuedFraction& cf, const Integer& bound);

// q_{nu-1} / q_nu for nu >= 1.
Rational star_value(const ContinuedFraction& cf, std::size_t nu);

// [a_nu; a_{nu+1}, ...].
ContinuedFraction tail(const ContinuedFraction& cf, std::size_t nu);

ContinuedFraction surd_to_cf(const QuadraticSurd& s, std::size_t depth_cap = kDefaultDepthCap);
QuadraticSurd surd_from_periodic(const ContinuedFraction& cf);

enum class IntegerCombination { SumInteger, DiffInteger, Neither };
IntegerCombination integer_combination_check(const QuadraticSurd& a, const QuadraticSurd& b);

const char* to_string(IntegerCombination c) noexcept;

}  // namespace psilab
