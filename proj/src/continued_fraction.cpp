#include "psilab/continued_fraction.hpp"

#include "psilab/error.hpp"

#include <array>
#include <map>
#include <mutex>
#include <utility>

namespace psilab {

namespace {

constexpr std::size_t kMaxSurdPeriodSearch = 1'000'000;

void require_positive(const std::vector<Integer>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) {
      throw Error(ErrorKind::InvalidArgument, "cf_core", "ContinuedFraction",
                  std::string(what) + " entry " + std::to_string(i) + " is " + values[i].get_str() +
                      "; coefficients a_nu (nu >= 1) must be positive");
    }
  }
}

const std::vector<Integer>& empty_list() {
  static const std::vector<Integer> empty;
  return empty;
}

}  // namespace

struct ContinuedFraction::Data {
  Backing backing = Backing::Finite;
  Integer a0;
  std::vector<Integer> coefficients;  // finite: a_1..; periodic: preperiod
  std::vector<Integer> period;
  Rule rule;
  std::size_t declared_depth = 0;
  std::size_t depth_cap = kDefaultDepthCap;

  mutable std::once_flag exact_once;
  mutable std::optional<QuadraticSurd> exact;

  std::shared_ptr<Data> clone() const {
    auto d = std::make_shared<Data>();
    d->backing = backing;
    d->a0 = a0;
    d->coefficients = coefficients;
    d->period = period;
    d->rule = rule;
    d->declared_depth = declared_depth;
    d->depth_cap = depth_cap;
    return d;
  }
};

ContinuedFraction::ContinuedFraction(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

ContinuedFraction ContinuedFraction::finite(Integer a0, std::vector<Integer> coefficients, std::size_t depth_cap) {
  require_positive(coefficients, "coefficient");
  auto d = std::make_shared<Data>();
  d->backing = Backing::Finite;
  d->a0 = std::move(a0);
  d->coefficients = std::move(coefficients);
  d->depth_cap = depth_cap;
  return ContinuedFraction(std::move(d));
}

ContinuedFraction ContinuedFraction::periodic(Integer a0, std::vector<Integer> preperiod, std::vector<Integer> period,
                                              std::size_t depth_cap) {
  if (period.empty()) {
    throw Error(ErrorKind::InvalidArgument, "cf_core", "ContinuedFraction", "period must be nonempty");
  }
  require_positive(preperiod, "preperiod");
  require_positive(period, "period");
  auto d = std::make_shared<Data>();
  d->backing = Backing::Periodic;
  d->a0 = std::move(a0);
  d->coefficients = std::move(preperiod);
  d->period = std::move(period);
  d->depth_cap = depth_cap;
  return ContinuedFraction(std::move(d));
}

ContinuedFraction ContinuedFraction::rule(Integer a0, Rule rule, std::size_t declared_depth, std::size_t depth_cap) {
  if (!rule) throw Error(ErrorKind::InvalidArgument, "cf_core", "ContinuedFraction", "empty coefficient rule");
  auto d = std::make_shared<Data>();
  d->backing = Backing::Rule;
  d->a0 = std::move(a0);
  d->rule = std::move(rule);
  d->declared_depth = declared_depth;
  d->depth_cap = depth_cap;
  return ContinuedFraction(std::move(d));
}

Backing ContinuedFraction::backing() const { return data_->backing; }
const Integer& ContinuedFraction::a0() const { return data_->a0; }
std::size_t ContinuedFraction::depth_cap() const { return data_->depth_cap; }

ContinuedFraction ContinuedFraction::with_depth_cap(std::size_t cap) const {
  auto d = data_->clone();
  d->depth_cap = cap;
  return ContinuedFraction(std::move(d));
}

bool ContinuedFraction::available(std::size_t nu) const {
  if (nu == 0) return true;
  if (nu > data_->depth_cap) return false;
  switch (data_->backing) {
    case Backing::Finite: return nu <= data_->coefficients.size();
    case Backing::Periodic: return true;
    case Backing::Rule: return nu <= data_->declared_depth;
  }
  return false;
}

Integer ContinuedFraction::coefficient(std::size_t nu) const {
  if (nu == 0) return data_->a0;
  if (nu > data_->depth_cap) {
    throw Error(ErrorKind::DepthCapExceeded, "cf_core", "coefficient",
                "index " + std::to_string(nu) + " beyond depth cap " + std::to_string(data_->depth_cap));
  }
  const auto& d = *data_;
  switch (d.backing) {
    case Backing::Finite:
      if (nu > d.coefficients.size()) {
        throw Error(ErrorKind::DepthExhausted, "cf_core", "coefficient",
                    "finite expansion has " + std::to_string(d.coefficients.size()) + " coefficients, index " +
                        std::to_string(nu) + " requested");
      }
      return d.coefficients[nu - 1];
    case Backing::Periodic: {
      const std::size_t i = nu - 1;
      if (i < d.coefficients.size()) return d.coefficients[i];
      return d.period[(i - d.coefficients.size()) % d.period.size()];
    }
    case Backing::Rule: {
      if (nu > d.declared_depth) {
        throw Error(ErrorKind::DepthExhausted, "cf_core", "coefficient",
                    "rule declares " + std::to_string(d.declared_depth) + " coefficients, index " +
                        std::to_string(nu) + " requested");
      }
      Integer a = d.rule(nu);
      if (a < 1) {
        throw Error(ErrorKind::InvalidArgument, "cf_core", "coefficient",
                    "rule produced a_" + std::to_string(nu) + " = " + a.get_str());
      }
      return a;
    }
  }
  return 0;
}

const std::vector<Integer>& ContinuedFraction::preperiod() const {
  return data_->backing == Backing::Periodic ? data_->coefficients : empty_list();
}

const std::vector<Integer>& ContinuedFraction::period() const {
  return data_->backing == Backing::Periodic ? data_->period : empty_list();
}

const std::vector<Integer>& ContinuedFraction::finite_coefficients() const {
  return data_->backing == Backing::Finite ? data_->coefficients : empty_list();
}

std::optional<QuadraticSurd> ContinuedFraction::exact_value() const {
  if (data_->backing != Backing::Periodic) return std::nullopt;
  std::call_once(data_->exact_once, [this] {
    try {
      data_->exact = surd_from_periodic(*this);
    } catch (const Error&) {
      // Radicand beyond the factoring bound: no exact backend.
      data_->exact.reset();
    }
  });
  return data_->exact;
}

bool ContinuedFraction::same_description(const ContinuedFraction& other) const {
  if (data_ == other.data_) return true;
  const auto& a = *data_;
  const auto& b = *other.data_;
  if (a.backing != b.backing || a.a0 != b.a0) return false;
  if (a.backing == Backing::Rule) return false;
  return a.coefficients == b.coefficients && a.period == b.period;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t count) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "cf_core", "convergents", "count must be positive");
  std::vector<Convergent> out;
  out.reserve(count);
  Integer p_prev = 1, q_prev = 0;
  Integer p = cf.a0(), q = 1;
  out.push_back({0, p, q});
  for (std::size_t nu = 1; nu < count; ++nu) {
    const Integer a = cf.coefficient(nu);
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::exchange(p, std::move(p_next));
    q_prev = std::exchange(q, std::move(q_next));
    out.push_back({nu, p, q});
  }
  return out;
}

std::vector<Convergent> convergents_through(const ContinuedFraction& cf, const Integer& bound) {
  std::vector<Convergent> out;
  Integer p_prev = 1, q_prev = 0;
  Integer p = cf.a0(), q = 1;
  out.push_back({0, p, q});
  for (std::size_t nu = 1; q <= bound; ++nu) {
    const Integer a = cf.coefficient(nu);
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::exchange(p, std::move(p_next));
    q_prev = std::exchange(q, std::move(q_next));
    out.push_back({nu, p, q});
  }
  return out;
}

Rational star_value(const ContinuedFraction& cf, std::size_t nu) {
  if (nu == 0) throw Error(ErrorKind::InvalidArgument, "cf_core", "star_value", "index must be at least 1");
  const auto c = convergents(cf, nu + 1);
  return make_rational(c[nu - 1].q, c[nu].q);
}

ContinuedFraction tail(const ContinuedFraction& cf, std::size_t nu) {
  if (nu == 0) return cf;
  Integer head = cf.coefficient(nu);
  switch (cf.backing()) {
    case Backing::Finite: {
      const auto& c = cf.finite_coefficients();
      return ContinuedFraction::finite(std::move(head), {c.begin() + static_cast<std::ptrdiff_t>(nu), c.end()},
                                       cf.depth_cap());
    }
    case Backing::Periodic: {
      const auto& pre = cf.preperiod();
      const auto& per = cf.period();
      if (nu < pre.size()) {
        return ContinuedFraction::periodic(std::move(head), {pre.begin() + static_cast<std::ptrdiff_t>(nu), pre.end()},
                                           per, cf.depth_cap());
      }
      const std::size_t shift = (nu - pre.size()) % per.size();
      std::vector<Integer> rotated(per.begin() + static_cast<std::ptrdiff_t>(shift), per.end());
      rotated.insert(rotated.end(), per.begin(), per.begin() + static_cast<std::ptrdiff_t>(shift));
      return ContinuedFraction::periodic(std::move(head), {}, std::move(rotated), cf.depth_cap());
    }
    case Backing::Rule: {
      std::size_t declared = 0;
      while (cf.available(nu + declared + 1)) ++declared;
      return ContinuedFraction::rule(
          std::move(head), [cf, nu](std::size_t i) { return cf.coefficient(i + nu); }, declared, cf.depth_cap());
    }
  }
  return cf;
}

ContinuedFraction surd_to_cf(const QuadraticSurd& s, std::size_t depth_cap) {
  // Write s = (P + sqrt(N)) / Q with Q | N - P^2, then run the classical
  // complete-quotient recurrence until a (P, Q) state repeats.
  const Rational& r = s.rational_part();
  const Rational& c = s.root_coefficient();
  const Integer A = r.get_num() * c.get_den();
  const Integer B = c.get_num() * r.get_den();
  const Integer C = r.get_den() * c.get_den();
  Integer N = B * B * s.radicand();
  Integer P = B > 0 ? A : Integer(-A);
  Integer Q = B > 0 ? C : Integer(-C);
  const Integer rem = N - P * P;
  if (!mpz_divisible_p(rem.get_mpz_t(), Q.get_mpz_t())) {
    const Integer absq = abs(Q);
    P *= absq;
    N *= Q * Q;
    Q *= absq;
  }
  const Integer root_floor = isqrt(N);

  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  std::vector<Integer> quotients;
  for (std::size_t k = 0; k < kMaxSurdPeriodSearch; ++k) {
    auto [it, inserted] = seen.emplace(std::make_pair(P, Q), k);
    if (!inserted) {
      const std::size_t start = it->second;
      Integer a0 = quotients.front();
      if (start >= 1) {
        std::vector<Integer> pre(quotients.begin() + 1, quotients.begin() + static_cast<std::ptrdiff_t>(start));
        std::vector<Integer> per(quotients.begin() + static_cast<std::ptrdiff_t>(start), quotients.end());
        return ContinuedFraction::periodic(std::move(a0), std::move(pre), std::move(per), depth_cap);
      }
      // Purely periodic from a0: the a_nu (nu >= 1) stream is the rotation.
      std::vector<Integer> per(quotients.begin() + 1, quotients.end());
      per.push_back(quotients.front());
      return ContinuedFraction::periodic(std::move(a0), {}, std::move(per), depth_cap);
    }
    Integer a = Q > 0 ? floor_div(P + root_floor, Q) : floor_div(P + root_floor + 1, Q);
    const Integer next_p = a * Q - P;
    const Integer next_q = (N - next_p * next_p) / Q;
    quotients.push_back(std::move(a));
    P = next_p;
    Q = next_q;
  }
  throw Error(ErrorKind::InvalidArgument, "cf_core", "surd_to_cf",
              "period of " + s.to_string() + " exceeds " + std::to_string(kMaxSurdPeriodSearch));
}

QuadraticSurd surd_from_periodic(const ContinuedFraction& cf) {
  if (cf.backing() != Backing::Periodic) {
    throw Error(ErrorKind::InvalidArgument, "cf_core", "surd_from_periodic", "expansion is not periodic");
  }
  // Product of [[a, 1], [1, 0]] matrices.
  auto fold = [](Integer m00, Integer m01, Integer m10, Integer m11, const std::vector<Integer>& coeffs) {
    for (const auto& a : coeffs) {
      Integer n00 = m00 * a + m01;
      Integer n10 = m10 * a + m11;
      m01 = std::move(m00);
      m11 = std::move(m10);
      m00 = std::move(n00);
      m10 = std::move(n10);
    }
    return std::array<Integer, 4>{m00, m01, m10, m11};
  };
  // The purely periodic tail x satisfies m10 x^2 + (m11 - m00) x - m01 = 0, x > 1.
  const auto m = fold(1, 0, 0, 1, cf.period());
  const Integer disc = (m[0] - m[3]) * (m[0] - m[3]) + 4 * m[1] * m[2];
  const QuadraticSurd x(make_rational(m[0] - m[3], 2 * m[2]), make_rational(1, 2 * m[2]), disc);
  const auto h = fold(cf.a0(), 1, 1, 0, cf.preperiod());
  return x.mobius(h[0], h[1], h[2], h[3]);
}

IntegerCombination integer_combination_check(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.radicand() != b.radicand()) return IntegerCombination::Neither;
  if (a.root_coefficient() + b.root_coefficient() == 0) {
    const Rational sum = a.rational_part() + b.rational_part();
    if (sum.get_den() == 1) return IntegerCombination::SumInteger;
  }
  if (a.root_coefficient() == b.root_coefficient()) {
    const Rational diff = a.rational_part() - b.rational_part();
    if (diff.get_den() == 1) return IntegerCombination::DiffInteger;
  }
  return IntegerCombination::Neither;
}

const char* to_string(IntegerCombination c) noexcept {
  switch (c) {
    case IntegerCombination::SumInteger: return "SUM_INTEGER";
    case IntegerCombination::DiffInteger: return "DIFF_INTEGER";
    case IntegerCombination::Neither: return "NEITHER";
  }
  return "NEITHER";
}

}  // namespace psilab
