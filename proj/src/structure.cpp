#include "psilab/structure.hpp"

#include "psilab/error.hpp"
#include "psilab/psi.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace psilab {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::IndependentLikely: return "INDEPENDENT_LIKELY";
    case Verdict::Dependent: return "DEPENDENT";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

const char* to_string(LemmaOutcome o) noexcept {
  switch (o) {
    case LemmaOutcome::NotApplicable: return "NOT_APPLICABLE";
    case LemmaOutcome::Confirmed: return "CONFIRMED";
    case LemmaOutcome::Violation: return "VIOLATION";
  }
  return "NOT_APPLICABLE";
}

const char* to_string(PatternStatus s) noexcept {
  switch (s) {
    case PatternStatus::NotApplicable: return "NOT_APPLICABLE";
    case PatternStatus::Holds: return "HOLDS";
    case PatternStatus::Fails: return "FAILS";
  }
  return "NOT_APPLICABLE";
}

bool CoincidenceLog::stars_share_denominators() const {
  return std::all_of(equal_stars.begin(), equal_stars.end(),
                     [](const StarCoincidence& s) { return s.denominators_match; });
}

CoincidenceLog scan_coincidences(const ContinuedFraction& a, const ContinuedFraction& b, std::size_t depth) {
  if (depth == 0) throw Error(ErrorKind::InvalidArgument, "structure_checks", "scan_coincidences", "depth must be positive");
  const auto qa = convergents(a, depth + 1);
  const auto qb = convergents(b, depth + 1);

  CoincidenceLog log;
  log.horizon = depth;
  std::size_t latest = 0;
  auto note_time = [&log](const Integer& q) {
    if (q > log.coincidence_time) log.coincidence_time = q;
  };

  for (std::size_t nu = 0; nu < depth; ++nu) {
    for (std::size_t mu = 0; mu < depth; ++mu) {
      if (qa[nu].q == qb[mu].q && qa[nu + 1].q == qb[mu + 1].q) {
        log.shared_pairs.push_back({nu, mu, qa[nu].q, qa[nu + 1].q});
        latest = std::max({latest, nu + 1, mu + 1});
        note_time(qa[nu + 1].q);
      }
    }
  }

  // Star values compared as reduced rationals; the denominator identity is
  // then re-checked separately.
  std::vector<Rational> stars_b(depth + 1);
  for (std::size_t mu = 1; mu <= depth; ++mu) stars_b[mu] = make_rational(qb[mu - 1].q, qb[mu].q);
  for (std::size_t nu = 1; nu <= depth; ++nu) {
    const Rational star_a = make_rational(qa[nu - 1].q, qa[nu].q);
    for (std::size_t mu = 1; mu <= depth; ++mu) {
      if (star_a != stars_b[mu]) continue;
      const bool match = qa[nu - 1].q == qb[mu - 1].q && qa[nu].q == qb[mu].q;
      log.equal_stars.push_back({nu, mu, star_a, match, qa[nu].q});
      latest = std::max({latest, nu, mu});
      note_time(qa[nu].q);
    }
  }

  const auto exact_a = a.exact_value();
  const auto exact_b = b.exact_value();
  if (exact_a && exact_b) log.combination = integer_combination_check(*exact_a, *exact_b);

  if (log.combination && *log.combination != IntegerCombination::Neither) {
    log.verdict = Verdict::Dependent;
  } else if (latest > depth / 2) {
    log.verdict = Verdict::Undecided;
  } else {
    log.verdict = Verdict::IndependentLikely;
  }
  return log;
}

namespace {

// "<", "=" or ">" for x versus y. Equality is only ever reported when the
// exact backends prove it; otherwise overlap surfaces as Undecided.
// Refines x and y in place, so their enclosures end up separated.
std::string relation(ErrorTerm& x, ErrorTerm& y, std::size_t max_depth) {
  if (auto eq = exactly_equal(x, y); eq && *eq) return "=";
  return compare_errors(x, y, max_depth) == Ordering::Less ? "<" : ">";
}

std::string relation(ErrorTerm&& x, ErrorTerm&& y, std::size_t max_depth) { return relation(x, y, max_depth); }

std::string relation(const Integer& x, const Integer& y) {
  const int c = cmp(x, y);
  return c < 0 ? "<" : (c == 0 ? "=" : ">");
}

}  // namespace

LemmaCheck check_lemma_mm(const ContinuedFraction& a, const ContinuedFraction& b, std::size_t nu, std::size_t mu,
                          std::size_t d, std::size_t max_compare_depth) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "structure_checks", "check_lemma_mm", "d must be >= 1");
  LemmaCheck out;
  out.nu = nu;
  out.mu = mu;
  out.d = d;
  const auto qa = convergents(a, nu + 3);
  const auto qb = convergents(b, mu + d + 1);
  out.q_vs_r = relation(qa[nu + 1].q, qb[mu + 1].q);
  if (qa[nu + 2].q != qb[mu + d].q || out.q_vs_r == ">") return out;

  out.xi_vs_eta = relation(ErrorTerm(a, nu), ErrorTerm(b, mu), max_compare_depth);
  if (out.xi_vs_eta == ">") return out;
  out.xi_next_vs_eta = relation(ErrorTerm(a, nu + 1), ErrorTerm(b, mu + d - 1), max_compare_depth);
  if (out.xi_next_vs_eta == ">") return out;

  out.star_a = make_rational(qa[nu + 1].q, qa[nu + 2].q);
  const auto qb2 = convergents(b, mu + 3);
  out.star_b = make_rational(qb2[mu + 1].q, qb2[mu + 2].q);

  const bool holds = out.xi_vs_eta == "=" && out.xi_next_vs_eta == "=" && out.q_vs_r == "=" && d == 2 &&
                     *out.star_a == *out.star_b;
  out.outcome = holds ? LemmaOutcome::Confirmed : LemmaOutcome::Violation;

  std::ostringstream cert;
  cert << "q_{nu+1}=" << qa[nu + 1].q << " r_{mu+1}=" << qb[mu + 1].q << " q_{nu+2}=" << qa[nu + 2].q
       << " r_{mu+d}=" << qb[mu + d].q;
  const ErrorTerm xs[] = {ErrorTerm(a, nu), ErrorTerm(b, mu), ErrorTerm(a, nu + 1), ErrorTerm(b, mu + d - 1)};
  const char* names[] = {"xi_nu", "eta_mu", "xi_{nu+1}", "eta_{mu+d-1}"};
  for (int i = 0; i < 4; ++i) {
    const auto& e = xs[i].enclosure();
    cert << ' ' << names[i] << "=(" << to_fraction_string(e.lo) << ',' << to_fraction_string(e.hi) << ')';
    if (auto exact = xs[i].exact()) cert << '[' << exact->to_string() << ']';
  }
  cert << " star_a=" << to_fraction_string(*out.star_a) << " star_b=" << to_fraction_string(*out.star_b);
  out.certificate = cert.str();
  return out;
}

LemmaScanSummary scan_lemma_mm(const ContinuedFraction& a, const ContinuedFraction& b, std::size_t max_index,
                               std::size_t max_d, std::size_t max_compare_depth) {
  LemmaScanSummary summary;
  for (std::size_t nu = 0; nu <= max_index; ++nu) {
    for (std::size_t mu = 0; mu <= max_index; ++mu) {
      for (std::size_t d = 1; d <= max_d; ++d) {
        try {
          auto check = check_lemma_mm(a, b, nu, mu, d, max_compare_depth);
          switch (check.outcome) {
            case LemmaOutcome::NotApplicable: ++summary.not_applicable; break;
            case LemmaOutcome::Confirmed: ++summary.confirmed; summary.notable.push_back(std::move(check)); break;
            case LemmaOutcome::Violation: ++summary.violations; summary.notable.push_back(std::move(check)); break;
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Undecided) throw;
          ++summary.undecided;
        }
      }
    }
  }
  return summary;
}

std::vector<RemarkRecord> check_remark_pattern(const ContinuedFraction& a, const ContinuedFraction& b,
                                               std::size_t depth, const Integer& min_time,
                                               std::size_t max_compare_depth) {
  const auto qa = convergents(a, depth + 1);
  const auto qb = convergents(b, depth + 1);

  struct Shared {
    Integer t;
    std::size_t nu, mu;
  };
  std::vector<Shared> shared;
  // Denominators increase strictly from index 1 on, so a two-pointer walk
  // finds every common value; the later index wins on q_0 = q_1.
  std::size_t i = 0, j = 0;
  while (i <= depth && j <= depth) {
    const int c = cmp(qa[i].q, qb[j].q);
    if (c < 0) {
      ++i;
    } else if (c > 0) {
      ++j;
    } else {
      std::size_t ni = i, nj = j;
      while (ni + 1 <= depth && qa[ni + 1].q == qa[i].q) ++ni;
      while (nj + 1 <= depth && qb[nj + 1].q == qb[j].q) ++nj;
      if (qa[ni].q > min_time && qa[ni].q > 1) shared.push_back({qa[ni].q, ni, nj});
      i = ni + 1;
      j = nj + 1;
    }
  }

  std::vector<RemarkRecord> records;
  if (shared.empty()) return records;
  const Integer t_max = shared.back().t;
  const auto traj_a = build_trajectory(a, t_max, max_compare_depth);
  const auto traj_b = build_trajectory(b, t_max, max_compare_depth);

  auto order_at = [&](const Integer& t, Interval& va, Interval& vb) -> std::string {
    ErrorTerm x = psi_at(traj_a, t);
    ErrorTerm y = psi_at(traj_b, t);
    std::string rel = relation(x, y, max_compare_depth);
    va = x.enclosure();
    vb = y.enclosure();
    return rel;
  };

  for (const auto& s : shared) {
    RemarkRecord r;
    r.shared = s.t;
    r.nu = s.nu;
    r.mu = s.mu;
    const std::string before = order_at(s.t - 1, r.a_before, r.b_before);
    r.earlier_a = s.nu >= 1 ? Integer(qa[s.nu - 1].q - 1) : Integer(0);
    r.earlier_b = s.mu >= 1 ? Integer(qb[s.mu - 1].q - 1) : Integer(0);
    if (r.earlier_a >= 1) r.relation_at_earlier_a = order_at(r.earlier_a, r.a_at_earlier_a, r.b_at_earlier_a);
    if (r.earlier_b >= 1) r.relation_at_earlier_b = order_at(r.earlier_b, r.a_at_earlier_b, r.b_at_earlier_b);
    if (before == "<" && r.earlier_a >= 1) {
      r.status = r.relation_at_earlier_a == ">" ? PatternStatus::Holds : PatternStatus::Fails;
    }
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

std::string interval_text(const Interval& i) {
  return "(" + to_fraction_string(i.lo) + "," + to_fraction_string(i.hi) + ")";
}

}  // namespace

void write_coincidence_log(std::ostream& out, const CoincidenceLog& log) {
  out << "# coincidences horizon=" << log.horizon << " verdict=" << to_string(log.verdict)
      << " combination=" << (log.combination ? to_string(*log.combination) : "UNKNOWN")
      << " coincidence_time=" << log.coincidence_time.get_str() << '\n';
  out << "# shared nu mu q q_next | star nu mu value check\n";
  for (const auto& s : log.shared_pairs) {
    out << "shared\t" << s.nu << '\t' << s.mu << '\t' << s.q.get_str() << '\t' << s.q_next.get_str() << '\n';
  }
  for (const auto& s : log.equal_stars) {
    out << "star\t" << s.nu << '\t' << s.mu << '\t' << to_fraction_string(s.star) << '\t'
        << (s.denominators_match ? "denominators=ok" : "denominators=FAILED") << '\n';
  }
}

void write_lemma_summary(std::ostream& out, const LemmaScanSummary& summary) {
  out << "# equal-errors not_applicable=" << summary.not_applicable << " confirmed=" << summary.confirmed
      << " violations=" << summary.violations << " undecided=" << summary.undecided << '\n';
  if (!summary.notable.empty()) out << "# lemma nu mu d outcome xi_vs_eta xi_next_vs_eta q_vs_r certificate\n";
  for (const auto& c : summary.notable) {
    out << "lemma\t" << c.nu << '\t' << c.mu << '\t' << c.d << '\t' << to_string(c.outcome) << '\t'
        << c.xi_vs_eta << '\t' << c.xi_next_vs_eta << '\t' << c.q_vs_r << '\t' << c.certificate << '\n';
  }
}

void write_remark_records(std::ostream& out, const std::vector<RemarkRecord>& records, const Integer& burn_in) {
  out << "# remark records=" << records.size() << " burn_in=" << burn_in.get_str() << '\n';
  if (!records.empty()) {
    out << "# remark window q nu mu status xi_before eta_before t_a relation_a xi_at_t_a eta_at_t_a t_b relation_b\n";
  }
  for (const auto& r : records) {
    out << "remark\t" << (r.shared > burn_in ? "settled" : "transient") << '\t' << r.shared.get_str() << '\t' << r.nu << '\t' << r.mu << '\t' << to_string(r.status) << '\t'
        << interval_text(r.a_before) << '\t' << interval_text(r.b_before) << '\t' << r.earlier_a.get_str() << '\t'
        << (r.relation_at_earlier_a.empty() ? "-" : r.relation_at_earlier_a) << '\t'
        << (r.relation_at_earlier_a.empty() ? "-" : interval_text(r.a_at_earlier_a)) << '\t'
        << (r.relation_at_earlier_a.empty() ? "-" : interval_text(r.b_at_earlier_a)) << '\t' << r.earlier_b.get_str()
        << '\t' << (r.relation_at_earlier_b.empty() ? "-" : r.relation_at_earlier_b) << '\n';
  }
}

}  // namespace psilab
