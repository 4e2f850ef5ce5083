#include "psilab/proof_trace.hpp"

#include "psilab/error.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace psilab {

namespace {

Permutation restrict_to(const Permutation& p, const std::vector<std::size_t>& subset) {
  Permutation out;
  for (std::size_t m : p) {
    if (std::find(subset.begin(), subset.end(), m) != subset.end()) out.push_back(m);
  }
  return out;
}

bool ranks_above(const Permutation& p, std::size_t a, std::size_t b) {
  return std::find(p.begin(), p.end(), a) < std::find(p.begin(), p.end(), b);
}

// First state time in (T_1, limit] at which m sits below s.
std::optional<Integer> first_swap(const TrajectoryReport& report, std::size_t m, std::size_t s, const Integer& limit) {
  for (const auto& ev : report.events) {
    if (ev.t > limit) break;
    if (!ranks_above(ev.after, m, s)) return ev.t;
  }
  return std::nullopt;
}

}  // namespace

bool ProofTrace::restricted_equalities_hold() const {
  return std::all_of(restricted_checks.begin(), restricted_checks.end(),
                     [](const RestrictedCheck& c) { return c.s >= c.j || c.matches_first; });
}

ProofTrace build_proof_trace(const TupleContext& ctx, const TrajectoryReport& report) {
  if (report.k_hat < 2) {
    throw Error(ErrorKind::WindowTooShort, "bound_verifier", "build_proof_trace",
                "only one permutation in (" + report.window_lo.get_str() + ", " + report.window_hi.get_str() + "]");
  }
  ProofTrace trace;
  trace.n = ctx.size();
  trace.times.push_back(report.window_lo);
  trace.perms.push_back(report.initial);
  trace.relabel = report.initial;

  // T_j = min{t > T_1 : sigma(t) differs from sigma_1 .. sigma_{j-1}}.
  std::vector<std::vector<std::size_t>> jumpers_at;
  for (const auto& ev : report.events) {
    if (std::find(trace.perms.begin(), trace.perms.end(), ev.after) != trace.perms.end()) continue;
    trace.times.push_back(ev.t);
    trace.perms.push_back(ev.after);
    jumpers_at.push_back(ev.jumpers);
  }

  // I_j: discontinuous at T_j, continuous at every T_i with 2 <= i < j.
  std::set<std::size_t> earlier;
  for (const auto& jumpers : jumpers_at) {
    std::vector<std::size_t> fresh;
    for (std::size_t m : jumpers) {
      if (!earlier.count(m)) fresh.push_back(m);
    }
    earlier.insert(jumpers.begin(), jumpers.end());
    trace.counts.push_back(fresh.size());
    trace.index_sets.push_back(std::move(fresh));
  }

  std::vector<int> hits(trace.n, 0);
  for (const auto& set : trace.index_sets) {
    for (std::size_t m : set) ++hits[m];
  }
  trace.disjoint = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
  for (std::size_t r = 0; r + 1 < trace.n; ++r) {
    if (hits[trace.relabel[r]] == 0) trace.uncovered.push_back(trace.relabel[r]);
  }

  const std::size_t k = trace.k();
  for (std::size_t jj = 0; jj < trace.index_sets.size(); ++jj) {
    const std::size_t j = jj + 2;
    const auto& set = trace.index_sets[jj];
    const Permutation first = restrict_to(trace.perms[0], set);
    for (std::size_t s = 1; s <= k; ++s) {
      RestrictedCheck check{j, s, restrict_to(trace.perms[s - 1], set), true};
      check.matches_first = check.restricted == first;
      if (s < j && !check.matches_first) {
        // Locate a swapped pair and the time the order first reversed.
        for (std::size_t a = 0; a < set.size(); ++a) {
          for (std::size_t b = 0; b < set.size(); ++b) {
            const std::size_t m = set[a], other = set[b];
            if (m == other || !ranks_above(trace.perms[0], m, other) || ranks_above(trace.perms[s - 1], m, other)) {
              continue;
            }
            trace.witnesses.push_back({j, s, m, other, first_swap(report, m, other, trace.times[s - 1])});
          }
        }
      }
      trace.restricted_checks.push_back(std::move(check));
    }
  }
  return trace;
}

std::vector<NjBound> check_nj_bound(const ProofTrace& trace) {
  std::vector<NjBound> out;
  const std::size_t k = trace.k();
  for (std::size_t jj = 0; jj < trace.counts.size(); ++jj) {
    const std::size_t j = jj + 2;
    const std::size_t bound = k - j + 2;
    out.push_back({j, trace.counts[jj], bound, trace.counts[jj] <= bound});
  }
  return out;
}

TheoremBound check_theorem_bound(const ProofTrace& trace) {
  TheoremBound t;
  t.n = trace.n;
  t.k = trace.k();
  t.covered = 1;
  for (std::size_t c : trace.counts) t.covered += c;
  t.bound = t.k * (t.k + 1) / 2;
  const auto n = static_cast<long long>(t.n);
  const auto covered = static_cast<long long>(t.covered);
  const auto bound = static_cast<long long>(t.bound);
  t.cover_margin = covered - n;
  t.chain_margin = bound - covered;
  t.margin = bound - n;
  t.pass = t.cover_margin >= 0 && t.chain_margin >= 0 && t.margin >= 0;
  return t;
}

BoundVerification verify_bound(const std::vector<Member>& members, const TupleOptions& options, std::size_t retries,
                               unsigned threads) {
  BoundVerification result;
  TupleOptions opts = options;
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    if (attempt > 0) opts.t_max *= 2;
    result.attempts = attempt + 1;
    result.t_max = opts.t_max;
    result.trace.reset();
    result.nj.clear();
    result.theorem.reset();
    result.tau_within_k_hat = false;

    try {
      result.context = TupleContext::create(members, opts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WindowTooShort) throw;
      result.failure = e.what();
      continue;
    }
    result.report = sweep(*result.context, threads);
    result.tau_within_k_hat = result.report->max_tau <= result.report->k_hat;
    if (result.report->k_hat < 2) {
      result.failure = "window-too-short: one permutation in window";
      continue;
    }
    result.trace = build_proof_trace(*result.context, *result.report);
    result.nj = check_nj_bound(*result.trace);
    result.theorem = check_theorem_bound(*result.trace);

    if (!result.tau_within_k_hat) {
      result.failure = "max tau exceeds k_hat";
    } else if (!result.trace->disjoint) {
      result.failure = "index sets overlap";
    } else if (!result.trace->uncovered.empty()) {
      result.failure = "members missing from every index set";
    } else if (!result.trace->restricted_equalities_hold()) {
      result.failure = "restricted permutations differ";
    } else if (!std::all_of(result.nj.begin(), result.nj.end(), [](const NjBound& b) { return b.pass; })) {
      result.failure = "n_j exceeds k - j + 2";
    } else if (!result.theorem->pass) {
      result.failure = "theorem bound chain fails";
    } else {
      result.failure.clear();
      result.passed = true;
      return result;
    }
  }
  return result;
}

namespace {

std::string format_set(const std::vector<std::size_t>& s) {
  std::vector<std::size_t> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  return "{" + format_permutation(sorted) + "}";
}

}  // namespace

void write_proof_trace(std::ostream& out, const ProofTrace& trace, const std::vector<std::string>& names) {
  out << "# proof-trace n=" << trace.n << " k=" << trace.k() << " lower-limit=T_1\n";
  out << "relabel";
  for (std::size_t r = 0; r < trace.relabel.size(); ++r) {
    out << '\t' << (r + 1) << '=' << names[trace.relabel[r]];
  }
  out << '\n';
  out << "j\tT_j\tsigma_j\tI_j\tn_j\n";
  for (std::size_t j = 1; j <= trace.k(); ++j) {
    out << j << '\t' << trace.times[j - 1].get_str() << '\t' << format_permutation(trace.perms[j - 1]);
    if (j >= 2) {
      out << '\t' << format_set(trace.index_sets[j - 2]) << '\t' << trace.counts[j - 2];
    } else {
      out << "\t-\t-";
    }
    out << '\n';
  }
  out << "disjoint\t" << (trace.disjoint ? "yes" : "no") << '\n';
  out << "uncovered\t" << format_set(trace.uncovered) << '\n';
  out << "restricted\t" << (trace.restricted_equalities_hold() ? "equal" : "DIFFER") << '\n';
  for (const auto& c : trace.restricted_checks) {
    if (c.s >= c.j) continue;
    out << "restrict\tj=" << c.j << "\ts=" << c.s << '\t' << format_permutation(c.restricted) << '\t'
        << (c.matches_first ? "=" : "!=") << '\n';
  }
  for (const auto& w : trace.witnesses) {
    out << "witness\tj=" << w.j << "\ti=" << w.i << "\tm=" << (w.m + 1) << "\ts=" << (w.s + 1)
        << "\tt0=" << (w.t0 ? w.t0->get_str() : "none") << '\n';
  }
}

void write_bound_checks(std::ostream& out, const std::vector<NjBound>& nj, const TheoremBound& theorem) {
  out << "# bounds\n";
  for (const auto& b : nj) {
    out << "n_j\tj=" << b.j << '\t' << b.n_j << "\t<=\t" << b.bound << '\t' << (b.pass ? "pass" : "FAIL") << '\n';
  }
  out << "theorem\tn=" << theorem.n << "\tk=" << theorem.k << "\t1+sum=" << theorem.covered
      << "\tk(k+1)/2=" << theorem.bound << "\tcover_margin=" << theorem.cover_margin
      << "\tchain_margin=" << theorem.chain_margin << "\tmargin=" << theorem.margin << '\t'
      << (theorem.pass ? "pass" : "FAIL") << '\n';
}

}  // namespace psilab
