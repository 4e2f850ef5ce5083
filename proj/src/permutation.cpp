#include "psilab/permutation.hpp"

#include "psilab/error.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <ostream>
#include <queue>
#include <thread>

namespace psilab {

std::string format_permutation(const Permutation& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i] + 1);
  }
  return s;
}

namespace {

std::size_t available_depth(const ContinuedFraction& cf) {
  std::size_t lo = 0, hi = cf.depth_cap();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (cf.available(mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

std::vector<StepTrajectory> build_all(const std::vector<Member>& members, const Integer& t_max,
                                      std::size_t max_compare_depth) {
  std::vector<StepTrajectory> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(build_trajectory(m.cf, t_max, max_compare_depth));
  return out;
}

}  // namespace

TupleContext TupleContext::create(std::vector<Member> members, const TupleOptions& options) {
  if (members.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "perm_dynamics", "TupleContext", "a tuple needs at least 2 members");
  }
  if (options.t_max < 2) {
    throw Error(ErrorKind::InvalidArgument, "perm_dynamics", "TupleContext", "t_max must be >= 2");
  }
  TupleContext ctx;
  ctx.max_compare_depth_ = options.max_compare_depth;
  ctx.t_max_ = options.t_max;
  ctx.trajectories_ = build_all(members, options.t_max, options.max_compare_depth);

  std::size_t depth = options.screening_depth;
  if (depth == 0) {
    std::size_t steps = 0;
    for (const auto& t : ctx.trajectories_) steps = std::max(steps, t.breakpoints().back().index + 1);
    depth = std::max<std::size_t>(40, 2 * steps + 2);
  }

  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const std::size_t pair_depth =
          std::min({depth, available_depth(members[i].cf), available_depth(members[j].cf)});
      if (pair_depth == 0) {
        throw Error(ErrorKind::DepthExhausted, "perm_dynamics", "TupleContext",
                    "no coefficients to screen " + members[i].name + " against " + members[j].name);
      }
      auto log = scan_coincidences(members[i].cf, members[j].cf, pair_depth);
      if (log.verdict == Verdict::Dependent) {
        throw Error(ErrorKind::Dependent, "perm_dynamics", "TupleContext",
                    members[i].name + " and " + members[j].name + " are dependent (" +
                        to_string(*log.combination) + ")");
      }
      if (!log.stars_share_denominators()) {
        throw Error(ErrorKind::Violation, "structure_checks", "scan_coincidences",
                    "equal star values with mismatched denominators for " + members[i].name + ", " +
                        members[j].name);
      }
      if (log.coincidence_time > ctx.coincidence_horizon_) ctx.coincidence_horizon_ = log.coincidence_time;
      ctx.screening_.push_back({i, j, std::move(log)});
    }
  }

  ctx.burn_in_ = options.burn_in ? *options.burn_in : std::max(ctx.coincidence_horizon_, Integer(kMinimumBurnIn));
  if (ctx.burn_in_ < 1 || ctx.burn_in_ >= ctx.t_max_) {
    throw Error(ErrorKind::WindowTooShort, "perm_dynamics", "TupleContext",
                "burn-in " + ctx.burn_in_.get_str() + " must lie in [1, t_max = " + ctx.t_max_.get_str() + ")");
  }
  ctx.members_ = std::move(members);
  return ctx;
}

TupleContext TupleContext::with_window(const Integer& burn_in, const Integer& t_max) const {
  if (burn_in < 1 || burn_in >= t_max) {
    throw Error(ErrorKind::WindowTooShort, "perm_dynamics", "TupleContext",
                "window (" + burn_in.get_str() + ", " + t_max.get_str() + "] is empty");
  }
  TupleContext ctx = *this;
  ctx.burn_in_ = burn_in;
  if (t_max > t_max_) ctx.trajectories_ = build_all(members_, t_max, max_compare_depth_);
  ctx.t_max_ = t_max;
  return ctx;
}

Permutation sigma_at(const TupleContext& ctx, const Integer& t) {
  const std::size_t n = ctx.size();
  std::vector<ErrorTerm> terms;
  terms.reserve(n);
  for (const auto& traj : ctx.trajectories()) terms.push_back(psi_at(traj, t));

  // Insertion sort on certified comparisons, largest psi first.
  Permutation order;
  order.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    auto pos = order.end();
    while (pos != order.begin()) {
      const std::size_t other = *(pos - 1);
      Ordering o;
      try {
        o = compare_errors(terms[other], terms[m], ctx.max_compare_depth());
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Undecided) throw;
        throw Error(ErrorKind::Undecided, "perm_dynamics", "sigma_at",
                    "cannot order " + ctx.members()[other].name + " and " + ctx.members()[m].name + " at t = " +
                        t.get_str() + " (" + e.what() + ")");
      }
      if (o == Ordering::Greater) break;
      --pos;
    }
    order.insert(pos, m);
  }
  return order;
}

std::vector<Integer> merged_event_times(const TupleContext& ctx, const Integer& lo, const Integer& hi) {
  using Cursor = std::pair<std::size_t, std::size_t>;  // (member, breakpoint position)
  const auto& trajs = ctx.trajectories();
  auto later = [&trajs](const Cursor& a, const Cursor& b) {
    return trajs[a.first].breakpoints()[a.second].q > trajs[b.first].breakpoints()[b.second].q;
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later);
  for (std::size_t m = 0; m < trajs.size(); ++m) {
    const auto& bps = trajs[m].breakpoints();
    auto it = std::upper_bound(bps.begin(), bps.end(), lo,
                               [](const Integer& v, const Breakpoint& b) { return v < b.q; });
    if (it != bps.end() && it->q <= hi) heap.emplace(m, static_cast<std::size_t>(it - bps.begin()));
  }
  std::vector<Integer> times;
  while (!heap.empty()) {
    auto [m, pos] = heap.top();
    heap.pop();
    const auto& bps = trajs[m].breakpoints();
    if (times.empty() || times.back() != bps[pos].q) times.push_back(bps[pos].q);
    if (pos + 1 < bps.size() && bps[pos + 1].q <= hi) heap.emplace(m, pos + 1);
  }
  return times;
}

std::size_t tau_at(const TupleContext& ctx, const Integer& t) {
  return static_cast<std::size_t>(std::count_if(ctx.trajectories().begin(), ctx.trajectories().end(),
                                                [&t](const StepTrajectory& s) { return s.is_breakpoint(t); }));
}

TrajectoryReport sweep(const TupleContext& ctx, unsigned threads) {
  return sweep(ctx, ctx.burn_in(), ctx.t_max(), threads);
}

TrajectoryReport sweep(const TupleContext& ctx, const Integer& lo, const Integer& hi, unsigned threads) {
  if (lo < 1 || lo > hi || hi > ctx.t_max()) {
    throw Error(ErrorKind::InvalidArgument, "perm_dynamics", "sweep",
                "window (" + lo.get_str() + ", " + hi.get_str() + "] outside [1, " + ctx.t_max().get_str() + "]");
  }
  TrajectoryReport report;
  report.window_lo = lo;
  report.window_hi = hi;
  for (const auto& m : ctx.members()) report.names.push_back(m.name);

  const auto times = merged_event_times(ctx, lo, hi);
  report.events.resize(times.size());
  std::vector<std::exception_ptr> failures(times.size());

  auto evaluate = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t e = begin; e < times.size(); e += stride) {
      try {
        auto& ev = report.events[e];
        ev.t = times[e];
        ev.before = sigma_at(ctx, times[e] - 1);
        ev.after = sigma_at(ctx, times[e]);
        for (std::size_t m = 0; m < ctx.size(); ++m) {
          if (ctx.trajectories()[m].is_breakpoint(times[e])) ev.jumpers.push_back(m);
        }
      } catch (...) {
        failures[e] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || times.size() < 2) {
    evaluate(0, 1);
  } else {
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(threads, times.size());
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(evaluate, w, workers);
    for (auto& th : pool) th.join();
  }
  // First failure in time order, so the reported error does not depend on
  // scheduling.
  for (std::size_t e = 0; e < failures.size(); ++e) {
    if (!failures[e]) continue;
    try {
      std::rethrow_exception(failures[e]);
    } catch (const Error& err) {
      throw Error(err.kind(), "perm_dynamics", "sweep", "at event t = " + times[e].get_str() + ": " + err.what());
    }
  }

  report.initial = sigma_at(ctx, lo);
  const std::size_t n = ctx.size();
  report.sign_changes.assign(n, std::vector<std::size_t>(n, 0));

  std::map<Permutation, std::size_t> seen;
  auto visit = [&](const Permutation& p, const Integer& start) {
    auto [it, inserted] = seen.emplace(p, report.census.size());
    if (inserted) report.census.push_back({p, start, start});
  };
  visit(report.initial, lo);

  Permutation state = report.initial;
  Integer run_start = lo;
  auto close_run = [&](const Integer& end) { report.census[seen.at(state)].last = end; };

  std::vector<std::size_t> pos_old(n), pos_new(n);
  for (const auto& ev : report.events) {
    report.max_tau = std::max(report.max_tau, ev.jumpers.size());
    if (ev.after == state) continue;
    close_run(ev.t - 1);
    for (std::size_t r = 0; r < n; ++r) {
      pos_old[state[r]] = r;
      pos_new[ev.after[r]] = r;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((pos_old[i] < pos_old[j]) != (pos_new[i] < pos_new[j])) {
          ++report.sign_changes[i][j];
          ++report.sign_changes[j][i];
        }
      }
    }
    state = ev.after;
    run_start = ev.t;
    visit(state, run_start);
  }
  close_run(hi);
  report.k_hat = report.census.size();
  return report;
}

std::size_t sign_change_count(const TupleContext& ctx, std::size_t i, std::size_t j) {
  if (i == j || i >= ctx.size() || j >= ctx.size()) {
    throw Error(ErrorKind::InvalidArgument, "perm_dynamics", "sign_change_count", "need two distinct member indices");
  }
  const auto& ti = ctx.trajectories()[i];
  const auto& tj = ctx.trajectories()[j];
  auto above = [&](const Integer& t) {
    ErrorTerm x = psi_at(ti, t);
    ErrorTerm y = psi_at(tj, t);
    try {
      return compare_errors(x, y, ctx.max_compare_depth()) == Ordering::Greater;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Undecided) throw;
      throw Error(ErrorKind::Undecided, "perm_dynamics", "sign_change_count",
                  "cannot order " + ctx.members()[i].name + " and " + ctx.members()[j].name + " at t = " +
                      t.get_str());
    }
  };

  std::vector<Integer> times;
  for (const auto* traj : {&ti, &tj}) {
    for (const auto& b : traj->breakpoints()) {
      if (b.q > ctx.burn_in() && b.q <= ctx.t_max()) times.push_back(b.q);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::size_t flips = 0;
  bool state = above(ctx.burn_in());
  for (const auto& t : times) {
    const bool now = above(t);
    if (now != state) ++flips;
    state = now;
  }
  return flips;
}

void write_report(std::ostream& out, const TrajectoryReport& report, bool with_events) {
  out << "# trace window=(" << report.window_lo.get_str() << "," << report.window_hi.get_str()
      << "] n=" << report.names.size() << " members=";
  for (std::size_t i = 0; i < report.names.size(); ++i) out << (i ? "," : "") << report.names[i];
  out << '\n';
  if (with_events) {
    out << "t\tbefore\tafter\tjumpers\n";
    for (const auto& ev : report.events) {
      Permutation jumpers(ev.jumpers.begin(), ev.jumpers.end());
      out << ev.t.get_str() << '\t' << format_permutation(ev.before) << '\t' << format_permutation(ev.after) << '\t'
          << format_permutation(jumpers) << '\n';
    }
  }
  out << "# summary\n";
  out << "initial\t" << format_permutation(report.initial) << '\n';
  out << "k_hat\t" << report.k_hat << '\n';
  out << "max_tau\t" << report.max_tau << '\n';
  for (const auto& c : report.census) {
    out << "perm\t" << format_permutation(c.perm) << "\tfirst=" << c.first.get_str() << "\tlast=" << c.last.get_str()
        << '\n';
  }
  out << "sign_changes\n";
  for (std::size_t i = 0; i < report.sign_changes.size(); ++i) {
    for (std::size_t j = 0; j < report.sign_changes.size(); ++j) {
      if (j) out << '\t';
      if (i == j) out << '-';
      else out << report.sign_changes[i][j];
    }
    out << '\n';
  }
}

}  // namespace psilab
