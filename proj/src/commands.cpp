#include "psilab/commands.hpp"

#include "psilab/error.hpp"
#include "psilab/proof_trace.hpp"
#include "psilab/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace psilab {

namespace {

constexpr int kApproxDigits = 12;
constexpr std::size_t kLemmaScanIndex = 25;
constexpr std::size_t kLemmaScanD = 4;

TupleOptions tuple_options(const SpecSettings& s) {
  TupleOptions o;
  o.burn_in = s.burn_in;
  o.t_max = s.t_max;
  o.max_compare_depth = s.max_compare_depth;
  return o;
}

void require_members(const TupleSpecFile& spec, std::size_t at_least, const char* command) {
  if (spec.numbers.size() < at_least) {
    throw Error(ErrorKind::InvalidArgument, "cli_app", command,
                "needs at least " + std::to_string(at_least) + " numbers in the spec");
  }
}

CommandResult convergents_report(const TupleSpecFile& spec, const RunOptions& opt) {
  require_members(spec, 1, "convergents");
  std::ostringstream out;
  for (const auto& m : build_members(spec)) {
    out << "# member " << m.name << '\n';
    out << "nu\ta\tp\tq\tstar\n";
    for (const auto& c : convergents_through(m.cf, spec.settings.t_max)) {
      out << c.index << '\t' << m.cf.coefficient(c.index).get_str() << '\t' << c.p.get_str() << '\t'
          << c.q.get_str() << '\t' << (c.index == 0 ? std::string("-") : to_fraction_string(star_value(m.cf, c.index)));
      if (opt.approx) out << '\t' << to_decimal_string(make_rational(c.p, c.q), kApproxDigits);
      out << '\n';
    }
  }
  return {CommandStatus::Ok, out.str()};
}

CommandResult psi_report(const TupleSpecFile& spec, const RunOptions& opt) {
  require_members(spec, 1, "psi");
  std::ostringstream out;
  for (const auto& m : build_members(spec)) {
    out << "# member " << m.name << '\n';
    write_trajectory(out, build_trajectory(m.cf, spec.settings.t_max, spec.settings.max_compare_depth), opt.approx ? kApproxDigits : 0);
  }
  return {CommandStatus::Ok, out.str()};
}

CommandResult sweep_report(const TupleSpecFile& spec, const RunOptions& opt, bool with_events) {
  require_members(spec, 2, with_events ? "trace" : "kindex");
  const auto ctx = TupleContext::create(build_members(spec), tuple_options(spec.settings));
  std::ostringstream out;
  write_report(out, sweep(ctx, opt.threads), with_events);
  if (!with_events) out << "# k_hat counts permutations seen in the window; it is not a certified k-index\n";
  return {CommandStatus::Ok, out.str()};
}

std::size_t screening_depth(const std::vector<Member>& members, const SpecSettings& s) {
  std::size_t steps = 0;
  for (const auto& m : members) steps = std::max(steps, convergents_through(m.cf, s.t_max).size());
  return std::min<std::size_t>(std::max<std::size_t>(40, 2 * steps + 2), s.depth_cap);
}

CommandResult verify_report(const TupleSpecFile& spec, const RunOptions&) {
  require_members(spec, 2, "verify");
  const auto members = build_members(spec);
  const auto& s = spec.settings;
  const std::size_t depth = screening_depth(members, s);
  const std::size_t lemma_index = std::min(kLemmaScanIndex, depth - kLemmaScanD - 2);

  CommandStatus status = CommandStatus::Ok;
  std::ostringstream out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const auto& a = members[i];
      const auto& b = members[j];
      out << "## pair " << a.name << ' ' << b.name << '\n';
      const auto log = scan_coincidences(a.cf, b.cf, depth);
      write_coincidence_log(out, log);
      if (log.verdict == Verdict::Dependent || !log.stars_share_denominators()) status = CommandStatus::AnalysisError;
      if (log.verdict == Verdict::Dependent) continue;

      const Integer burn_in = s.burn_in ? *s.burn_in : std::max(log.coincidence_time, Integer(kMinimumBurnIn));
      for (const auto& [x, y] : std::array{std::pair{&a, &b}, std::pair{&b, &a}}) {
        out << "# order " << x->name << ' ' << y->name << '\n';
        const auto summary = scan_lemma_mm(x->cf, y->cf, lemma_index, kLemmaScanD, s.max_compare_depth);
        write_lemma_summary(out, summary);
        if (summary.violations > 0) status = CommandStatus::AnalysisError;
        const auto records = check_remark_pattern(x->cf, y->cf, depth, 1, s.max_compare_depth);
        write_remark_records(out, records, burn_in);
        for (const auto& r : records) {
          if (r.shared > burn_in && r.status == PatternStatus::Fails) status = CommandStatus::AnalysisError;
        }
      }
    }
  }
  return {status, out.str()};
}

CommandResult proof_trace_report(const TupleSpecFile& spec, const RunOptions& opt) {
  require_members(spec, 2, "proof-trace");
  const auto members = build_members(spec);
  // The command reports on exactly the requested window; horizon doubling is
  // left to callers of verify_bound.
  const auto result = verify_bound(members, tuple_options(spec.settings), 0, opt.threads);
  std::ostringstream out;
  std::vector<std::string> names;
  for (const auto& m : members) names.push_back(m.name);
  out << "# verification attempts=" << result.attempts << " t_max=" << result.t_max.get_str()
      << " status=" << (result.passed ? "pass" : "FAIL") << '\n';
  if (!result.passed) out << "# failure " << result.failure << '\n';
  if (result.report) {
    out << "# window=(" << result.report->window_lo.get_str() << "," << result.report->window_hi.get_str()
        << "] k_hat=" << result.report->k_hat << " max_tau=" << result.report->max_tau
        << " tau_within_k_hat=" << (result.tau_within_k_hat ? "pass" : "FAIL") << '\n';
  }
  if (result.trace) {
    write_proof_trace(out, *result.trace, names);
    write_bound_checks(out, result.nj, *result.theorem);
  }
  if (!result.trace) {
    throw Error(ErrorKind::WindowTooShort, "bound_verifier", "build_proof_trace",
                "no second permutation up to t_max = " + result.t_max.get_str() + " (" + result.failure + ")");
  }
  return {result.passed ? CommandStatus::Ok : CommandStatus::AnalysisError, out.str()};
}

}  // namespace

bool is_report_command(std::string_view c) {
  return c == "convergents" || c == "psi" || c == "trace" || c == "kindex" || c == "verify" || c == "proof-trace";
}

CommandResult run_command(const TupleSpecFile& spec, std::string_view command, const RunOptions& options) {
  if (command == "convergents") return convergents_report(spec, options);
  if (command == "psi") return psi_report(spec, options);
  if (command == "trace") return sweep_report(spec, options, true);
  if (command == "kindex") return sweep_report(spec, options, false);
  if (command == "verify") return verify_report(spec, options);
  if (command == "proof-trace") return proof_trace_report(spec, options);
  throw Error(ErrorKind::InvalidArgument, "cli_app", "run_command", "unknown command '" + std::string(command) + "'");
}

std::vector<std::string> render_plots(const TupleSpecFile& spec, const RunOptions& options) {
  require_members(spec, 1, "plot");
  const auto members = build_members(spec);
  std::vector<std::string> names;
  std::vector<StepTrajectory> trajs;
  for (const auto& m : members) {
    names.push_back(m.name);
    trajs.push_back(build_trajectory(m.cf, spec.settings.t_max, spec.settings.max_compare_depth));
  }
  PlotOptions plot;
  plot.log_axes = options.log_axes;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < members.size(); ++i) out.push_back(render_psi_svg(names, trajs, i, spec.settings.t_max, plot));
  return out;
}

}  // namespace psilab
