#include "psilab/psilab.h"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string spec_path;
  std::optional<std::string> t_max;
  std::optional<std::string> burn_in;
  std::optional<std::string> depth_cap;
  std::optional<std::string> max_compare_depth;
  std::optional<std::string> seed;
  std::optional<std::string> out_dir;
  bool approx = false;
  bool linear_axes = false;
  unsigned threads = 1;
};

struct SpecDeleter {
  void operator()(psilab_spec* s) const { psilab_spec_free(s); }
};
using SpecHandle = std::unique_ptr<psilab_spec, SpecDeleter>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { psilab_string_free(p); }
};

int exit_code(psilab_status status) {
  switch (status) {
    case PSILAB_OK: return kExitOk;
    case PSILAB_ERROR_USAGE: return kExitUsage;
    default: return kExitAnalysis;
  }
}

int fail(psilab_status status) {
  std::cerr << "error: " << psilab_last_error() << "\n";
  return exit_code(status);
}

int load(const Flags& flags, SpecHandle& out) {
  std::ifstream in(flags.spec_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cli_app/parse_spec: cannot open '" << flags.spec_path << "'\n";
    return kExitUsage;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  psilab_spec* raw = nullptr;
  if (auto st = psilab_spec_parse(text.data(), text.size(), &raw); st != PSILAB_OK) return fail(st);
  out.reset(raw);

  const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
      {"t_max", &flags.t_max},   {"burn_in", &flags.burn_in}, {"depth_cap", &flags.depth_cap},
      {"max_compare_depth", &flags.max_compare_depth},        {"seed", &flags.seed},
      {"out_dir", &flags.out_dir},
  };
  for (const auto& [key, value] : overrides) {
    if (!*value) continue;
    if (auto st = psilab_spec_set(out.get(), key, (*value)->c_str()); st != PSILAB_OK) return fail(st);
  }
  return kExitOk;
}

psilab_run_options run_options(const Flags& flags) {
  psilab_run_options o = psilab_default_run_options();
  o.approx = flags.approx ? 1 : 0;
  o.log_axes = flags.linear_axes ? 0 : 1;
  o.threads = flags.threads;
  return o;
}

int run_report(const Flags& flags, const std::string& command) {
  SpecHandle spec;
  if (int rc = load(flags, spec); rc != kExitOk) return rc;
  const auto options = run_options(flags);
  OwnedString report;
  const psilab_status st = psilab_run(spec.get(), command.c_str(), &options, &report.p);
  if (report.p) std::fwrite(report.p, 1, std::char_traits<char>::length(report.p), stdout);
  std::fflush(stdout);
  if (st != PSILAB_OK) return fail(st);
  return kExitOk;
}

int run_plot(const Flags& flags) {
  SpecHandle spec;
  if (int rc = load(flags, spec); rc != kExitOk) return rc;
  OwnedString dir;
  if (auto st = psilab_spec_get(spec.get(), "out_dir", &dir.p); st != PSILAB_OK) return fail(st);
  std::error_code ec;
  std::filesystem::create_directories(dir.p, ec);
  if (ec) {
    std::cerr << "error: cli_app/plot: cannot create '" << dir.p << "': " << ec.message() << "\n";
    return kExitUsage;
  }
  const auto options = run_options(flags);
  const size_t n = psilab_spec_member_count(spec.get());
  for (size_t i = 0; i < n; ++i) {
    OwnedString svg;
    if (auto st = psilab_plot_svg(spec.get(), i, &options, &svg.p); st != PSILAB_OK) return fail(st);
    const auto path = std::filesystem::path(dir.p) / (std::string(psilab_spec_member_name(spec.get(), i)) + ".svg");
    std::ofstream out(path, std::ios::binary);
    out << svg.p;
    if (!out) {
      std::cerr << "error: cli_app/plot: cannot write '" << path.string() << "'\n";
      return kExitUsage;
    }
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Step-function dynamics of the best approximation error psi"};
  app.set_version_flag("--version", std::string(psilab_version()));
  app.require_subcommand(1);

  Flags flags;
  const auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("spec", flags.spec_path, "Tuple specification file")->required();
    sub->add_option("--t-max", flags.t_max, "Upper end of the time window");
    sub->add_option("--burn-in", flags.burn_in, "Start of the observation window");
    sub->add_option("--depth-cap", flags.depth_cap, "Largest coefficient index any expansion may reach");
    sub->add_option("--max-compare-depth", flags.max_compare_depth, "Refinement budget for one comparison");
    sub->add_option("--seed", flags.seed, "Seed recorded with the spec");
    sub->add_option("--out-dir", flags.out_dir, "Directory for plot files");
    sub->add_flag("--approx", flags.approx, "Append decimal approximations");
    sub->add_flag("--linear-axes", flags.linear_axes, "Plot with linear instead of log-log axes");
    sub->add_option("--threads", flags.threads, "Worker threads for sweeps")->check(CLI::Range(1u, 256u));
  };

  const std::pair<const char*, const char*> commands[] = {
      {"convergents", "Coefficients, convergents and star values"},
      {"psi", "Breakpoints of each psi step function"},
      {"trace", "Permutation trajectory with every event"},
      {"kindex", "Permutation census and k-index"},
      {"verify", "Coincidence log, lemma scans and pattern records"},
      {"proof-trace", "Bound proof objects and checks"},
      {"plot", "One SVG per member"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "plot") return run_plot(flags);
  return run_report(flags, command);
}
