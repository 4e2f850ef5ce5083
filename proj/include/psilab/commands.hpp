#pragma once

#include "psilab/spec_file.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace psilab {

struct RunOptions {
  bool approx = false;
  bool log_axes = true;
  unsigned threads = 1;
};

enum class CommandStatus { Ok = 0, AnalysisError = 1 };

struct CommandResult {
  CommandStatus status = CommandStatus::Ok;
  std::string output;
};

// Subcommands producing text reports: convergents, psi, trace, kindex,
// verify, proof-trace. Errors propagate as psilab::Error.
CommandResult run_command(const TupleSpecFile& spec, std::string_view command, const RunOptions& options = {});

// One SVG document per member, in spec order.
std::vector<std::string> render_plots(const TupleSpecFile& spec, const RunOptions& options = {});

bool is_report_command(std::string_view command);

}  // namespace psilab
