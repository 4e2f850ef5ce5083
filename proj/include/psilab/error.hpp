#pragma once

#include <stdexcept>
#include <string>

namespace psilab {

enum class ErrorKind {
  DepthExhausted,     // finite backing shorter than requested
  DepthCapExceeded,   // global lazy-access cap reached
  Undecided,          // enclosures still overlap at the comparison budget
  OutOfHorizon,
  PrecisionInsufficient,
  Dependent,
  WindowTooShort,
  InvalidArgument,
  ParseError,
  Violation,          // a proven statement failed on concrete data
};

const char* to_string(ErrorKind kind) noexcept;

// Every error carries the module and operation it originated from so that
// the CLI can report it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string operation, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string operation_;
};

}  // namespace psilab
