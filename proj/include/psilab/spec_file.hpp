#pragma once

#include "psilab/numeric.hpp"
#include "psilab/permutation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psilab {

enum class NumberKind { Periodic, Finite, Surd };

const char* to_string(NumberKind k) noexcept;

// One `[number]` block. For periodic and finite kinds the first list element
// is a0: `preperiod = [1]`, `period = [2]` describes sqrt(2).
struct NumberEntry {
  std::string name;
  NumberKind kind = NumberKind::Periodic;
  std::vector<Integer> preperiod;
  std::vector<Integer> period;
  std::vector<Integer> coefficients;
  Rational rational;
  Rational root;
  Integer radicand;

  friend bool operator==(const NumberEntry&, const NumberEntry&) = default;
};

struct SpecSettings {
  Integer t_max = 10000;
  std::optional<Integer> burn_in;
  std::size_t depth_cap = kDefaultDepthCap;
  std::size_t max_compare_depth = kDefaultMaxCompareDepth;
  std::string out_dir = ".";
  std::uint64_t seed = 0;

  friend bool operator==(const SpecSettings&, const SpecSettings&) = default;
};

struct TupleSpecFile {
  SpecSettings settings;
  std::vector<NumberEntry> numbers;

  friend bool operator==(const TupleSpecFile&, const TupleSpecFile&) = default;
};

// Throws ErrorKind::ParseError with "line L, column C" for syntax problems
// and with the entity name for semantic ones.
TupleSpecFile parse_spec(std::string_view text);
std::string serialize_spec(const TupleSpecFile& spec);

// Validates settings on their own (used after command-line overrides).
void validate_settings(const SpecSettings& settings);

ContinuedFraction to_continued_fraction(const NumberEntry& entry, std::size_t depth_cap);
std::vector<Member> build_members(const TupleSpecFile& spec);

}  // namespace psilab
