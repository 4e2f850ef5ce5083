#include "psilab/spec_file.hpp"

#include "psilab/error.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace psilab {

const char* to_string(NumberKind k) noexcept {
  switch (k) {
    case NumberKind::Periodic: return "periodic";
    case NumberKind::Finite: return "finite";
    case NumberKind::Surd: return "surd";
  }
  return "periodic";
}

namespace {

Error syntax_error(std::size_t line, std::size_t column, const std::string& message) {
  return Error(ErrorKind::ParseError, "cli_app", "parse_spec",
               "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message);
}

Error semantic_error(const std::string& entity, const std::string& message) {
  return Error(ErrorKind::ParseError, "cli_app", "parse_spec", entity + ": " + message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_token(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

struct Value {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

Integer parse_integer(const Value& v) {
  if (!is_integer_token(v.text)) throw syntax_error(v.line, v.column, "expected an integer, got '" + std::string(v.text) + "'");
  std::string t(v.text);
  if (t.front() == '+') t.erase(0, 1);
  return Integer(t, 10);
}

std::size_t parse_count(const Value& v) {
  const Integer i = parse_integer(v);
  if (i < 0 || !i.fits_ulong_p()) throw syntax_error(v.line, v.column, "expected a nonnegative count");
  return static_cast<std::size_t>(i.get_ui());
}

std::vector<Integer> parse_list(const Value& v) {
  std::string_view s = v.text;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw syntax_error(v.line, v.column, "expected a list '[a, b, ...]'");
  }
  std::vector<Integer> out;
  std::string_view body = s.substr(1, s.size() - 2);
  if (trim(body).empty()) return out;
  auto column_of = [&v](std::string_view part) { return v.column + static_cast<std::size_t>(part.data() - v.text.data()); };
  while (true) {
    const std::size_t comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    if (item.empty()) throw syntax_error(v.line, column_of(body), "empty list element");
    out.push_back(parse_integer({item, v.line, column_of(item)}));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

Rational parse_rational_value(const Value& v) {
  try {
    return parse_rational(std::string(v.text));
  } catch (const Error&) {
    throw syntax_error(v.line, v.column, "expected a rational 'num/den', got '" + std::string(v.text) + "'");
  }
}

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s.front())) || s.front() == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

struct RawNumber {
  std::size_t line = 0;
  std::vector<std::pair<std::string, Value>> entries;
};

NumberEntry finish_number(const RawNumber& raw) {
  NumberEntry e;
  std::set<std::string> keys;
  std::optional<Value> kind;
  for (const auto& [key, value] : raw.entries) {
    if (key == "name") {
      if (!valid_name(value.text)) throw syntax_error(value.line, value.column, "invalid name '" + std::string(value.text) + "'");
      e.name = std::string(value.text);
    } else if (key == "kind") {
      kind = value;
    }
  }
  const std::string entity = e.name.empty() ? "number at line " + std::to_string(raw.line) : "number '" + e.name + "'";
  if (e.name.empty()) throw semantic_error(entity, "missing 'name'");
  if (!kind) throw semantic_error(entity, "missing 'kind'");
  if (kind->text == "periodic") e.kind = NumberKind::Periodic;
  else if (kind->text == "finite") e.kind = NumberKind::Finite;
  else if (kind->text == "surd") e.kind = NumberKind::Surd;
  else throw syntax_error(kind->line, kind->column, "unknown kind '" + std::string(kind->text) + "'");

  std::set<std::string> allowed = {"name", "kind"};
  switch (e.kind) {
    case NumberKind::Periodic: allowed.insert({"preperiod", "period"}); break;
    case NumberKind::Finite: allowed.insert("coefficients"); break;
    case NumberKind::Surd: allowed.insert({"rational", "root", "radicand"}); break;
  }
  for (const auto& [key, value] : raw.entries) {
    if (!allowed.count(key)) {
      throw semantic_error(entity, "key '" + key + "' not valid for kind " + to_string(e.kind));
    }
    if (!keys.insert(key).second) throw semantic_error(entity, "duplicate key '" + key + "'");
    if (key == "preperiod") e.preperiod = parse_list(value);
    else if (key == "period") e.period = parse_list(value);
    else if (key == "coefficients") e.coefficients = parse_list(value);
    else if (key == "rational") e.rational = parse_rational_value(value);
    else if (key == "root") e.root = parse_rational_value(value);
    else if (key == "radicand") e.radicand = parse_integer(value);
  }

  auto require = [&](const char* key) {
    if (!keys.count(key)) throw semantic_error(entity, std::string("missing '") + key + "'");
  };
  auto positive_after_first = [&](const std::vector<Integer>& list, const char* key, std::size_t from) {
    for (std::size_t i = from; i < list.size(); ++i) {
      if (list[i] < 1) {
        throw semantic_error(entity, std::string(key) + " element " + std::to_string(i) + " is " + list[i].get_str() +
                                         "; coefficients after a0 must be positive");
      }
    }
  };
  switch (e.kind) {
    case NumberKind::Periodic:
      require("preperiod");
      require("period");
      if (e.preperiod.empty()) throw semantic_error(entity, "preperiod must hold at least a0");
      if (e.period.empty()) throw semantic_error(entity, "period must be nonempty");
      positive_after_first(e.preperiod, "preperiod", 1);
      positive_after_first(e.period, "period", 0);
      break;
    case NumberKind::Finite:
      require("coefficients");
      if (e.coefficients.empty()) throw semantic_error(entity, "coefficients must hold at least a0");
      positive_after_first(e.coefficients, "coefficients", 1);
      break;
    case NumberKind::Surd: {
      require("rational");
      require("root");
      require("radicand");
      if (e.root == 0) throw semantic_error(entity, "root coefficient must be nonzero");
      if (e.radicand < 2) throw semantic_error(entity, "radicand must be at least 2");
      try {
        const QuadraticSurd s(e.rational, e.root, e.radicand);
        if (s.radicand() != e.radicand) throw semantic_error(entity, "radicand " + e.radicand.get_str() + " is not square-free");
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::ParseError) throw;
        throw semantic_error(entity, err.what());
      }
      break;
    }
  }
  return e;
}

void apply_setting(SpecSettings& s, const std::string& key, const Value& value) {
  if (key == "t_max") s.t_max = parse_integer(value);
  else if (key == "burn_in") s.burn_in = parse_integer(value);
  else if (key == "depth_cap") s.depth_cap = parse_count(value);
  else if (key == "max_compare_depth") s.max_compare_depth = parse_count(value);
  else if (key == "out_dir") s.out_dir = std::string(value.text);
  else if (key == "seed") s.seed = parse_count(value);
  else throw syntax_error(value.line, 1, "unknown setting '" + key + "'");
}

}  // namespace

void validate_settings(const SpecSettings& s) {
  if (s.t_max < 1) throw semantic_error("settings", "t_max must be >= 1");
  if (s.burn_in && (*s.burn_in < 1 || *s.burn_in > s.t_max)) {
    throw semantic_error("settings", "burn_in must satisfy 1 <= burn_in <= t_max");
  }
  if (s.depth_cap < 2) throw semantic_error("settings", "depth_cap must be >= 2");
  if (s.max_compare_depth < 1) throw semantic_error("settings", "max_compare_depth must be >= 1");
  if (s.out_dir.empty()) throw semantic_error("settings", "out_dir must be nonempty");
  if (s.out_dir.find_first_of("#\r\n") != std::string::npos || trim(s.out_dir) != s.out_dir) {
    throw semantic_error("settings", "out_dir must not contain '#', line breaks or surrounding spaces");
  }
}

TupleSpecFile parse_spec(std::string_view text) {
  TupleSpecFile spec;
  enum class Section { None, Settings, Number } section = Section::None;
  std::vector<RawNumber> raw_numbers;
  std::set<std::string> setting_keys;
  bool settings_seen = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string_view body = trim(line);
    if (body.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t indent = static_cast<std::size_t>(body.data() - line.data());

    if (body.front() == '[') {
      if (body == "[settings]") {
        if (settings_seen) throw syntax_error(line_no, indent + 1, "duplicate [settings] block");
        settings_seen = true;
        section = Section::Settings;
      } else if (body == "[number]") {
        section = Section::Number;
        raw_numbers.push_back({line_no, {}});
      } else {
        throw syntax_error(line_no, indent + 1, "unknown block header '" + std::string(body) + "'");
      }
    } else {
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) throw syntax_error(line_no, indent + 1, "expected 'key = value'");
      const std::string key(trim(body.substr(0, eq)));
      const std::string_view raw_value = body.substr(eq + 1);
      const std::string_view value = trim(raw_value);
      const std::size_t value_col =
          static_cast<std::size_t>((value.empty() ? raw_value.data() + raw_value.size() : value.data()) - line.data()) + 1;
      if (key.empty()) throw syntax_error(line_no, indent + 1, "missing key");
      if (value.empty()) throw syntax_error(line_no, value_col, "missing value for '" + key + "'");
      const Value v{value, line_no, value_col};
      switch (section) {
        case Section::None: throw syntax_error(line_no, indent + 1, "entry outside of a block");
        case Section::Settings:
          if (!setting_keys.insert(key).second) throw semantic_error("settings", "duplicate key '" + key + "'");
          apply_setting(spec.settings, key, v);
          break;
        case Section::Number: raw_numbers.back().entries.push_back({key, v}); break;
      }
    }
    if (end == text.size()) break;
  }

  std::set<std::string> names;
  for (const auto& raw : raw_numbers) {
    auto entry = finish_number(raw);
    if (!names.insert(entry.name).second) throw semantic_error("number '" + entry.name + "'", "duplicate name");
    spec.numbers.push_back(std::move(entry));
  }
  validate_settings(spec.settings);
  return spec;
}

namespace {

std::string list_text(const std::vector<Integer>& list) {
  std::string s = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) s += ", ";
    s += list[i].get_str();
  }
  return s + "]";
}

}  // namespace

std::string serialize_spec(const TupleSpecFile& spec) {
  std::ostringstream out;
  const auto& s = spec.settings;
  out << "[settings]\n";
  out << "t_max = " << s.t_max.get_str() << '\n';
  if (s.burn_in) out << "burn_in = " << s.burn_in->get_str() << '\n';
  out << "depth_cap = " << s.depth_cap << '\n';
  out << "max_compare_depth = " << s.max_compare_depth << '\n';
  out << "out_dir = " << s.out_dir << '\n';
  out << "seed = " << s.seed << '\n';
  for (const auto& e : spec.numbers) {
    out << "\n[number]\n";
    out << "name = " << e.name << '\n';
    out << "kind = " << to_string(e.kind) << '\n';
    switch (e.kind) {
      case NumberKind::Periodic:
        out << "preperiod = " << list_text(e.preperiod) << '\n';
        out << "period = " << list_text(e.period) << '\n';
        break;
      case NumberKind::Finite: out << "coefficients = " << list_text(e.coefficients) << '\n'; break;
      case NumberKind::Surd:
        out << "rational = " << to_fraction_string(e.rational) << '\n';
        out << "root = " << to_fraction_string(e.root) << '\n';
        out << "radicand = " << e.radicand.get_str() << '\n';
        break;
    }
  }
  return out.str();
}

ContinuedFraction to_continued_fraction(const NumberEntry& e, std::size_t depth_cap) {
  switch (e.kind) {
    case NumberKind::Periodic:
      return ContinuedFraction::periodic(e.preperiod.front(), {e.preperiod.begin() + 1, e.preperiod.end()}, e.period,
                                         depth_cap);
    case NumberKind::Finite:
      return ContinuedFraction::finite(e.coefficients.front(), {e.coefficients.begin() + 1, e.coefficients.end()},
                                       depth_cap);
    case NumberKind::Surd: return surd_to_cf(QuadraticSurd(e.rational, e.root, e.radicand), depth_cap);
  }
  throw Error(ErrorKind::InvalidArgument, "cli_app", "build_members", "unknown kind");
}

std::vector<Member> build_members(const TupleSpecFile& spec) {
  std::vector<Member> members;
  members.reserve(spec.numbers.size());
  for (const auto& e : spec.numbers) members.push_back({e.name, to_continued_fraction(e, spec.settings.depth_cap)});
  return members;
}

}  // namespace psilab
