#include "psilab/psilab.h"

#include "psilab/commands.hpp"
#include "psilab/error.hpp"
#include "psilab/psi.hpp"
#include "psilab/spec_file.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct psilab_spec {
  psilab::TupleSpecFile spec;
};

struct psilab_number {
  psilab::ContinuedFraction cf;
};

namespace {

thread_local std::string g_last_error;

psilab_status status_for(psilab::ErrorKind kind) {
  using psilab::ErrorKind;
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument: return PSILAB_ERROR_USAGE;
    default: return PSILAB_ERROR_ANALYSIS;
  }
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
psilab_status guarded(Body&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const psilab::Error& e) {
    g_last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
  } catch (...) {
    g_last_error = "internal: unknown exception";
  }
  return PSILAB_ERROR_INTERNAL;
}

psilab_status usage(const std::string& message) {
  g_last_error = "cli_app/c_api: invalid-argument: " + message;
  return PSILAB_ERROR_USAGE;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::vector<psilab::Integer> to_integers(const int64_t* values, size_t length) {
  std::vector<psilab::Integer> out;
  out.reserve(length);
  for (size_t i = 0; i < length; ++i) out.emplace_back(static_cast<long>(values[i]));
  return out;
}

psilab::RunOptions to_options(const psilab_run_options* o) {
  psilab::RunOptions out;
  if (o) {
    out.approx = o->approx != 0;
    out.log_axes = o->log_axes != 0;
    out.threads = o->threads;
  }
  return out;
}

psilab_status give(psilab_number* n, psilab_number** out) {
  *out = n;
  return PSILAB_OK;
}

}  // namespace

extern "C" {

const char* psilab_version(void) { return "1.0.0"; }

const char* psilab_last_error(void) { return g_last_error.c_str(); }

void psilab_string_free(char* s) { std::free(s); }

psilab_status psilab_spec_parse(const char* text, size_t length, psilab_spec** out) {
  if (!text || !out) return usage("null argument to psilab_spec_parse");
  *out = nullptr;
  return guarded([&] {
    auto spec = std::make_unique<psilab_spec>();
    spec->spec = psilab::parse_spec(std::string_view(text, length));
    *out = spec.release();
    return PSILAB_OK;
  });
}

void psilab_spec_free(psilab_spec* spec) { delete spec; }

psilab_status psilab_spec_serialize(const psilab_spec* spec, char** out) {
  if (!spec || !out) return usage("null argument to psilab_spec_serialize");
  return guarded([&] {
    *out = duplicate(psilab::serialize_spec(spec->spec));
    return PSILAB_OK;
  });
}

psilab_status psilab_spec_set(psilab_spec* spec, const char* key, const char* value) {
  if (!spec || !key || !value) return usage("null argument to psilab_spec_set");
  return guarded([&] {
    // Reuse the spec-file grammar so overrides validate exactly like files.
    const std::string text = std::string("[settings]\n") + key + " = " + value + "\n";
    psilab::SpecSettings parsed_settings;
    try {
      parsed_settings = psilab::parse_spec(text).settings;
    } catch (const psilab::Error& e) {
      // Drop the position inside the synthetic one-line document.
      std::string detail = e.what();
      if (auto at = detail.find("column "); at != std::string::npos) {
        if (auto colon = detail.find(": ", at); colon != std::string::npos) detail = detail.substr(colon + 2);
      }
      return usage(std::string(key) + ": " + detail);
    }
    psilab::SpecSettings merged = spec->spec.settings;
    const std::string k(key);
    if (k == "t_max") merged.t_max = parsed_settings.t_max;
    else if (k == "burn_in") merged.burn_in = parsed_settings.burn_in;
    else if (k == "depth_cap") merged.depth_cap = parsed_settings.depth_cap;
    else if (k == "max_compare_depth") merged.max_compare_depth = parsed_settings.max_compare_depth;
    else if (k == "out_dir") merged.out_dir = parsed_settings.out_dir;
    else if (k == "seed") merged.seed = parsed_settings.seed;
    psilab::validate_settings(merged);
    spec->spec.settings = std::move(merged);
    return PSILAB_OK;
  });
}

psilab_status psilab_spec_get(const psilab_spec* spec, const char* key, char** out) {
  if (!spec || !key || !out) return usage("null argument to psilab_spec_get");
  return guarded([&] {
    const auto& s = spec->spec.settings;
    const std::string k(key);
    std::string value;
    if (k == "t_max") value = s.t_max.get_str();
    else if (k == "burn_in") value = s.burn_in ? s.burn_in->get_str() : "";
    else if (k == "depth_cap") value = std::to_string(s.depth_cap);
    else if (k == "max_compare_depth") value = std::to_string(s.max_compare_depth);
    else if (k == "out_dir") value = s.out_dir;
    else if (k == "seed") value = std::to_string(s.seed);
    else return usage("unknown setting '" + k + "'");
    *out = duplicate(value);
    return PSILAB_OK;
  });
}

size_t psilab_spec_member_count(const psilab_spec* spec) { return spec ? spec->spec.numbers.size() : 0; }

const char* psilab_spec_member_name(const psilab_spec* spec, size_t index) {
  if (!spec || index >= spec->spec.numbers.size()) return nullptr;
  return spec->spec.numbers[index].name.c_str();
}

psilab_run_options psilab_default_run_options(void) { return psilab_run_options{0, 1, 1}; }

psilab_status psilab_run(const psilab_spec* spec, const char* command, const psilab_run_options* options,
                         char** report) {
  if (!spec || !command || !report) return usage("null argument to psilab_run");
  *report = nullptr;
  if (!psilab::is_report_command(command)) return usage(std::string("unknown command '") + command + "'");
  return guarded([&] {
    const auto result = psilab::run_command(spec->spec, command, to_options(options));
    *report = duplicate(result.output);
    if (result.status == psilab::CommandStatus::AnalysisError) {
      g_last_error = std::string("cli_app/") + command + ": analysis check failed; see report";
      return PSILAB_ERROR_ANALYSIS;
    }
    return PSILAB_OK;
  });
}

psilab_status psilab_plot_svg(const psilab_spec* spec, size_t index, const psilab_run_options* options, char** svg) {
  if (!spec || !svg) return usage("null argument to psilab_plot_svg");
  if (index >= spec->spec.numbers.size()) return usage("member index out of range");
  *svg = nullptr;
  return guarded([&] {
    auto plots = psilab::render_plots(spec->spec, to_options(options));
    *svg = duplicate(plots[index]);
    return PSILAB_OK;
  });
}

psilab_status psilab_number_periodic(int64_t a0, const int64_t* preperiod, size_t preperiod_length,
                                     const int64_t* period, size_t period_length, psilab_number** out) {
  if (!out || (preperiod_length && !preperiod) || !period) return usage("null argument to psilab_number_periodic");
  return guarded([&] {
    return give(new psilab_number{psilab::ContinuedFraction::periodic(static_cast<long>(a0),
                                                                      to_integers(preperiod, preperiod_length),
                                                                      to_integers(period, period_length))},
                out);
  });
}

psilab_status psilab_number_finite(int64_t a0, const int64_t* coefficients, size_t length, psilab_number** out) {
  if (!out || (length && !coefficients)) return usage("null argument to psilab_number_finite");
  return guarded([&] {
    return give(new psilab_number{psilab::ContinuedFraction::finite(static_cast<long>(a0),
                                                                    to_integers(coefficients, length))},
                out);
  });
}

psilab_status psilab_number_surd(const char* rational, const char* root, const char* radicand, psilab_number** out) {
  if (!out || !rational || !root || !radicand) return usage("null argument to psilab_number_surd");
  return guarded([&] {
    psilab::Integer d;
    if (d.set_str(radicand, 10) != 0) return usage(std::string("radicand is not an integer: ") + radicand);
    const psilab::QuadraticSurd s(psilab::parse_rational(rational), psilab::parse_rational(root), d);
    return give(new psilab_number{psilab::surd_to_cf(s)}, out);
  });
}

void psilab_number_free(psilab_number* number) { delete number; }

psilab_status psilab_number_coefficient(const psilab_number* number, size_t nu, char** out) {
  if (!number || !out) return usage("null argument to psilab_number_coefficient");
  return guarded([&] {
    *out = duplicate(number->cf.coefficient(nu).get_str());
    return PSILAB_OK;
  });
}

psilab_status psilab_number_convergent(const psilab_number* number, size_t nu, char** p, char** q) {
  if (!number || !p || !q) return usage("null argument to psilab_number_convergent");
  return guarded([&] {
    const auto c = psilab::convergents(number->cf, nu + 1).back();
    *p = duplicate(c.p.get_str());
    *q = duplicate(c.q.get_str());
    return PSILAB_OK;
  });
}

psilab_status psilab_number_star_value(const psilab_number* number, size_t nu, char** out) {
  if (!number || !out) return usage("null argument to psilab_number_star_value");
  return guarded([&] {
    *out = duplicate(psilab::to_fraction_string(psilab::star_value(number->cf, nu)));
    return PSILAB_OK;
  });
}

psilab_status psilab_number_error_enclosure(const psilab_number* number, size_t nu, size_t depth, char** lo,
                                            char** hi) {
  if (!number || !lo || !hi) return usage("null argument to psilab_number_error_enclosure");
  return guarded([&] {
    const auto term = psilab::error_enclosure(number->cf, nu, depth);
    *lo = duplicate(psilab::to_fraction_string(term.enclosure().lo));
    *hi = duplicate(psilab::to_fraction_string(term.enclosure().hi));
    return PSILAB_OK;
  });
}

psilab_status psilab_number_psi_at(const psilab_number* number, const char* t, char** q, char** lo, char** hi) {
  if (!number || !t || !q || !lo || !hi) return usage("null argument to psilab_number_psi_at");
  return guarded([&] {
    psilab::Integer time;
    if (time.set_str(t, 10) != 0) return usage(std::string("t is not an integer: ") + t);
    const auto traj = psilab::build_trajectory(number->cf, time);
    const auto xi = psilab::psi_at(traj, time);
    *q = duplicate(xi.q().get_str());
    *lo = duplicate(psilab::to_fraction_string(xi.enclosure().lo));
    *hi = duplicate(psilab::to_fraction_string(xi.enclosure().hi));
    return PSILAB_OK;
  });
}

}  // extern "C"
