/*
 * psilab C API.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Strings returned through `char**` out-parameters are
 * allocated by the library and must be released with psilab_string_free.
 * Every function returns a psilab_status; on failure the message is
 * available from psilab_last_error() on the same thread until the next call.
 * Arbitrary-precision integers and rationals cross the boundary as decimal
 * text ("123", "-7/12").
 */
#ifndef PSILAB_PSILAB_H
#define PSILAB_PSILAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PSILAB_BUILDING)
#    define PSILAB_API __declspec(dllexport)
#  else
#    define PSILAB_API __declspec(dllimport)
#  endif
#else
#  define PSILAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psilab_status {
  PSILAB_OK = 0,
  /* Undecided ordering, dependent pair, window too short, exhausted depth,
     failed check. */
  PSILAB_ERROR_ANALYSIS = 1,
  /* Malformed spec text or invalid argument. */
  PSILAB_ERROR_USAGE = 2,
  PSILAB_ERROR_INTERNAL = 3
} psilab_status;

typedef struct psilab_spec psilab_spec;
typedef struct psilab_number psilab_number;

PSILAB_API const char* psilab_version(void);
PSILAB_API const char* psilab_last_error(void);
PSILAB_API void psilab_string_free(char* s);

/* ---- tuple specifications ---------------------------------------------- */

PSILAB_API psilab_status psilab_spec_parse(const char* text, size_t length, psilab_spec** out);
PSILAB_API void psilab_spec_free(psilab_spec* spec);
PSILAB_API psilab_status psilab_spec_serialize(const psilab_spec* spec, char** out);

/* Overrides a setting: "t_max", "burn_in", "depth_cap", "max_compare_depth",
   "out_dir", "seed". The value uses the spec-file syntax. */
PSILAB_API psilab_status psilab_spec_set(psilab_spec* spec, const char* key, const char* value);
/* Current value of a setting in spec-file syntax; "" for an unset burn_in. */
PSILAB_API psilab_status psilab_spec_get(const psilab_spec* spec, const char* key, char** out);

PSILAB_API size_t psilab_spec_member_count(const psilab_spec* spec);
/* Borrowed pointer valid while `spec` lives; NULL when out of range. */
PSILAB_API const char* psilab_spec_member_name(const psilab_spec* spec, size_t index);

/* ---- reports ------------------------------------------------------------ */

typedef struct psilab_run_options {
  int approx;     /* nonzero: append decimal approximations */
  int log_axes;   /* plots only; nonzero (default) for log-log axes */
  unsigned threads;
} psilab_run_options;

PSILAB_API psilab_run_options psilab_default_run_options(void);

/* command: convergents, psi, trace, kindex, verify, proof-trace. The report
   is produced even when the status is PSILAB_ERROR_ANALYSIS because a check
   failed; `*report` is NULL only when no report could be built. */
PSILAB_API psilab_status psilab_run(const psilab_spec* spec, const char* command, const psilab_run_options* options,
                                    char** report);

/* Standalone SVG document for member `index`. */
PSILAB_API psilab_status psilab_plot_svg(const psilab_spec* spec, size_t index, const psilab_run_options* options,
                                         char** svg);

/* ---- single numbers ----------------------------------------------------- */

PSILAB_API psilab_status psilab_number_periodic(int64_t a0, const int64_t* preperiod, size_t preperiod_length,
                                                const int64_t* period, size_t period_length, psilab_number** out);
PSILAB_API psilab_status psilab_number_finite(int64_t a0, const int64_t* coefficients, size_t length,
                                              psilab_number** out);
/* rational + root * sqrt(radicand); rational and root as "num/den" text. */
PSILAB_API psilab_status psilab_number_surd(const char* rational, const char* root, const char* radicand,
                                            psilab_number** out);
PSILAB_API void psilab_number_free(psilab_number* number);

PSILAB_API psilab_status psilab_number_coefficient(const psilab_number* number, size_t nu, char** out);
PSILAB_API psilab_status psilab_number_convergent(const psilab_number* number, size_t nu, char** p, char** q);
PSILAB_API psilab_status psilab_number_star_value(const psilab_number* number, size_t nu, char** out);
/* Certified open interval (lo, hi) around xi_nu after `depth` refinements. */
PSILAB_API psilab_status psilab_number_error_enclosure(const psilab_number* number, size_t nu, size_t depth,
                                                       char** lo, char** hi);
/* psi(t) for decimal `t`: the step denominator q_nu and the enclosure of xi_nu. */
PSILAB_API psilab_status psilab_number_psi_at(const psilab_number* number, const char* t, char** q, char** lo,
                                              char** hi);

#ifdef __cplusplus
}
#endif

#endif /* PSILAB_PSILAB_H */
