/* C interface to the levelset measure-analysis library. */

#ifndef LEVELSET_H
#define LEVELSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Enumeration strategy selector.
 */
typedef enum LsStrategy {
  LsStrategy_Auto = 0,
  LsStrategy_Direct = 1,
  LsStrategy_MeetInMiddle = 2,
} LsStrategy;

/**
 * Status of an FFI call. Nonzero values match the CLI exit codes
 * where one exists.
 */
typedef enum LsStatus {
  LsStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  LsStatus_NullPointer = 1,
  /**
   * Malformed JSON, a bad rational, or an invalid measure.
   */
  LsStatus_InvalidInput = 2,
  /**
   * An enumeration exceeded the configured atom bound.
   */
  LsStatus_ResourceLimit = 3,
  /**
   * Internal failure, including a caught panic.
   */
  LsStatus_Internal = 70,
} LsStatus;

/**
 * Which part of a signed measure a bully query addresses.
 */
typedef enum LsPart {
  LsPart_Abs = 0,
  LsPart_Positive = 1,
  LsPart_Negative = 2,
} LsPart;

/**
 * Candidate check mode: equal measures force equal values (level),
 * or the ordering of measures as well (order).
 */
typedef enum LsCheckMode {
  LsCheckMode_Level = 0,
  LsCheckMode_Order = 1,
} LsCheckMode;

/**
 * An opaque parsed measure.
 */
typedef struct LsMeasure LsMeasure;

/**
 * Analysis options; obtain defaults from [`ls_options_default`].
 */
typedef struct LsOptions {
  /**
   * Cap on the number of atoms enumerations will touch.
   */
  uint32_t max_atoms;
  enum LsStrategy strategy;
  /**
   * Recompute along brute-force paths and fail on disagreement.
   */
  bool oracle;
} LsOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static string; do not free.
 */
const char *ls_version(void);

/**
 * Default options: atom bound 30, automatic strategy, no oracle.
 */
struct LsOptions ls_options_default(void);

/**
 * The last error message raised on this thread, as a NUL-terminated
 * string owned by the library. Valid until the next failing call on
 * the same thread; do not free.
 */
const char *ls_last_error(void);

/**
 * Parses a measure from JSON (`{"atoms": [...], "kappa": "..."}` or
 * `{"signed_atoms": [...]}`), storing an owned handle in `*out`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success the caller owns the handle and must release it
 * with [`ls_measure_free`].
 */
enum LsStatus ls_measure_parse_json(const char *json, struct LsMeasure **out);

/**
 * Releases a measure handle. Null is ignored.
 *
 * # Safety
 * `measure` must have come from [`ls_measure_parse_json`] and not
 * have been freed already.
 */
void ls_measure_free(struct LsMeasure *measure);

/**
 * Number of atoms in the measure (signed measures count all atoms).
 *
 * # Safety
 * `measure` must be a live handle.
 */
uintptr_t ls_measure_atom_count(const struct LsMeasure *measure);

/**
 * Full analysis (range, bullies, uniqueness certificate) as a JSON
 * report in `*out`.
 *
 * # Safety
 * `measure` must be a live handle; `out` must be valid; `options` may
 * be null for defaults. The returned string must be released with
 * [`ls_string_free`].
 */
enum LsStatus ls_analyze_json(const struct LsMeasure *measure,
                              const struct LsOptions *options,
                              char **out);

/**
 * Range report (subset sums, intervals) as JSON in `*out`.
 *
 * # Safety
 * As [`ls_analyze_json`].
 */
enum LsStatus ls_range_json(const struct LsMeasure *measure,
                            const struct LsOptions *options,
                            char **out);

/**
 * Bully report as JSON in `*out`. `part` selects the positive or
 * negative part of a signed measure; use `Abs` for positive measures
 * and for the total-variation view.
 *
 * # Safety
 * As [`ls_analyze_json`].
 */
enum LsStatus ls_bullies_json(const struct LsMeasure *measure, enum LsPart part, char **out);

/**
 * Relation enumeration (vectors, rank, basis) as JSON in `*out`.
 *
 * # Safety
 * As [`ls_analyze_json`].
 */
enum LsStatus ls_relations_json(const struct LsMeasure *measure,
                                const struct LsOptions *options,
                                char **out);

/**
 * Checks a candidate (`{"atoms": [...], "slope": "p/q"}`, values
 * aligned with the measure's atoms largest-first) and writes the
 * check report as JSON to `*out`.
 *
 * # Safety
 * As [`ls_analyze_json`]; `candidate_json` must be a valid
 * NUL-terminated string.
 */
enum LsStatus ls_check_json(const struct LsMeasure *measure,
                            const char *candidate_json,
                            enum LsCheckMode mode,
                            const struct LsOptions *options,
                            char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must have been returned by a `*_json` function of this library
 * and not have been freed already.
 */
void ls_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEVELSET_H */
