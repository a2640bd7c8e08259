#ifndef PROVABILITY_H
#define PROVABILITY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ProvStatus {
  PROV_STATUS_OK = 0,
  PROV_STATUS_NULL_POINTER = 1,
  PROV_STATUS_INVALID_UTF8 = 2,
  PROV_STATUS_PARSE = 3,
  PROV_STATUS_UNSUPPORTED = 4,
  PROV_STATUS_RESOURCE_LIMIT = 5,
  PROV_STATUS_NO_COUNTERMODEL = 6,
  PROV_STATUS_INTERNAL = 7,
} ProvStatus;

typedef enum ProvVerdict {
  PROV_VERDICT_PROVABLE = 0,
  PROV_VERDICT_REFUTED = 1,
  PROV_VERDICT_INCONCLUSIVE = 2,
} ProvVerdict;

// Opaque formula handle.
typedef struct ProvFormula ProvFormula;

// Opaque decision result handle.
typedef struct ProvResult ProvResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. The
// pointer stays valid until the next call into this library on the same
// thread.
const char *prov_last_error(void);

// Parses a NUL-terminated UTF-8 formula into `*out`.
//
// # Safety
// `source` must be null or a valid C string; `out` must be null or
// writable.
enum ProvStatus prov_formula_parse(const char *source, struct ProvFormula **out);

// # Safety
// `formula` must be null or a handle from this library not yet freed.
void prov_formula_free(struct ProvFormula *formula);

// Prints a formula in the ASCII syntax `prov_formula_parse` accepts.
// Release the string with `prov_string_free`.
//
// # Safety
// `formula` must be null or a live handle; `out` must be null or writable.
enum ProvStatus prov_formula_to_string(const struct ProvFormula *formula, char **out);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void prov_string_free(char *s);

// Applies the translation named `kind` (for example `"box-full"`).
//
// # Safety
// Pointer arguments must be null or valid as for `prov_formula_parse`.
enum ProvStatus prov_translate(const char *kind,
                               const struct ProvFormula *formula,
                               struct ProvFormula **out);

// Decides a formula in the logic named `logic` (for example `"iGL"`).
//
// # Safety
// Pointer arguments must be null or valid as for `prov_formula_parse`.
enum ProvStatus prov_decide(const char *logic,
                            const struct ProvFormula *formula,
                            struct ProvResult **out);

// Decides a formula in a relative provability logic such as
// `"PL(PA,PA)"` or `"Sigma1(HA,N)"`.
//
// # Safety
// Pointer arguments must be null or valid as for `prov_formula_parse`.
enum ProvStatus prov_decide_pl(const char *logic,
                               const struct ProvFormula *formula,
                               struct ProvResult **out);

// The verdict of a result; `Inconclusive` for a null handle.
//
// # Safety
// `result` must be null or a live handle.
enum ProvVerdict prov_result_verdict(const struct ProvResult *result);

// The countermodel of a refuted result as JSON. Release the string with
// `prov_string_free`.
//
// # Safety
// `result` must be null or a live handle; `out` must be null or writable.
enum ProvStatus prov_result_countermodel_json(const struct ProvResult *result, char **out);

// # Safety
// `result` must be null or a handle from this library not yet freed.
void prov_result_free(struct ProvResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROVABILITY_H */
