#ifndef HARDY_SUMS_H
#define HARDY_SUMS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Target of [`hardy_density`]. `m2` is ignored except for `Joint`.
 */
typedef enum HardyDensityKind {
  HARDY_DENSITY_KIND_S = 0,
  HARDY_DENSITY_KIND_S4 = 1,
  HARDY_DENSITY_KIND_JOINT = 2,
} HardyDensityKind;

/**
 * Which expansion [`hardy_expansion_new`] computes.
 */
typedef enum HardyExpansionKind {
  HARDY_EXPANSION_KIND_THETA = 0,
  HARDY_EXPANSION_KIND_GAMMA02 = 1,
  HARDY_EXPANSION_KIND_CLASSICAL = 2,
  HARDY_EXPANSION_KIND_CLASSICAL_ODD = 3,
  HARDY_EXPANSION_KIND_ALL_EVEN = 4,
} HardyExpansionKind;

/**
 * Which transformation law [`hardy_verifier_check`] tests.
 */
typedef enum HardyLaw {
  HARDY_LAW_E2 = 0,
  HARDY_LAW_ETA = 1,
  HARDY_LAW_THETA = 2,
  HARDY_LAW_THETA4 = 3,
} HardyLaw;

/**
 * Status codes shared by all functions.
 */
typedef enum HardyStatus {
  HARDY_STATUS_OK = 0,
  HARDY_STATUS_NULL_POINTER = 1,
  HARDY_STATUS_INVALID_ARGUMENT = 2,
  HARDY_STATUS_NOT_COPRIME = 3,
  HARDY_STATUS_PARITY_VIOLATION = 4,
  HARDY_STATUS_NOT_IN_GROUP = 5,
  HARDY_STATUS_MALFORMED_EXPANSION = 6,
  HARDY_STATUS_OUT_OF_RANGE = 7,
  HARDY_STATUS_CONVERGENCE = 8,
  HARDY_STATUS_BRANCH_AMBIGUITY = 9,
  HARDY_STATUS_OVERFLOW = 10,
  HARDY_STATUS_INTERNAL = 11,
} HardyStatus;

/**
 * Opaque continued fraction.
 */
typedef struct HardyExpansion HardyExpansion;

/**
 * Opaque q-series evaluator with its precomputed tables.
 */
typedef struct HardyVerifier HardyVerifier;

/**
 * Result of one numeric identity check.
 */
typedef struct HardyReport {
  double lhs_re;
  double lhs_im;
  double rhs_re;
  double rhs_im;
  double abs_error;
  bool pass;
} HardyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *hardy_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hardy_string_free(char *s);

/**
 * `S(d, c)` from the theta expansion.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HardyStatus hardy_s(int64_t d, int64_t c, int64_t *out_value);

/**
 * `S₄(d, c)` from the `Γ⁰(2)` expansion.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HardyStatus hardy_s4(int64_t d, int64_t c, int64_t *out_value);

/**
 * `S(d, c)` by summing all `c − 1` terms.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HardyStatus hardy_s_direct(int64_t d, int64_t c, int64_t *out_value);

/**
 * `S₄(d, c)` by summing all `c − 1` terms.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HardyStatus hardy_s4_direct(int64_t d, int64_t c, int64_t *out_value);

/**
 * `S` or `S₄` (per `fourth`) for decimal integer strings of any size; the
 * value is returned as a decimal string.
 *
 * # Safety
 * `d` and `c` must be nul-terminated; `out` must be valid for writes.
 */
enum HardyStatus hardy_sum_big(const char *d, const char *c, bool fourth, char **out_value);

/**
 * Dedekind sum `s(d, c) = num/den` in lowest terms.
 *
 * # Safety
 * `num` and `den` must be valid for writes.
 */
enum HardyStatus hardy_dedekind(int64_t d, int64_t c, int64_t *num, int64_t *den);

/**
 * Expands the rational `x` (`"p/q"` or an integer).
 *
 * # Safety
 * `x` must be nul-terminated; `out` must be valid for writes.
 */
enum HardyStatus hardy_expansion_new(enum HardyExpansionKind kind,
                                     const char *x,
                                     struct HardyExpansion **out_handle);

/**
 * Parses bracket notation: `[[...]]` for theta expansions, `[...]` for
 * `Γ⁰(2)` ones.
 *
 * # Safety
 * `text` must be nul-terminated; `out` must be valid for writes.
 */
enum HardyStatus hardy_expansion_parse(const char *text, struct HardyExpansion **out_handle);

/**
 * Number of partial quotients, not counting the head.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
enum HardyStatus hardy_expansion_len(const struct HardyExpansion *h, size_t *out_len);

/**
 * Partial quotient `index` (0-based).
 *
 * # Safety
 * `h` must be a live handle or null.
 */
enum HardyStatus hardy_expansion_quotient(const struct HardyExpansion *h,
                                          size_t index,
                                          int64_t *out_value);

/**
 * Bracket notation of the expansion.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
enum HardyStatus hardy_expansion_to_string(const struct HardyExpansion *h, char **out_text);

/**
 * Exact value as `"p/q"`.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
enum HardyStatus hardy_expansion_value(const struct HardyExpansion *h, char **out_text);

/**
 * # Safety
 * `h` must come from this library and not have been freed. Null is ignored.
 */
void hardy_expansion_free(struct HardyExpansion *h);

/**
 * Finds `d/c` within `eps` of `x` with the requested sums and writes the
 * witness as a JSON object.
 *
 * # Safety
 * `x` and `eps` must be nul-terminated; `out` must be valid for writes.
 */
enum HardyStatus hardy_density(enum HardyDensityKind kind,
                               const char *x,
                               const char *eps,
                               int64_t m1,
                               int64_t m2,
                               char **out_json);

/**
 * Builds an evaluator truncating series after `terms` terms, with
 * `quad_nodes` quadrature nodes per panel and tolerance `tol`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HardyStatus hardy_verifier_new(size_t terms,
                                    size_t quad_nodes,
                                    double tol,
                                    struct HardyVerifier **out_handle);

/**
 * # Safety
 * `h` must come from this library and not have been freed. Null is ignored.
 */
void hardy_verifier_free(struct HardyVerifier *h);

/**
 * Checks the transformation law `law` for the matrix `(a b; c d)` at the
 * point `re + i·im`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid for writes.
 */
enum HardyStatus hardy_verifier_check(const struct HardyVerifier *h,
                                      enum HardyLaw law,
                                      int64_t a,
                                      int64_t b,
                                      int64_t c,
                                      int64_t d,
                                      double re,
                                      double im,
                                      struct HardyReport *out_report);

/**
 * Whether `(a b; c d)` lies in the theta group (`group = 1`), in `Γ⁰(2)`
 * (`group = 2`) or in SL2(Z) (`group = 0`).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum HardyStatus hardy_in_group(int64_t a,
                                int64_t b,
                                int64_t c,
                                int64_t d,
                                int32_t group,
                                bool *out_member);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARDY_SUMS_H */
