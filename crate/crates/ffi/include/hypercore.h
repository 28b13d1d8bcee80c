#ifndef HYPERCORE_H
#define HYPERCORE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an FFI call.
typedef enum HcStatus {
  HC_STATUS_OK = 0,
  // The call succeeded and the verdict it computed is FAIL.
  HC_STATUS_VERDICT_FAIL = 1,
  HC_STATUS_NULL_POINTER = 2,
  HC_STATUS_INVALID_UTF8 = 3,
  HC_STATUS_SEQ_SPEC = 10,
  HC_STATUS_POLY_PARSE = 11,
  HC_STATUS_RATIONAL_PARSE = 12,
  HC_STATUS_ORDER_OVERFLOW = 13,
  HC_STATUS_NON_POLYNOMIAL = 14,
  HC_STATUS_ZERO_POLYNOMIAL = 15,
  HC_STATUS_INVALID_ARGUMENT = 16,
  HC_STATUS_UNSUPPORTED_BASIS = 17,
  HC_STATUS_SEQUENCE_VALUE = 18,
  HC_STATUS_CORPUS = 19,
  HC_STATUS_UNKNOWN_EXAMPLE = 20,
  HC_STATUS_JSON = 21,
  HC_STATUS_PANIC = 99,
} HcStatus;

// Opaque differential operator.
typedef struct HcDiffOp HcDiffOp;

// Opaque sequence specification.
typedef struct HcSeqSpec HcSeqSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Diagnostic code of the last failed call on this thread (`E_SEQSPEC`, ...), or NULL.
// The pointer stays valid until the next call into this library on the same thread.
const char *hc_last_error_code(void);

// Human-readable message of the last failed call on this thread, or NULL.
const char *hc_last_error_message(void);

// Library version as a static string.
const char *hc_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be NULL or a pointer obtained from this library and not yet freed.
void hc_string_free(char *s);

// Parses a sequence spec such as `poly:n^2+n+1`, `altpoly:n`, `geom:1/2`,
// `list:2,3,4` or `pow:5/2@1e12`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum HcStatus hc_seqspec_parse(const char *spec, struct HcSeqSpec **out);

// Writes `gamma_n` as a canonical rational string.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum HcStatus hc_seqspec_eval(const struct HcSeqSpec *s, size_t n, char **out);

// # Safety
// `s` must be NULL or a handle from [`hc_seqspec_parse`] not yet freed.
void hc_seqspec_free(struct HcSeqSpec *s);

// Reads an operator from its JSON encoding `{"order": K, "terms": {...}}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum HcStatus hc_diffop_from_json(const char *json, struct HcDiffOp **out);

// Writes the JSON encoding of an operator.
//
// # Safety
// `op` must be a live handle; `out` must be writable.
enum HcStatus hc_diffop_to_json(const struct HcDiffOp *op, char **out);

// Truncation order `K` of an operator, or 0 for NULL.
//
// # Safety
// `op` must be NULL or a live handle.
size_t hc_diffop_order(const struct HcDiffOp *op);

// # Safety
// `op` must be NULL or a handle from this library not yet freed.
void hc_diffop_free(struct HcDiffOp *op);

// Peetre expansion of `T[B_n] = gamma_n B_n` to order `order`.
// `basis` is `monomial`, `hermite`, `laguerre` or `legendre`; `shift` is NULL
// or a rational string such as `-3` or `1/2`.
//
// # Safety
// String arguments must be NUL-terminated (or NULL for `shift`); `seq` must be
// a live handle; `out` must be writable.
enum HcStatus hc_peetre_expand(const char *basis,
                               const char *shift,
                               const struct HcSeqSpec *seq,
                               size_t order,
                               struct HcDiffOp **out);

// `a ∘ b`, truncated to the smaller order.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HcStatus hc_compose(const struct HcDiffOp *a, const struct HcDiffOp *b, struct HcDiffOp **out);

// Applies `op` to a polynomial given as text (`"x^2 - 1"`) and writes the
// image in the same notation.
//
// # Safety
// `op` must be a live handle; `poly` NUL-terminated; `out` writable.
enum HcStatus hc_apply(const struct HcDiffOp *op, const char *poly, char **out);

// Writes the `T_n` decomposition of `op` as JSON `{"order": K, "entries": {"n": [...]}}`.
//
// # Safety
// `op` must be a live handle; `out` writable.
enum HcStatus hc_decompose_json(const struct HcDiffOp *op, char **out);

// Classifies a sequence. `kind` is `classical`, `hermite` or `laguerre`;
// `order` is ignored for `laguerre`. Writes the verdict as JSON and returns
// [`HcStatus::VerdictFail`] when the verdict is FAIL.
//
// # Safety
// `kind` NUL-terminated; `seq` a live handle; `out` writable.
enum HcStatus hc_classify(const char *kind, const struct HcSeqSpec *seq, size_t order, char **out);

// Hyperbolicity test for `Q2 D^2 + Q1 D + Q0` with polynomial arguments as
// text. Writes the verdict as JSON and returns [`HcStatus::VerdictFail`] on FAIL.
//
// # Safety
// Polynomial arguments NUL-terminated; `out` writable.
enum HcStatus hc_quad_check(const char *q2, const char *q1, const char *q0, char **out);

// Searches the standard corpus for a hyperbolic input whose image under `op`
// is not hyperbolic. Writes the verdict as JSON.
//
// # Safety
// `op` a live handle; `out` writable.
enum HcStatus hc_falsify(const struct HcDiffOp *op, char **out);

// Sweeps a named identity (`horrible` or `vandermonde`) over `0..=max` in each
// argument, writing the number of cases and of failures.
//
// # Safety
// `name` NUL-terminated; `cases` and `failures` writable.
enum HcStatus hc_identity_sweep(const char *name, int64_t max, size_t *cases, size_t *failures);

// Recomputes a worked example by id and writes its report as JSON; returns
// [`HcStatus::VerdictFail`] if any check disagrees.
//
// # Safety
// `id` NUL-terminated; `out` writable.
enum HcStatus hc_verify_example(const char *id, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERCORE_H */
