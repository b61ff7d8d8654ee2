/* C ABI for the lambda-umbral library. Generated by cbindgen; do not edit. */

#ifndef LAMBDA_UMBRAL_H
#define LAMBDA_UMBRAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every FFI call.
enum LumStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  // Success; for `lum_verify`, the verification passed.
  LUM_STATUS_OK = 0,
  // The verification ran to completion and failed.
  LUM_STATUS_VERIFY_FAILED = 1,
  // An argument was structurally invalid (range, flag combination, id).
  LUM_STATUS_INVALID_ARGUMENT = 2,
  // A required pointer was null.
  LUM_STATUS_NULL_POINTER = 3,
  // A string did not parse (rational grammar, UTF-8, JSON).
  LUM_STATUS_PARSE_ERROR = 4,
  // Unexpected internal failure.
  LUM_STATUS_INTERNAL_ERROR = 5,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum LumStatus LumStatus;
#else
typedef int32_t LumStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Opaque handle to an exact polynomial in Q\[λ\]\[x\].
typedef struct LumPoly LumPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The description of the most recent error on this thread, or null.
// The pointer stays valid until the next library call on the same thread.
const char *lum_last_error_message(void);

// Library version as a static string; do not free.
const char *lum_version(void);

// Degree-n degenerate poly-Bernoulli polynomial for integer order k.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
LumStatus lum_poly_bernoulli(int64_t k, uint32_t n, struct LumPoly **out);

// Degree-n degenerate Bernoulli polynomial of order r ≥ 1.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
LumStatus lum_bernoulli_order(uint32_t r, uint32_t n, struct LumPoly **out);

// Degree-n degenerate derangement polynomial of order r ≥ 1.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
LumStatus lum_derangement_order(uint32_t r, uint32_t n, struct LumPoly **out);

// The falling factorial of degree n: λ-deformed when `deformed` is true,
// plain otherwise.
//
// # Safety
// `out` must be a valid pointer to a handle slot.
LumStatus lum_falling_factorial(uint32_t n, bool deformed, struct LumPoly **out);

// Parses the nested-array JSON form of a polynomial in Q\[λ\]\[x\].
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` a valid slot.
LumStatus lum_poly_parse_json(const char *json, struct LumPoly **out);

// Serializes a polynomial to its canonical JSON form.
//
// # Safety
// `p` must be a live handle; `out` a valid slot. Free the string with
// [`lum_string_free`].
LumStatus lum_poly_to_json(const struct LumPoly *p, char **out);

// Renders a polynomial as plain text (`x^2 - λ*x`, UTF-8).
//
// # Safety
// `p` must be a live handle; `out` a valid slot.
LumStatus lum_poly_to_text(const struct LumPoly *p, char **out);

// Renders a polynomial as LaTeX math.
//
// # Safety
// `p` must be a live handle; `out` a valid slot.
LumStatus lum_poly_to_latex(const struct LumPoly *p, char **out);

// Degree in x, or −1 for the zero polynomial.
//
// # Safety
// `p` must be a live handle; `out` a valid slot.
LumStatus lum_poly_degree(const struct LumPoly *p, int64_t *out);

// Structural equality of two polynomials.
//
// # Safety
// `a` and `b` must be live handles; `out` a valid slot.
LumStatus lum_poly_equal(const struct LumPoly *a, const struct LumPoly *b, bool *out);

// Evaluates at rational λ and x (both as `p/q` strings); writes the exact
// rational result as a string.
//
// # Safety
// `p` must be a live handle; `lambda` and `x` valid strings; `out` a slot.
LumStatus lum_poly_eval(const struct LumPoly *p, const char *lambda, const char *x, char **out);

// Evaluates only λ, leaving a polynomial in x rendered as text.
//
// # Safety
// `p` must be a live handle; `lambda` a valid string; `out` a slot.
LumStatus lum_poly_eval_lambda(const struct LumPoly *p, const char *lambda, char **out);

// The value of a polynomial at x = 0 as a λ-polynomial string (the family
// "number" form).
//
// # Safety
// `p` must be a live handle; `out` a valid slot.
LumStatus lum_poly_number_form(const struct LumPoly *p, char **out);

// Verifies one identity (by catalog id) or the whole catalog (`"all"`)
// over the default parameter sets with the given degree bound, writing the
// JSON report. Returns `Ok` on pass, `VerifyFailed` on failure.
//
// # Safety
// `identity` must be a valid string; `report_json` may be null when the
// caller only wants the status.
LumStatus lum_verify(const char *identity, uint32_t n_max, char **report_json);

// Releases a polynomial handle. Null is a no-op.
//
// # Safety
// `p` must be null or a handle from this library, not yet freed.
void lum_poly_free(struct LumPoly *p);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a string from this library, not yet freed.
void lum_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBDA_UMBRAL_H */
