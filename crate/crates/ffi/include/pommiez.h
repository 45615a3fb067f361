#ifndef POMMIEZ_H
#define POMMIEZ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PzStatus {
  PZ_STATUS_OK = 0,
  PZ_STATUS_NULL_ARGUMENT = 1,
  PZ_STATUS_INVALID_UTF8 = 2,
  PZ_STATUS_SYNTAX_ERROR = 3,
  PZ_STATUS_NONLINEAR_EXPONENT = 4,
  PZ_STATUS_INVALID_G0 = 5,
  PZ_STATUS_EXPONENT_MISMATCH = 6,
  PZ_STATUS_NOT_EXACT = 7,
  PZ_STATUS_PRECONDITION_VIOLATED = 8,
  PZ_STATUS_ZERO_FUNCTION = 9,
  PZ_STATUS_DOMAIN_ERROR = 10,
  PZ_STATUS_PANIC = 11,
} PzStatus;

/**
 * Operator context built from `g0`.
 */
typedef struct PzContext PzContext;

/**
 * Exponential-polynomial with Gaussian-rational coefficients.
 */
typedef struct PzExpPoly PzExpPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *pz_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pz_version(void);

/**
 * Parse an expression such as `(1+2*z)*exp(3*z) + z^2`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum PzStatus pz_exppoly_parse(const char *text, struct PzExpPoly **out);

/**
 * # Safety
 * `p` must come from this library and not be freed twice. NULL is ignored.
 */
void pz_exppoly_free(struct PzExpPoly *p);

/**
 * Canonical re-parseable rendering; release with [`pz_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PzStatus pz_exppoly_to_string(const struct PzExpPoly *p, char **out);

/**
 * # Safety
 * `s` must come from this library. NULL is ignored.
 */
void pz_string_free(char *s);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum PzStatus pz_exppoly_derivative(const struct PzExpPoly *p, struct PzExpPoly **out);

/**
 * Value at `re + i·im`, computed with `prec` bits and rounded to doubles.
 *
 * # Safety
 * `p` must be a live handle; `out_re` and `out_im` writable.
 */
enum PzStatus pz_exppoly_eval(const struct PzExpPoly *p,
                              double re,
                              double im,
                              uint32_t prec,
                              double *out_re,
                              double *out_im);

/**
 * Context for `g0`; fails with `INVALID_G0` unless `g0(0) = 1`.
 *
 * # Safety
 * `g0` must be a live handle and `out` writable.
 */
enum PzStatus pz_context_new(const struct PzExpPoly *g0, struct PzContext **out);

/**
 * # Safety
 * `ctx` must come from this library. NULL is ignored.
 */
void pz_context_free(struct PzContext *ctx);

/**
 * Closed form of `D f` when `g0` and `f` share one exponent.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum PzStatus pz_pommiez_exact_on_line(const struct PzContext *ctx,
                                       const struct PzExpPoly *f,
                                       struct PzExpPoly **out);

/**
 * Cyclicity verdict as a JSON document; release with [`pz_string_free`].
 * A non-positive `search_radius` selects the default.
 *
 * # Safety
 * Handles must be live and `out_json` writable.
 */
enum PzStatus pz_classify_json(const struct PzExpPoly *g0,
                               const struct PzExpPoly *f,
                               double search_radius,
                               char **out_json);

/**
 * Duhamel product `v * w`.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum PzStatus pz_duhamel(const struct PzExpPoly *v,
                         const struct PzExpPoly *w,
                         struct PzExpPoly **out);

/**
 * `ω_f(z, x)` at `z = re + i·im` with `prec` bits.
 *
 * # Safety
 * Handles must be live; `out_re` and `out_im` writable.
 */
enum PzStatus pz_omega(const struct PzExpPoly *f,
                       const struct PzExpPoly *x,
                       double re,
                       double im,
                       uint32_t prec,
                       double *out_re,
                       double *out_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POMMIEZ_H */
