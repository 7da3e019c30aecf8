#ifndef BETHE_SPECTRA_H
#define BETHE_SPECTRA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Status codes shared by every entry point.
typedef enum BsStatus {
  BS_OK = 0,
  BS_NULL_POINTER = 1,
  BS_INVALID_UTF8 = 2,
  BS_INVALID_INPUT = 3,
  // A checked property does not hold.
  BS_CHECK_FAILED = 4,
  // The value does not fit the requested C type.
  BS_OUT_OF_RANGE = 5,
  BS_PANIC = 6,
} BsStatus;

// A validated degree sequence `(d_1, ..., d_k)`.
typedef struct BsDegrees BsDegrees;

// An integer polynomial with arbitrary-precision coefficients.
typedef struct BsPoly BsPoly;

// Smallest eigenvalue of `L(B(d))`: an isolating interval rounded
// outward to doubles, a 12-digit approximation, and the multiplicity.
typedef struct BsLambdaMin {
  double lo;
  double hi;
  double approx;
  uint64_t multiplicity;
} BsLambdaMin;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *bs_version(void);

// Message for the last non-OK status on this thread (empty if none).
// Valid until the next failing call on the same thread.
const char *bs_last_error(void);

// # Safety
// `s` must come from this library, or be NULL.
void bs_string_free(char *s);

// Build a degree sequence from `k` entries.
//
// # Safety
// `d` must point to `k` readable `size_t`s; `out` must be writable.
enum BsStatus bs_degrees_new(const size_t *d, size_t k, struct BsDegrees **out);

// Parse a comma-separated list such as `"1,3,4"`.
//
// # Safety
// `s` must be a NUL-terminated string; `out` must be writable.
enum BsStatus bs_degrees_parse(const char *s, struct BsDegrees **out);

// # Safety
// `d` must come from `bs_degrees_new`/`bs_degrees_parse`, or be NULL.
void bs_degrees_free(struct BsDegrees *d);

// Number of levels `k`, or 0 for NULL.
//
// # Safety
// `d` must be a live handle or NULL.
size_t bs_degrees_levels(const struct BsDegrees *d);

// Expanded characteristic polynomial of `L(B(d))`.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum BsStatus bs_char_poly(const struct BsDegrees *d, struct BsPoly **out);

// `g_i` for `0 <= i <= k`.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum BsStatus bs_g_poly(const struct BsDegrees *d, size_t i, struct BsPoly **out);

// Factored characteristic polynomial as JSON:
// `{"factors":[{"poly":{"coeffs":[...]},"exp":n},...],"divisor":"lambda+2","degrees":[...]}`.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum BsStatus bs_char_poly_factored_json(const struct BsDegrees *d, char **out);

// # Safety
// `p` must come from this library, or be NULL.
void bs_poly_free(struct BsPoly *p);

// Degree, or -1 for the zero polynomial or NULL.
//
// # Safety
// `p` must be a live handle or NULL.
int64_t bs_poly_degree(const struct BsPoly *p);

// Coefficient of `λ^i` as an `int64_t`; `BS_OUT_OF_RANGE` if it does not fit.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum BsStatus bs_poly_coeff_i64(const struct BsPoly *p, size_t i, int64_t *out);

// Coefficient of `λ^i` as a decimal string.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum BsStatus bs_poly_coeff_string(const struct BsPoly *p, size_t i, char **out);

// `{"coeffs": ["c_0", "c_1", ...]}`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum BsStatus bs_poly_to_json(const struct BsPoly *p, char **out);

// Human-readable form such as `λ^3 - 3λ - 2`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum BsStatus bs_poly_to_string(const struct BsPoly *p, char **out);

// Certified smallest eigenvalue of `L(B(d))`. `eps` is the isolation
// width as `"p/q"` or a decimal; NULL selects `2^-40`.
//
// # Safety
// `d` must be a live handle, `eps` NULL or a NUL-terminated string, and
// `out` writable.
enum BsStatus bs_lambda_min(const struct BsDegrees *d, const char *eps, struct BsLambdaMin *out);

// The `lambda-min` report as JSON, with exact interval endpoints.
//
// # Safety
// As for [`bs_lambda_min`], with `out` a writable `char *`.
enum BsStatus bs_lambda_min_json(const struct BsDegrees *d, const char *eps, char **out);

// Family scan over `d_k` in `dk_lo..=dk_hi` as CSV. `BS_CHECK_FAILED` if
// `g_(k-1)` is not constant.
//
// # Safety
// `prefix` must be a NUL-terminated string such as `"1,3"`, `eps` NULL or
// a NUL-terminated string, and `out` writable.
enum BsStatus bs_family_csv(const char *prefix,
                            size_t dk_lo,
                            size_t dk_hi,
                            const char *eps,
                            char **out);

// Corona comparison for `K_n ⊗ K_q`, `K_n ⊗ K_(q-1)` and `L(B(1,q,n))`
// as JSON.
//
// # Safety
// `out` must be writable.
enum BsStatus bs_corona_check_json(size_t n, size_t q, char **out);

// Randomized invariant sweep. Returns `BS_CHECK_FAILED` with the failing
// check and reproducer in [`bs_last_error`] if any check fails.
//
// # Safety
// `passed_checks` must be NULL or writable; it receives the total number
// of passed checks.
enum BsStatus bs_verify(uint64_t seed, uint64_t trials, size_t max_size, uint64_t *passed_checks);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BETHE_SPECTRA_H */
