#ifndef CANTOR_SPECTRAL_H
#define CANTOR_SPECTRAL_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a library call. `CS_STATUS_OK` is zero.
 */
typedef enum CsStatus {
  CS_STATUS_OK = 0,
  CS_STATUS_DOMAIN = 1,
  CS_STATUS_CONTRACT = 2,
  CS_STATUS_PARAMETER = 3,
  CS_STATUS_RESOURCE = 4,
  CS_STATUS_PRECISION = 5,
  CS_STATUS_RESOLUTION = 6,
  CS_STATUS_RANGE = 7,
  CS_STATUS_FIT = 8,
  CS_STATUS_IO = 9,
  CS_STATUS_FORMAT = 10,
  CS_STATUS_NULL_POINTER = 11,
  CS_STATUS_BUFFER_TOO_SMALL = 12,
  CS_STATUS_PANIC = 13,
} CsStatus;

/**
 * Analytic outer function with coefficients `0..=M`.
 */
typedef struct CsOuter CsOuter;

/**
 * Trigonometric polynomial.
 */
typedef struct CsSeries CsSeries;

/**
 * Perfect symmetric set `E_ξ`.
 */
typedef struct CsSet CsSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null if none.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *cs_last_error_message(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *cs_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void cs_string_free(char *s);

/**
 * Creates `E_ξ` for `ξ ∈ (0, 1/2)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CsStatus cs_set_new(double xi, struct CsSet **out);

/**
 * Creates `E_{1/q}` with exact rational endpoints.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CsStatus cs_set_from_q(uint32_t q, struct CsSet **out);

/**
 * # Safety
 * `set` must be null or a handle from `cs_set_new`/`cs_set_from_q` not yet freed.
 */
void cs_set_free(struct CsSet *set);

/**
 * Critical exponent `b(ξ)`.
 *
 * # Safety
 * `set` must be a live handle and `out` valid for writes.
 */
enum CsStatus cs_set_critical_exponent(const struct CsSet *set, double *out);

/**
 * Writes the `2^level` arcs of the level cover as `(start, length)` pairs.
 *
 * `count` receives `2^level` even when `capacity` is too small, in which
 * case nothing else is written and `CS_STATUS_BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `set` must be a live handle; `starts` and `lengths` must be valid for
 * `capacity` writes; `count` must be valid for writes.
 */
enum CsStatus cs_set_level_arcs(const struct CsSet *set,
                                uint32_t level,
                                double *starts,
                                double *lengths,
                                size_t capacity,
                                size_t *count);

/**
 * Encloses the distance from `e^{it}` to the set using the level-`level`
 * cover. `chordal` selects `|e^{it} - e^{iθ}|` instead of arc length.
 *
 * # Safety
 * `set` must be a live handle; `lower` and `upper` must be valid for writes.
 */
enum CsStatus cs_set_distance(const struct CsSet *set,
                              double t,
                              uint32_t level,
                              bool chordal,
                              double *lower,
                              double *upper);

/**
 * Builds `Σ c_k e^{i n_k t}` from `len` triples `(n_k, re_k, im_k)`.
 * Repeated indices are summed.
 *
 * # Safety
 * `indices`, `re` and `im` must be valid for `len` reads; `out` valid for writes.
 */
enum CsStatus cs_series_new(const int64_t *indices,
                            const double *re,
                            const double *im,
                            size_t len,
                            struct CsSeries **out);

/**
 * Parses the JSON series format `{"M": m, "coeffs": [[n, re, im], ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` valid for writes.
 */
enum CsStatus cs_series_from_json(const char *json, struct CsSeries **out);

/**
 * Serializes a series; free the result with `cs_string_free`.
 *
 * # Safety
 * `series` must be a live handle; `out` valid for writes.
 */
enum CsStatus cs_series_to_json(const struct CsSeries *series, char **out);

/**
 * # Safety
 * `series` must be null or a live series handle.
 */
void cs_series_free(struct CsSeries *series);

/**
 * `f(e^{it})`.
 *
 * # Safety
 * `series` must be a live handle; `re` and `im` valid for writes.
 */
enum CsStatus cs_series_eval(const struct CsSeries *series, double t, double *re, double *im);

/**
 * `‖f‖_s = Σ |f̂(n)| (1+|n|)^s`.
 *
 * # Safety
 * `series` must be a live handle; `out` valid for writes.
 */
enum CsStatus cs_series_sobolev_norm(const struct CsSeries *series, double s, double *out);

/**
 * Interpolant norm `‖f_{N,0}‖_s` and the bound `K(s)‖f‖_s`, for `0 ≤ s < 1`.
 *
 * # Safety
 * `series` must be a live handle; `norm`, `bound` and `holds` valid for writes.
 */
enum CsStatus cs_herz_bound(const struct CsSeries *series,
                            size_t nodes,
                            double s,
                            double *norm,
                            double *bound,
                            bool *holds);

/**
 * `‖f - f_{N,⌊s⌋}‖_s`.
 *
 * # Safety
 * `series` must be a live handle; `out` valid for writes.
 */
enum CsStatus cs_herz_error_norm(const struct CsSeries *series,
                                 size_t nodes,
                                 double s,
                                 double *out);

/**
 * Outer function with modulus `exp(-d(e^{it}, E_{1/q})^{-δ})` on a grid of
 * `grid` points, truncated to degree `m`. `delta <= 0` selects the
 * admissible exponent derived from `beta`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CsStatus cs_outer_build(uint32_t q,
                             double beta,
                             double delta,
                             size_t grid,
                             size_t m,
                             double clamp,
                             struct CsOuter **out);

/**
 * # Safety
 * `outer` must be null or a live outer handle.
 */
void cs_outer_free(struct CsOuter *outer);

/**
 * Copies `f̂(0..=M)`; `count` receives `M + 1`. Same buffer protocol as
 * `cs_set_level_arcs`.
 *
 * # Safety
 * `outer` must be a live handle; `re` and `im` valid for `capacity` writes;
 * `count` valid for writes.
 */
enum CsStatus cs_outer_coeffs(const struct CsOuter *outer,
                              double *re,
                              double *im,
                              size_t capacity,
                              size_t *count);

/**
 * `max |f(z^{q^m})|` over the level-`level` endpoints of `E_{1/q}`.
 *
 * # Safety
 * `outer` must be a live handle; `out` valid for writes.
 */
enum CsStatus cs_outer_annihilation_residual(const struct CsOuter *outer,
                                             uint32_t q,
                                             uint32_t m,
                                             uint32_t level,
                                             double *out);

/**
 * Upper bound for the `s`-norm of the `n`-th inverse power.
 *
 * # Safety
 * `outer` must be a live handle; `out` valid for writes.
 */
enum CsStatus cs_outer_inverse_power_bound(const struct CsOuter *outer,
                                           uint32_t q,
                                           uint64_t n,
                                           double s,
                                           double *out);

/**
 * Certified lower bounds for `‖T^{-n}‖` on the model space of the singular
 * inner function built from the level-`measure_level` Cantor measure of
 * `E_ξ` (total mass 2π, left endpoints), truncated to degree `m`.
 * `amplification` fixes the evaluation radius `r = A^{-1/m}`.
 *
 * # Safety
 * `ns` must be valid for `len` reads and `out` for `len` writes.
 */
enum CsStatus cs_model_lower_bounds(double xi,
                                    uint32_t measure_level,
                                    size_t m,
                                    double amplification,
                                    const size_t *ns,
                                    size_t len,
                                    double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CANTOR_SPECTRAL_H */
