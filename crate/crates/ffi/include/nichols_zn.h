#ifndef NICHOLS_ZN_H
#define NICHOLS_ZN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum NzStatus {
  NZ_STATUS_OK = 0,
  NZ_STATUS_INVALID_INPUT = 1,
  NZ_STATUS_BUDGET_EXCEEDED = 2,
  NZ_STATUS_UNSUPPORTED = 3,
  NZ_STATUS_BUFFER_TOO_SMALL = 4,
  NZ_STATUS_NULL_POINTER = 5,
  NZ_STATUS_INTERNAL = 6,
} NzStatus;

/**
 * Opaque braiding matrix.
 */
typedef struct NzMatrix NzMatrix;

/**
 * Outcome of a classification. `m` and `m2` are 0 when absent.
 */
typedef struct NzVerdict {
  /**
   * Index into the label list; see [`nz_label_name`].
   */
  uint32_t label;
  uint64_t m;
  uint64_t m2;
} NzVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Number of labels; valid indices are `0..nz_label_count()`.
 */
uint32_t nz_label_count(void);

/**
 * Static, NUL-terminated display name of a label, or null when out of range.
 */
const char *nz_label_name(uint32_t label);

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `cap - 1` bytes) and returns the full message length.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t nz_last_error_message(char *buf, size_t cap);

/**
 * Builds a matrix from `rank * rank` row-major exponents; negative values
 * are reduced mod `n`, values `>= n` are rejected.
 *
 * # Safety
 * `exponents` must point to `rank * rank` readable values and `out` must be writable.
 */
enum NzStatus nz_matrix_new(uint64_t n,
                            size_t rank,
                            const int64_t *exponents,
                            struct NzMatrix **out);

/**
 * Releases a matrix; null is ignored.
 *
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void nz_matrix_free(struct NzMatrix *m);

/**
 * # Safety
 * `m` must be a live handle or null.
 */
size_t nz_matrix_rank(const struct NzMatrix *m);

/**
 * # Safety
 * `m` must be a live handle or null.
 */
uint64_t nz_matrix_modulus(const struct NzMatrix *m);

/**
 * Entry `(i, j)`, 0-based.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum NzStatus nz_matrix_get(const struct NzMatrix *m, size_t i, size_t j, uint64_t *out);

/**
 * Searches for `x`, `y` with `x_i·y_j ≡ a_ij`. On success `*found` says
 * whether a witness exists; if so it is written to `x` and `y`, each of
 * length `rank`.
 *
 * # Safety
 * `m` must be a live handle; `x`, `y` must hold `rank` values; `found` writable.
 */
enum NzStatus nz_realize(const struct NzMatrix *m, uint64_t *x, uint64_t *y, bool *found);

/**
 * Classifies the matrix's diagram (any rank).
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum NzStatus nz_classify(const struct NzMatrix *m, struct NzVerdict *out);

/**
 * Classifies the rank-two diagram with vertex exponents `d1`, `d2` and edge `e` over ℤₙ.
 *
 * # Safety
 * `out` must be writable.
 */
enum NzStatus nz_classify_rank2(uint64_t n,
                                int64_t d1,
                                int64_t d2,
                                int64_t e,
                                struct NzVerdict *out);

/**
 * Reflection at `vertex` (0-based) into a new handle.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum NzStatus nz_weyl_reflect(const struct NzMatrix *m, size_t vertex, struct NzMatrix **out);

/**
 * Solutions of `a·x² + b·x + c ≡ 0 (mod m)` in increasing order. `*len` is
 * always set to the number of solutions; `BufferTooSmall` is returned when
 * it exceeds `cap`, with nothing written.
 *
 * # Safety
 * `out` must hold `cap` values (may be null when `cap` is 0); `len` writable.
 */
enum NzStatus nz_solve_quadratic(int64_t a,
                                 int64_t b,
                                 int64_t c,
                                 uint64_t m,
                                 uint64_t *out,
                                 size_t cap,
                                 size_t *len);

/**
 * Legendre symbol `(a/p)` for an odd prime `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum NzStatus nz_legendre(int64_t a, uint64_t p, int8_t *out);

/**
 * Dimension of rank-three class `class` (1, 2 or 3); pass 0 for an absent
 * `m` or `m2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum NzStatus nz_rank3_dimension(uint32_t class_, uint64_t m, uint64_t m2, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NICHOLS_ZN_H */
