#ifndef CYCLOMAT_H
#define CYCLOMAT_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CYCLOMAT_ABI_VERSION 1

typedef enum CyclomatStatus {
  CYCLOMAT_STATUS_OK = 0,
  CYCLOMAT_STATUS_NULL_POINTER = 1,
  /**
   * Bad modulus, bad kind, or an empty range.
   */
  CYCLOMAT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The requested matrix has no inverse.
   */
  CYCLOMAT_STATUS_SINGULAR = 3,
  CYCLOMAT_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * A panic was caught at the boundary.
   */
  CYCLOMAT_STATUS_INTERNAL = 5,
} CyclomatStatus;

/**
 * Values accepted wherever a `kind` argument is taken.
 */
typedef enum CyclomatKind {
  CYCLOMAT_KIND_SINE = 0,
  CYCLOMAT_KIND_COSINE = 1,
} CyclomatKind;

/**
 * An explicit inverse together with its exact coefficient tables.
 */
typedef struct CyclomatInverse CyclomatInverse;

/**
 * The sine or cosine matrix for one modulus.
 */
typedef struct CyclomatMatrix CyclomatMatrix;

/**
 * Eigenvalues of a sine or cosine matrix, in character order.
 */
typedef struct CyclomatSpectrum CyclomatSpectrum;

typedef struct CyclomatSummary {
  size_t passed;
  size_t failed;
  size_t skipped;
} CyclomatSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null if none. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *cyclomat_last_error_message(void);

uint32_t cyclomat_abi_version(void);

/**
 * `*out` = whether the `kind` matrix for `n` is invertible.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum CyclomatStatus cyclomat_is_invertible(uint64_t n, uint32_t kind, bool *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum CyclomatStatus cyclomat_matrix_new(uint64_t n, uint32_t kind, struct CyclomatMatrix **out);

/**
 * Side length of the matrix, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t cyclomat_matrix_dim(const struct CyclomatMatrix *m);

/**
 * Row-major entries, `dim * dim` doubles.
 *
 * # Safety
 * `m` must be null or a live handle; `buf` must be valid for `len` writes.
 */
enum CyclomatStatus cyclomat_matrix_values(const struct CyclomatMatrix *m, double *buf, size_t len);

/**
 * The symbolic tag of one entry: `value = sign · 2sin(2π·index/n)` (or cos).
 *
 * # Safety
 * `m` must be null or a live handle; the out pointers must be valid for writes.
 */
enum CyclomatStatus cyclomat_matrix_entry(const struct CyclomatMatrix *m,
                                          size_t row,
                                          size_t col,
                                          int8_t *sign,
                                          uint64_t *index,
                                          double *value);

/**
 * The representatives `R` labelling rows and columns, `dim` values.
 *
 * # Safety
 * `m` must be null or a live handle; `buf` must be valid for `len` writes.
 */
enum CyclomatStatus cyclomat_matrix_representatives(const struct CyclomatMatrix *m,
                                                    uint64_t *buf,
                                                    size_t len);

/**
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void cyclomat_matrix_free(struct CyclomatMatrix *m);

/**
 * Fails with `Singular` when the matrix has no inverse; the message names
 * the offending square divisor.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum CyclomatStatus cyclomat_inverse_new(uint64_t n, uint32_t kind, struct CyclomatInverse **out);

/**
 * # Safety
 * `inv` must be null or a live handle.
 */
size_t cyclomat_inverse_dim(const struct CyclomatInverse *inv);

/**
 * Row-major entries of the inverse, `dim * dim` doubles.
 *
 * # Safety
 * `inv` must be null or a live handle; `buf` must be valid for `len` writes.
 */
enum CyclomatStatus cyclomat_inverse_values(const struct CyclomatInverse *inv,
                                            double *buf,
                                            size_t len);

/**
 * Common denominator of the coefficient tables (equal to `n`), or 0 for a
 * null handle.
 *
 * # Safety
 * `inv` must be null or a live handle.
 */
uint64_t cyclomat_inverse_denominator(const struct CyclomatInverse *inv);

/**
 * Integer numerators, `dim * dim` values: row `i` expands the hatted
 * element for the `i`-th representative over the plain ones.
 *
 * # Safety
 * `inv` must be null or a live handle; `buf` must be valid for `len` writes.
 */
enum CyclomatStatus cyclomat_inverse_numerators(const struct CyclomatInverse *inv,
                                                int64_t *buf,
                                                size_t len);

/**
 * # Safety
 * `inv` must be null or a handle not yet freed.
 */
void cyclomat_inverse_free(struct CyclomatInverse *inv);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum CyclomatStatus cyclomat_spectrum_new(uint64_t n, uint32_t kind, struct CyclomatSpectrum **out);

/**
 * # Safety
 * `s` must be null or a live handle.
 */
size_t cyclomat_spectrum_len(const struct CyclomatSpectrum *s);

/**
 * # Safety
 * `s` must be null or a live handle.
 */
size_t cyclomat_spectrum_zero_count(const struct CyclomatSpectrum *s);

/**
 * Real and imaginary parts into two buffers of `len` doubles each.
 *
 * # Safety
 * `s` must be null or a live handle; `re` and `im` must be valid for `len` writes.
 */
enum CyclomatStatus cyclomat_spectrum_eigenvalues(const struct CyclomatSpectrum *s,
                                                  double *re,
                                                  double *im,
                                                  size_t len);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void cyclomat_spectrum_free(struct CyclomatSpectrum *s);

/**
 * Runs every check with default tolerances for `n_min..=n_max`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum CyclomatStatus cyclomat_verify(uint64_t n_min, uint64_t n_max, struct CyclomatSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLOMAT_H */
