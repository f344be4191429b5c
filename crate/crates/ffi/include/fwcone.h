#ifndef FWCONE_H
#define FWCONE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

typedef enum FwStatus {
  FW_OK = 0,
  FW_NULL_POINTER = 1,
  FW_INVALID_ARGUMENT = 2,
  FW_DIMENSION_MISMATCH = 3,
  FW_NOT_SYMMETRIC = 4,
  FW_NON_CONVERGENCE = 5,
  FW_INTERNAL = 6,
  FW_PANIC = 7,
} FwStatus;

typedef enum FwVerdict {
  FW_MEMBER = 0,
  FW_NON_MEMBER = 1,
  FW_INCONCLUSIVE = 2,
} FwVerdict;

/**
 * Verified separating certificate `B` with `<B, A> < 0`.
 */
typedef struct FwCertificate FwCertificate;

/**
 * Symmetric real matrix.
 */
typedef struct FwMatrix FwMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or null. Valid until the next call into the library.
 */
const char *fw_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fw_version(void);

/**
 * Builds an `n×n` matrix from `n*n` row-major entries. Rejects asymmetric input.
 *
 * # Safety
 * `data` must point to `n*n` doubles and `out` must be writable.
 */
enum FwStatus fw_matrix_new(const double *data, size_t n, struct FwMatrix **out);

/**
 * # Safety
 * `m` must be null or come from [`fw_matrix_new`], and not be freed twice.
 */
void fw_matrix_free(struct FwMatrix *m);

/**
 * Dimension of `m`, or 0 for null.
 *
 * # Safety
 * `m` must be null or a live matrix.
 */
size_t fw_matrix_dim(const struct FwMatrix *m);

/**
 * Smallest eigenvalue of `m`.
 *
 * # Safety
 * `m` must be a live matrix and `out` writable.
 */
enum FwStatus fw_min_eigenvalue(const struct FwMatrix *m, double *out);

/**
 * Decides `m ∈ FW_k^n`. `max_iter == 0` uses the default budget.
 *
 * On a non-member verdict and non-null `cert_out`, the certificate is stored there;
 * otherwise `*cert_out` is set to null.
 *
 * # Safety
 * `m` must be a live matrix, `verdict` writable, `cert_out` null or writable.
 */
enum FwStatus fw_check_membership(const struct FwMatrix *m,
                                  size_t k,
                                  size_t max_iter,
                                  enum FwVerdict *verdict,
                                  struct FwCertificate **cert_out);

/**
 * Checks every `k×k` principal submatrix for psd-ness at relative tolerance `tol`.
 *
 * # Safety
 * `m` must be a live matrix; `is_member` writable; `worst_margin` null or writable.
 */
enum FwStatus fw_check_dual(const struct FwMatrix *m,
                            size_t k,
                            double tol,
                            bool *is_member,
                            double *worst_margin);

/**
 * Searches for a separating certificate. `*out` is null when none was found.
 *
 * # Safety
 * `m` must be a live matrix and `out` writable.
 */
enum FwStatus fw_certify(const struct FwMatrix *m, size_t k, struct FwCertificate **out);

/**
 * `<B, A>` for the target the certificate was built against.
 *
 * # Safety
 * `c` must be null or a live certificate.
 */
double fw_certificate_value(const struct FwCertificate *c);

/**
 * Copies `B` row-major into `buf`, which must hold `n*n` doubles (`len` of them).
 *
 * # Safety
 * `c` must be a live certificate and `buf` valid for `len` writes.
 */
enum FwStatus fw_certificate_matrix(const struct FwCertificate *c, double *buf, size_t len);

/**
 * Certificate as JSON. Release with [`fw_string_free`].
 *
 * # Safety
 * `c` must be a live certificate and `out` writable.
 */
enum FwStatus fw_certificate_json(const struct FwCertificate *c, char **out);

/**
 * # Safety
 * `c` must be null or a certificate returned by this library, not freed twice.
 */
void fw_certificate_free(struct FwCertificate *c);

/**
 * Threshold `(n-1)/(k-1)` for the uniform family. `text`, if non-null, receives the
 * exact value as a string such as "3/2"; release it with [`fw_string_free`].
 *
 * # Safety
 * `value` must be writable; `text` null or writable.
 */
enum FwStatus fw_pna_threshold(size_t n, size_t k, double *value, char **text);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not freed twice.
 */
void fw_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FWCONE_H */
