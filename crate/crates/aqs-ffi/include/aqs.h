#ifndef AQS_H
#define AQS_H

/* Auto-generated from the aqs-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the core error variants.
 */
typedef enum AqsStatus {
  AQS_STATUS_OK = 0,
  AQS_STATUS_NULL_POINTER = 1,
  AQS_STATUS_INVALID_ARGUMENT = 2,
  AQS_STATUS_ZERO_NORM = 3,
  AQS_STATUS_NON_FINITE = 4,
  AQS_STATUS_DIM_MISMATCH = 5,
  AQS_STATUS_NOT_HERMITIAN = 6,
  AQS_STATUS_MODE_OUT_OF_RANGE = 7,
  AQS_STATUS_PORTFOLIO_TOO_SMALL = 8,
  AQS_STATUS_STATE_ANNIHILATED = 9,
  AQS_STATUS_CONSTANT_VECTOR = 10,
  AQS_STATUS_TOO_FEW_POINTS = 11,
  AQS_STATUS_SCORE_OUT_OF_RANGE = 12,
  AQS_STATUS_RUNTIME_ERROR = 13,
} AqsStatus;

/**
 * Opaque dense-operator handle.
 */
typedef struct AqsOperator AqsOperator;

/**
 * Opaque unit-norm state handle.
 */
typedef struct AqsState AqsState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid
 * until the next call on the same thread.
 */
const char *aqs_last_error(void);

/**
 * Creates a state from `dim` (re, im) amplitude pairs, normalizing.
 *
 * # Safety
 * `re` and `im` must point to `dim` readable doubles; `out` must be a
 * valid out-pointer. The returned handle must be freed with
 * [`aqs_state_free`].
 */
enum AqsStatus aqs_state_new(size_t dim, const double *re, const double *im, struct AqsState **out);

/**
 * Creates the computational basis state |index⟩ in `dim` dimensions.
 *
 * # Safety
 * `out` must be a valid out-pointer; free the handle with
 * [`aqs_state_free`].
 */
enum AqsStatus aqs_state_basis(size_t dim, size_t index, struct AqsState **out);

/**
 * Frees a state handle (NULL is a no-op).
 *
 * # Safety
 * `state` must be a handle returned by this library, not yet freed.
 */
void aqs_state_free(struct AqsState *state);

/**
 * Dimension of a state, or 0 for NULL.
 *
 * # Safety
 * `state` must be NULL or a live handle.
 */
size_t aqs_state_dim(const struct AqsState *state);

/**
 * Copies the amplitudes into caller buffers of length `aqs_state_dim`.
 *
 * # Safety
 * `re_out` and `im_out` must point to `aqs_state_dim(state)` writable
 * doubles.
 */
enum AqsStatus aqs_state_amplitudes(const struct AqsState *state, double *re_out, double *im_out);

/**
 * |⟨a|b⟩| into `out`.
 *
 * # Safety
 * `a`, `b` must be live state handles; `out` a valid out-pointer.
 */
enum AqsStatus aqs_state_fidelity(const struct AqsState *a, const struct AqsState *b, double *out);

/**
 * Creates a dense operator from row-major `dim × dim` (re, im) entries.
 *
 * # Safety
 * `re` and `im` must point to `dim*dim` readable doubles; free the handle
 * with [`aqs_operator_free`].
 */
enum AqsStatus aqs_operator_new(size_t dim,
                                const double *re,
                                const double *im,
                                struct AqsOperator **out);

/**
 * Frees an operator handle (NULL is a no-op).
 *
 * # Safety
 * `op` must be a handle returned by this library, not yet freed.
 */
void aqs_operator_free(struct AqsOperator *op);

/**
 * Dimension of an operator, or 0 for NULL.
 *
 * # Safety
 * `op` must be NULL or a live handle.
 */
size_t aqs_operator_dim(const struct AqsOperator *op);

/**
 * Copies the entries into row-major caller buffers of length `dim*dim`.
 *
 * # Safety
 * `re_out`, `im_out` must point to `dim*dim` writable doubles.
 */
enum AqsStatus aqs_operator_entries(const struct AqsOperator *op, double *re_out, double *im_out);

/**
 * Matrix product a·b (apply b first on kets).
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid out-pointer.
 */
enum AqsStatus aqs_operator_compose(const struct AqsOperator *a,
                                    const struct AqsOperator *b,
                                    struct AqsOperator **out);

/**
 * Commutator [a, b] = a·b − b·a.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` a valid out-pointer.
 */
enum AqsStatus aqs_operator_commutator(const struct AqsOperator *a,
                                       const struct AqsOperator *b,
                                       struct AqsOperator **out);

/**
 * Conjugate transpose.
 *
 * # Safety
 * `op` must be a live handle; `out` a valid out-pointer.
 */
enum AqsStatus aqs_operator_adjoint(const struct AqsOperator *op, struct AqsOperator **out);

/**
 * Unnormalized image A|ψ⟩ into caller buffers plus its norm.
 *
 * # Safety
 * Buffers must hold `aqs_state_dim`-many doubles; `norm_out` must be
 * valid.
 */
enum AqsStatus aqs_operator_apply(const struct AqsOperator *op,
                                  const struct AqsState *state,
                                  double *raw_re,
                                  double *raw_im,
                                  double *norm_out);

/**
 * ⟨ψ|A|ψ⟩ into (re_out, im_out).
 *
 * # Safety
 * Handles must be live; out-pointers valid.
 */
enum AqsStatus aqs_operator_expectation(const struct AqsOperator *op,
                                        const struct AqsState *state,
                                        double *re_out,
                                        double *im_out);

/**
 * Standard deviation of a Hermitian operator at a state.
 *
 * # Safety
 * Handles must be live; `out` valid.
 */
enum AqsStatus aqs_operator_std_dev(const struct AqsOperator *op,
                                    const struct AqsState *state,
                                    double *out);

/**
 * Writes 1 into `out` iff the operator is Hermitian within `tol`.
 *
 * # Safety
 * `op` must be a live handle; `out` valid.
 */
enum AqsStatus aqs_operator_is_hermitian(const struct AqsOperator *op, double tol, int *out);

/**
 * Dimension (cutoff+1)^modes of a truncated Fock space.
 *
 * # Safety
 * `out` must be a valid out-pointer.
 */
enum AqsStatus aqs_fock_dim(size_t modes, size_t cutoff, size_t *out);

/**
 * Annihilation operator for one mode (zero-indexed) of a truncated Fock
 * space.
 *
 * # Safety
 * `out` must be a valid out-pointer; free with [`aqs_operator_free`].
 */
enum AqsStatus aqs_fock_annihilation(size_t modes,
                                     size_t cutoff,
                                     size_t mode,
                                     struct AqsOperator **out);

/**
 * Creation operator (adjoint of annihilation; zero at the cutoff).
 *
 * # Safety
 * `out` must be a valid out-pointer; free with [`aqs_operator_free`].
 */
enum AqsStatus aqs_fock_creation(size_t modes,
                                 size_t cutoff,
                                 size_t mode,
                                 struct AqsOperator **out);

/**
 * Number operator a†a for one mode.
 *
 * # Safety
 * `out` must be a valid out-pointer; free with [`aqs_operator_free`].
 */
enum AqsStatus aqs_fock_number(size_t modes, size_t cutoff, size_t mode, struct AqsOperator **out);

/**
 * Basis state for an occupation tuple of length `modes`.
 *
 * # Safety
 * `occupation` must point to `modes` readable values; free the handle
 * with [`aqs_state_free`].
 */
enum AqsStatus aqs_fock_basis_state(size_t modes,
                                    size_t cutoff,
                                    const size_t *occupation,
                                    struct AqsState **out);

/**
 * C = |⟨ψ|[A,B]|ψ⟩| into `out`.
 *
 * # Safety
 * Handles must be live; `out` valid.
 */
enum AqsStatus aqs_c_value(const struct AqsOperator *a,
                           const struct AqsOperator *b,
                           const struct AqsState *state,
                           double *out);

/**
 * σ_A·σ_B − C/2 for Hermitian operators into `out`.
 *
 * # Safety
 * Handles must be live; `out` valid.
 */
enum AqsStatus aqs_robertson_gap(const struct AqsOperator *a,
                                 const struct AqsOperator *b,
                                 const struct AqsState *state,
                                 double *out);

/**
 * Pearson correlation of two length-`len` vectors.
 *
 * # Safety
 * `u`, `v` must point to `len` readable doubles; `out` valid.
 */
enum AqsStatus aqs_pearson(const double *u, const double *v, size_t len, double *out);

/**
 * T-scores (mean 50, population std 10) of `len` values into `out`.
 *
 * # Safety
 * `values` and `out` must point to `len` doubles (readable/writable).
 */
enum AqsStatus aqs_t_scores(const double *values, size_t len, double *out);

/**
 * Runs a full experiment from a scenario-config JSON string, writing
 * artifacts exactly like the `aqslab` binary. Returns the CLI exit
 * semantics: 0 success, 1 validation error, 2 runtime error (and -1 for
 * null/invalid UTF-8 input).
 *
 * # Safety
 * `config_json` must be a NUL-terminated UTF-8 string.
 */
int aqs_run_scenario_json(const char *config_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AQS_H */
