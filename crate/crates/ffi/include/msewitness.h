#ifndef MSEWITNESS_H
#define MSEWITNESS_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum MseStatus {
  MSE_STATUS_OK = 0,
  MSE_STATUS_NULL_POINTER = 1,
  MSE_STATUS_INVALID_UTF8 = 2,
  MSE_STATUS_DIMENSION_MISMATCH = 3,
  MSE_STATUS_NOT_HERMITIAN = 4,
  MSE_STATUS_INVALID_PARTITION = 5,
  MSE_STATUS_PARTITION_MISMATCH = 6,
  MSE_STATUS_INDEX_OUT_OF_RANGE = 7,
  MSE_STATUS_EIGEN_DECOMPOSITION_FAILURE = 8,
  MSE_STATUS_NO_CONVERGED_SOLUTION = 9,
  MSE_STATUS_INVALID_ARGUMENT = 10,
  MSE_STATUS_UNSUPPORTED_SPACE = 11,
  MSE_STATUS_DIMENSION_GUARD = 12,
  MSE_STATUS_NOT_DENSITY_MATRIX = 13,
  MSE_STATUS_FORMAT = 14,
  MSE_STATUS_PANIC = 15,
} MseStatus;

typedef enum MseMode {
  MSE_MODE_SUP = 0,
  MSE_MODE_INF = 1,
} MseMode;

// Density matrix on a composite space.
typedef struct MseDensity MseDensity;

// Hermitian operator on a composite space.
typedef struct MseOperator MseOperator;

// Partition of the subsystems into blocks.
typedef struct MsePartition MsePartition;

// Witness `f_sup·1 − L` with its solver report.
typedef struct MseWitness MseWitness;

// Solver settings; start from [`mse_solver_config_default`].
typedef struct MseSolverConfig {
  enum MseMode mode;
  double tol_g;
  double tol_residual;
  uintptr_t max_iter;
  uintptr_t n_starts;
  uint64_t seed;
  double dedup_tol;
} MseSolverConfig;

typedef struct MseVerdict {
  // `tr(ρW)` for witnesses, the criterion margin otherwise.
  double value;
  bool detected;
  enum MseMode side;
} MseVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *mse_last_error_message(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string returned by this library, freed once.
void mse_string_free(char *s);

// Builds an operator from row-major real and imaginary parts of length
// `D²`, `D = ∏ dims`. `im` may be null for a real matrix.
//
// # Safety
// `dims` must point to `n_dims` values; `re` (and `im` if non-null) to
// `D²` values; `out` must be writable.
enum MseStatus mse_operator_new(const uintptr_t *dims,
                                uintptr_t n_dims,
                                const double *re,
                                const double *im,
                                struct MseOperator **out);

// Parses an operator from its JSON form `{"dims", "re", "im"}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum MseStatus mse_operator_from_json(const char *json, struct MseOperator **out);

// Total Hilbert-space dimension of `op`, or 0 for null.
//
// # Safety
// `op` must be null or a live operator handle.
uintptr_t mse_operator_dim(const struct MseOperator *op);

// # Safety
// `op` must be null or a live operator handle, freed once.
void mse_operator_free(struct MseOperator *op);

// Parses a 1-based partition such as `"1,2:3"` over `n` subsystems.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum MseStatus mse_partition_parse(const char *spec, uintptr_t n, struct MsePartition **out);

// # Safety
// `p` must be null or a live partition handle, freed once.
void mse_partition_free(struct MsePartition *p);

struct MseSolverConfig mse_solver_config_default(void);

// Extremal MSEvalue of `op` under `part` in `cfg->mode`.
//
// # Safety
// All pointers must be live handles or valid for reads/writes.
enum MseStatus mse_f_bound(const struct MseOperator *op,
                           const struct MsePartition *part,
                           const struct MseSolverConfig *cfg,
                           double *out);

// Full solution set as JSON; free the string with [`mse_string_free`].
//
// # Safety
// All pointers must be live handles or valid for reads/writes.
enum MseStatus mse_solve_json(const struct MseOperator *op,
                              const struct MsePartition *part,
                              const struct MseSolverConfig *cfg,
                              char **out);

// Builds `W = f_sup(L)·1 − L`; `cfg->mode` is ignored.
//
// # Safety
// All pointers must be live handles or valid for reads/writes.
enum MseStatus mse_witness_build(const struct MseOperator *op,
                                 const struct MsePartition *part,
                                 const struct MseSolverConfig *cfg,
                                 struct MseWitness **out);

// Parses a witness bundle as written by [`mse_witness_to_json`].
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum MseStatus mse_witness_from_json(const char *json, struct MseWitness **out);

// # Safety
// `w` must be a live witness handle; `out` must be writable.
enum MseStatus mse_witness_f_sup(const struct MseWitness *w, double *out);

// # Safety
// `w` must be a live witness handle; `out` must be writable.
enum MseStatus mse_witness_to_json(const struct MseWitness *w, char **out);

// # Safety
// `w` must be null or a live witness handle, freed once.
void mse_witness_free(struct MseWitness *w);

// Parses a state: a vector `{"dims", "re", "im"}` or a density matrix.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum MseStatus mse_state_from_json(const char *json, struct MseDensity **out);

// # Safety
// `rho` must be null or a live density handle, freed once.
void mse_density_free(struct MseDensity *rho);

// `tr(ρW)` and whether it signals entanglement.
//
// # Safety
// All pointers must be live handles or valid for writes.
enum MseStatus mse_witness_evaluate(const struct MseWitness *w,
                                    const struct MseDensity *rho,
                                    struct MseVerdict *out);

// Compares `tr(ρL)` with both separable bounds of `op` under `part`.
//
// # Safety
// All pointers must be live handles or valid for reads/writes.
enum MseStatus mse_criterion(const struct MseOperator *op,
                             const struct MseDensity *rho,
                             const struct MsePartition *part,
                             const struct MseSolverConfig *cfg,
                             struct MseVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MSEWITNESS_H */
