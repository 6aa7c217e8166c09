#ifndef CODIM_LAB_H
#define CODIM_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a call. The nonzero values of invalid input and exhausted
// budgets match the exit codes of the `codim-lab` binary.
typedef enum CodimStatus {
  CODIM_STATUS_OK = 0,
  CODIM_STATUS_INVALID_INPUT = 2,
  CODIM_STATUS_BUDGET_EXCEEDED = 3,
  CODIM_STATUS_NULL_POINTER = 4,
  // A value does not fit the output type; use the string entry point.
  CODIM_STATUS_OVERFLOW = 5,
  CODIM_STATUS_PANIC = 6,
} CodimStatus;

// An algebra `A(m, w)`.
typedef struct CodimAlgebra CodimAlgebra;

// Resource limits; `time_budget_seconds ≤ 0` means unlimited.
typedef struct CodimBudget {
  uint64_t max_columns;
  uint64_t scan_budget;
  double time_budget_seconds;
} CodimBudget;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version, a static string.
const char *codim_version(void);

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *codim_last_error(void);

// The default budget: 5·10⁶ columns, 10⁵ scanned positions, no time limit.
struct CodimBudget codim_budget_default(void);

// Creates `A(m, w)` from a word specification such as `"fib"` or
// `"periodic:0"`.
//
// # Safety
// `word_spec` must be a NUL-terminated string and `out` a valid pointer.
enum CodimStatus codim_algebra_new(uint32_t m, const char *word_spec, struct CodimAlgebra **out);

// Releases an algebra; null is ignored.
//
// # Safety
// `algebra` must come from [`codim_algebra_new`] and not be used afterwards.
void codim_algebra_free(struct CodimAlgebra *algebra);

// `c_n(A)`, or `c_n(A#)` when `unital`. A null `budget` means the default.
//
// # Safety
// Pointers must be valid; `budget` may be null.
enum CodimStatus codim_codim(const struct CodimAlgebra *algebra,
                             uint32_t n,
                             bool unital,
                             const struct CodimBudget *budget,
                             uint64_t *out);

// `c_n^gr(A)` under a grading string such as `"001"`.
//
// # Safety
// Pointers must be valid; `budget` may be null.
enum CodimStatus codim_graded_codim(const struct CodimAlgebra *algebra,
                                    const char *grading,
                                    uint32_t n,
                                    bool unital,
                                    const struct CodimBudget *budget,
                                    uint64_t *out);

// `c_{k,nk}(A)`: `k` even and `nk` odd variables.
//
// # Safety
// Pointers must be valid; `budget` may be null.
enum CodimStatus codim_partial_codim(const struct CodimAlgebra *algebra,
                                     const char *grading,
                                     uint32_t k,
                                     uint32_t nk,
                                     bool unital,
                                     const struct CodimBudget *budget,
                                     uint64_t *out);

// Dimension of the degree-`(k, nk)` part of the relatively free graded
// algebra in `d0` even and `d1` odd generators.
//
// # Safety
// Pointers must be valid; `budget` may be null.
enum CodimStatus codim_relfree_dim(const struct CodimAlgebra *algebra,
                                   const char *grading,
                                   uint32_t d0,
                                   uint32_t d1,
                                   uint32_t k,
                                   uint32_t nk,
                                   bool unital,
                                   const struct CodimBudget *budget,
                                   uint64_t *out);

// `β = 1/(m + α)` of the algebra.
//
// # Safety
// Pointers must be valid.
enum CodimStatus codim_beta(const struct CodimAlgebra *algebra, double *out);

// `Φ(x, 1 − x)` for `x ∈ [0, 1]`.
//
// # Safety
// `out` must be valid.
enum CodimStatus codim_phi2(double x, double *out);

// Factor complexity `Comp(n)` of a word specification.
//
// # Safety
// `word_spec` must be a NUL-terminated string and `out` valid.
enum CodimStatus codim_complexity(const char *word_spec,
                                  uint32_t n,
                                  uint64_t scan_budget,
                                  uint64_t *out);

// Runs a command-line invocation (without the program name), e.g.
// `{"codim", "--n", "3"}`, and returns its rendered report. The result must
// be released with [`codim_string_free`]. `--output` is ignored.
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings; `out` must be valid.
enum CodimStatus codim_run(size_t argc, const char *const *argv, char **out);

// Releases a string returned by the library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void codim_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CODIM_LAB_H */
