#ifndef MLMKIT_H
#define MLMKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum MlmStatus {
  MLM_STATUS_OK = 0,
  MLM_STATUS_VALIDATION = 1,
  MLM_STATUS_SHAPE = 2,
  MLM_STATUS_SYNTAX = 3,
  // A table-size, work or search cap was hit.
  MLM_STATUS_RESOURCE = 4,
  MLM_STATUS_NULL_ARGUMENT = 5,
  MLM_STATUS_INVALID_UTF8 = 6,
  // Internal failure; the library state is unaffected.
  MLM_STATUS_PANIC = 7,
} MlmStatus;

// A parsed clause list or circuit.
typedef struct MlmPoly MlmPoly;

// Multilinear monomials of a polynomial with their coefficients.
typedef struct MlmTable MlmTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a
// successful call. Valid until the next call on the same thread.
const char *mlm_last_error(void);

// Parses a clause list or a circuit (detected from the text).
//
// # Safety
// `text` is a nul-terminated string; `out` is writable.
enum MlmStatus mlm_poly_parse(const char *text, struct MlmPoly **out);

// # Safety
// `p` is null or a handle from [`mlm_poly_parse`] not yet freed.
void mlm_poly_free(struct MlmPoly *p);

// Number of variables, or 0 for a null handle.
//
// # Safety
// `p` is null or a live handle.
size_t mlm_poly_num_vars(const struct MlmPoly *p);

// # Safety
// `p` is null or a live handle.
bool mlm_poly_is_circuit(const struct MlmPoly *p);

// Canonical text of the polynomial or circuit.
//
// # Safety
// `p` is a live handle; `out` is writable. Free the string with
// [`mlm_string_free`].
enum MlmStatus mlm_poly_format(const struct MlmPoly *p, char **out);

// Computes the multilinear table. A zero limit selects the default.
//
// # Safety
// `p` is a live handle; `out` is writable.
enum MlmStatus mlm_poly_evaluate(const struct MlmPoly *p,
                                 size_t max_table_entries,
                                 uint64_t max_total_work,
                                 struct MlmTable **out);

// Longest multilinear monomial from disjoint terms of distinct clauses,
// greedy or exhaustive. Writes its length and its variables as `x1,x3`.
//
// # Safety
// `p` is a live handle; the out-pointers are writable.
enum MlmStatus mlm_poly_max_mlm(const struct MlmPoly *p,
                                bool exact,
                                size_t *out_length,
                                char **out_vars);

// # Safety
// `t` is null or a handle from [`mlm_poly_evaluate`] not yet freed.
void mlm_table_free(struct MlmTable *t);

// Number of monomials with a non-zero coefficient, or 0 for null.
//
// # Safety
// `t` is null or a live handle.
size_t mlm_table_len(const struct MlmTable *t);

// Coefficient of a monomial written like `x1*x3` (`1` for the constant).
//
// # Safety
// `t` is a live handle, `monomial` a nul-terminated string, `out` writable.
enum MlmStatus mlm_table_coefficient(const struct MlmTable *t, const char *monomial, char **out);

// Sum of all coefficients.
//
// # Safety
// `t` is a live handle; `out` is writable.
enum MlmStatus mlm_table_sum(const struct MlmTable *t, char **out);

// One `<vars> <coefficient>` line per monomial, in canonical order.
//
// # Safety
// `t` is a live handle; `out` is writable.
enum MlmStatus mlm_table_format(const struct MlmTable *t, char **out);

// Permanent of a matrix given as CSV rows of signed integers.
//
// # Safety
// `csv` is a nul-terminated string; `out` is writable.
enum MlmStatus mlm_permanent(const char *csv, char **out);

// Perfect matchings of a bipartite graph in `bigraph <t>` / `e i j` form.
//
// # Safety
// `graph` is a nul-terminated string; `out` is writable.
enum MlmStatus mlm_count_perfect_matchings(const char *graph, char **out);

// # Safety
// `s` is null or a string returned by this library, not yet freed.
void mlm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MLMKIT_H */
