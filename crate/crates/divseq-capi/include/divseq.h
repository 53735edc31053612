#ifndef DIVSEQ_H
#define DIVSEQ_H

/* Generated from src/lib.rs by the build script; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call. `Ok`/`Fail` both mean the computation ran; `Fail`
 * marks a verified property violation, mirroring CLI exit codes 0 and 1.
 */
typedef enum DivseqStatus {
  DIVSEQ_STATUS_OK = 0,
  DIVSEQ_STATUS_FAIL = 1,
  DIVSEQ_STATUS_USAGE = 2,
  DIVSEQ_STATUS_DEGENERATE = 3,
  DIVSEQ_STATUS_NULL_POINTER = 4,
  DIVSEQ_STATUS_PANIC = 5,
} DivseqStatus;

/**
 * Opaque sequence table handle.
 */
typedef struct DivseqTable DivseqTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *divseq_version(void);

/**
 * Message for the most recent failure on this thread, or null if the
 * last call succeeded. Caller frees with `divseq_string_free`.
 */
char *divseq_last_error_message(void);

/**
 * Release a string returned by this library. Null is a no-op.
 */
void divseq_string_free(char *s);

/**
 * Build a term table from a sequence spec such as `lucas:P=1,Q=-1`,
 * `naturals`, `q:2`, or `explicit:1,2,3`. On success stores a handle in
 * `*out`; release it with `divseq_table_free`.
 */
enum DivseqStatus divseq_table_new(const char *spec, uintptr_t n_terms, struct DivseqTable **out);

/**
 * Release a table handle. Null is a no-op.
 */
void divseq_table_free(struct DivseqTable *table);

/**
 * Number of terms held, or 0 for a null handle.
 */
uintptr_t divseq_table_len(const struct DivseqTable *table);

/**
 * Decimal rendering of the 1-based term a_n into `*out`.
 */
enum DivseqStatus divseq_table_term(const struct DivseqTable *table, uintptr_t n, char **out);

/**
 * Decimal rendering of lcm(a_1..a_n) into `*out`.
 */
enum DivseqStatus divseq_table_prefix_lcm(const struct DivseqTable *table, uintptr_t n, char **out);

/**
 * Strong-divisibility check; JSON envelope into `*out_json`.
 * `Ok` means the property held, `Fail` that a counterexample was found.
 */
enum DivseqStatus divseq_check_sds(const char *spec, uintptr_t n_terms, char **out_json);

/**
 * Kimberling and quotient factorizations with agreement and
 * reconstruction checks; JSON envelope into `*out_json`.
 */
enum DivseqStatus divseq_factorize(const char *spec, uintptr_t n_terms, char **out_json);

/**
 * Verify lcm identities. `identity` selects one of `theorem1`, `cor2`,
 * `cor3`, `basic`, `all`; null means `all`. JSON envelope into `*out_json`.
 */
enum DivseqStatus divseq_verify(const char *spec,
                                uintptr_t n_terms,
                                const char *identity,
                                char **out_json);

/**
 * Growth-bound suite for a Lucas spec; JSON envelope into `*out_json`.
 */
enum DivseqStatus divseq_bounds(const char *spec, uintptr_t n_terms, char **out_json);

/**
 * Prefix-lcm ratio scan rendered as CSV (`n,log_lcm,ratio`) into
 * `*out_csv`, sampling every `step` indices.
 */
enum DivseqStatus divseq_ratio_csv(const char *spec,
                                   uintptr_t n_terms,
                                   uintptr_t step,
                                   char **out_csv);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIVSEQ_H */
