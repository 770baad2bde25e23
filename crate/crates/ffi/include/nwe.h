#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>

// Result code of every fallible call.
typedef enum NweStatus {
  NWE_STATUS_OK = 0,
  NWE_STATUS_NULL_POINTER = 1,
  NWE_STATUS_INVALID_PARAMETER = 2,
  NWE_STATUS_NOT_ORTHOGONAL = 3,
  NWE_STATUS_PARSE_ERROR = 4,
  NWE_STATUS_INVALID_UTF8 = 5,
  NWE_STATUS_INDEX_OUT_OF_RANGE = 6,
  NWE_STATUS_PANIC = 7,
} NweStatus;

// Opaque handle to an immutable state set.
typedef struct NweStateSet NweStateSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *nwe_last_error_message(void);

// Builds the equal-dimension family for `parties` parties of dimension `dim`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum NweStatus nwe_generate_equal(size_t parties, size_t dim, struct NweStateSet **out);

// Builds the general family for a nondecreasing dimension vector.
//
// # Safety
// `dims` must point to `len` readable values; `out` as in `nwe_generate_equal`.
enum NweStatus nwe_generate_general(const size_t *dims, size_t len, struct NweStateSet **out);

// Parses an `nwe/1` JSON document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` as in `nwe_generate_equal`.
enum NweStatus nwe_state_set_from_json(const char *json, struct NweStateSet **out);

// Serializes a set as canonical `nwe/1` JSON.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum NweStatus nwe_state_set_to_json(const struct NweStateSet *set, char **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `set` must be NULL or a handle not yet freed.
void nwe_state_set_free(struct NweStateSet *set);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string from this library not yet freed.
void nwe_string_free(char *s);

// Number of states in the set.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum NweStatus nwe_state_set_len(const struct NweStateSet *set, size_t *out);

// Number of parties of the set's system.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum NweStatus nwe_state_set_parties(const struct NweStateSet *set, size_t *out);

// Counts pairs of states that are not orthogonal.
//
// # Safety
// `set` must be a live handle; `violations` must be writable.
enum NweStatus nwe_check_orthogonality(const struct NweStateSet *set, size_t *violations);

// Decides whether party `party` admits only trivial orthogonality-preserving
// measurements, and reports the solution-space dimension.
//
// # Safety
// `set` must be a live handle; `trivial` and `nullspace_dim` must be writable.
enum NweStatus nwe_verify_party(const struct NweStateSet *set,
                                size_t party,
                                bool *trivial,
                                size_t *nullspace_dim);

// Sets `certified` when every party is trivial.
//
// # Safety
// `set` must be a live handle; `certified` must be writable.
enum NweStatus nwe_verify_all(const struct NweStateSet *set, bool *certified);

// Full JSON report from both engines.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum NweStatus nwe_report_json(const struct NweStateSet *set, char **out);

// Lemma-engine certificate as text, one fact per line.
//
// # Safety
// `set` must be a live handle; `out` must be writable.
enum NweStatus nwe_certificate_text(const struct NweStateSet *set, char **out);

// Size of the general family for `dims` without building it.
//
// # Safety
// `dims` must point to `len` readable values; `out` must be writable.
enum NweStatus nwe_expected_size(const size_t *dims, size_t len, size_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
