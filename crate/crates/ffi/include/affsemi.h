#ifndef AFFSEMI_H
#define AFFSEMI_H

#pragma once

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum AffsemiGluing {
  AFFSEMI_GLUING_YES = 0,
  AFFSEMI_GLUING_NO = 1,
  AFFSEMI_GLUING_IMPOSSIBLE_ALL_SCALES = 2,
  AFFSEMI_GLUING_NOT_FOUND_UP_TO = 3,
} AffsemiGluing;

typedef enum AffsemiMembership {
  AFFSEMI_MEMBERSHIP_YES = 0,
  AFFSEMI_MEMBERSHIP_NO = 1,
  AFFSEMI_MEMBERSHIP_UNKNOWN = 2,
} AffsemiMembership;

// Result of every fallible call.
typedef enum AffsemiStatus {
  AFFSEMI_STATUS_OK = 0,
  AFFSEMI_STATUS_NULL_POINTER = 1,
  AFFSEMI_STATUS_INVALID_UTF8 = 2,
  AFFSEMI_STATUS_PARSE = 3,
  AFFSEMI_STATUS_PRECONDITION = 4,
  AFFSEMI_STATUS_BOUND_EXHAUSTED = 5,
  AFFSEMI_STATUS_BUFFER_TOO_SMALL = 6,
  AFFSEMI_STATUS_PANIC = 7,
} AffsemiStatus;

// Opaque handle to a fibered-sum context.
typedef struct AffsemiContext AffsemiContext;

// Opaque handle to an affine semigroup.
typedef struct AffsemiSemigroup AffsemiSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or an empty string.
//
// The pointer stays valid until the next call into this library on the same thread.
const char *affsemi_last_error(void);

// Library version as a static string.
const char *affsemi_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void affsemi_string_free(char *s);

// Builds `<g_1, ..., g_count>` in `Z^dim` from `count * dim` row-major entries.
//
// # Safety
// `gens` must point to `count * dim` integers (or be null when that product is 0);
// `out` must be writable.
enum AffsemiStatus affsemi_semigroup_new(size_t dim,
                                         const int64_t *gens,
                                         size_t count,
                                         struct AffsemiSemigroup **out);

// Parses a semigroup document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum AffsemiStatus affsemi_semigroup_parse(const char *json, struct AffsemiSemigroup **out);

// # Safety
// `s` must be null or a handle from this library not yet freed.
void affsemi_semigroup_free(struct AffsemiSemigroup *s);

// # Safety
// `s` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_semigroup_dim(const struct AffsemiSemigroup *s, size_t *out);

// Rank of the group of differences.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_semigroup_rank(const struct AffsemiSemigroup *s, size_t *out);

// # Safety
// `s` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_semigroup_is_positive(const struct AffsemiSemigroup *s, bool *out);

// Decides `x ∈ S`. On `Yes`, when `coeffs` is non-null, one coefficient per
// generator is written to it; `coeffs_len` must then be at least the number of
// generators, which is always stored in `n_coeffs` when that is non-null.
//
// # Safety
// `x` must point to `len` integers; `coeffs` to `coeffs_len` writable slots when non-null.
enum AffsemiStatus affsemi_semigroup_member(const struct AffsemiSemigroup *s,
                                            const int64_t *x,
                                            size_t len,
                                            uint64_t bound,
                                            enum AffsemiMembership *verdict,
                                            uint64_t *coeffs,
                                            size_t coeffs_len,
                                            size_t *n_coeffs);

// The semigroup as a JSON document.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_semigroup_to_json(const struct AffsemiSemigroup *s, char **out);

// Context of `s1`, `s2` over `s` with inclusion maps in a common `Z^d`.
//
// # Safety
// All handles must be live and `out` writable.
enum AffsemiStatus affsemi_context_new(const struct AffsemiSemigroup *s1,
                                       const struct AffsemiSemigroup *s2,
                                       const struct AffsemiSemigroup *s,
                                       struct AffsemiContext **out);

// Parses a context document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum AffsemiStatus affsemi_context_parse(const char *json, struct AffsemiContext **out);

// # Safety
// `c` must be null or a handle from this library not yet freed.
void affsemi_context_free(struct AffsemiContext *c);

// # Safety
// `c` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_context_is_torsion_free(const struct AffsemiContext *c, bool *out);

// Order of the torsion subgroup of the relation quotient, saturated at `u64::MAX`.
//
// # Safety
// `c` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_context_torsion_order(const struct AffsemiContext *c, uint64_t *out);

// The torsion-free fibered sum as a new semigroup handle.
//
// # Safety
// `c` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_context_tilde(const struct AffsemiContext *c,
                                         struct AffsemiSemigroup **out);

// # Safety
// `c` must be a live handle and `out` writable.
enum AffsemiStatus affsemi_context_to_json(const struct AffsemiContext *c, char **out);

// Decides whether `a s1` and `b s2` glue. On `Yes`, when `w` is non-null, the
// identified element is written to it; `w_len` must be at least the ambient dimension.
//
// # Safety
// Handles must be live; `verdict` writable; `w` must have `w_len` writable slots when non-null.
enum AffsemiStatus affsemi_glue(const struct AffsemiSemigroup *s1,
                                const struct AffsemiSemigroup *s2,
                                int64_t a,
                                int64_t b,
                                enum AffsemiGluing *verdict,
                                int64_t *w,
                                size_t w_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFSEMI_H */
