/* C interface for the bomega bicyclic-monoid-extension library. */

#ifndef BOMEGA_H
#define BOMEGA_H

/* This file is generated by cbindgen from crates/capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code returned by every fallible function of this library.
typedef enum BomegaStatus {
  // The call succeeded and all out-parameters were written.
  BOMEGA_STATUS_OK = 0,
  // A required pointer argument was null.
  BOMEGA_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  BOMEGA_STATUS_INVALID_UTF8 = 2,
  // A text argument could not be parsed (element, family, word or
  // endomorphism syntax).
  BOMEGA_STATUS_PARSE = 3,
  // The arguments parsed but were rejected by the algebra: an element
  // outside its monoid, a family that is not ω-closed, a restriction that
  // does not stay inside the subfamily, out-of-range search bounds, …
  BOMEGA_STATUS_DOMAIN = 4,
  // An unexpected internal failure; details via `bomega_last_error`.
  BOMEGA_STATUS_INTERNAL = 5,
} BomegaStatus;

// An element of an extended bicyclic monoid (an opaque handle).
typedef struct BomegaElement BomegaElement;

// A monoid-endomorphism description (an opaque handle).
typedef struct BomegaEndo BomegaEndo;

// A validated ω-closed family of inductive subsets (an opaque handle).
typedef struct BomegaFamily BomegaFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the library version as a static string (do **not** free it).
const char *bomega_version(void);

// Returns a copy of the message for the most recent failure on this thread,
// or null when the latest call succeeded.  Free the copy with
// `bomega_string_free`.
char *bomega_last_error(void);

// Releases a string previously returned by this library.  Null is ignored.
//
// # Safety
//
// `text` must be null or a pointer obtained from this library that has not
// been freed before.
void bomega_string_free(char *text);

// Parses a family description such as `"0,1,2"` or `"0,1,empty"` and
// validates ω-closure.  On success `*out` owns the new handle.
//
// # Safety
//
// `text` must be null or a NUL-terminated string; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_family_parse(const char *text, struct BomegaFamily **out);

// Formats a family in the same comma-separated syntax the parser accepts.
// Returns an owned string, or null on failure.
//
// # Safety
//
// `family` must be null or a live handle from this library.
char *bomega_family_format(const struct BomegaFamily *family);

// Writes the shift-normalized copy of `family` (least lower bound moved to
// zero) to `*out` and the amount subtracted from every bound to `*shift`.
//
// # Safety
//
// `family` must be null or a live handle; `out` and `shift` must be null or
// valid for writes.
enum BomegaStatus bomega_family_normalize(const struct BomegaFamily *family,
                                          struct BomegaFamily **out,
                                          uint64_t *shift);

// Sets `*out` to whether `element` belongs to the monoid over `family`.
//
// # Safety
//
// `family` and `element` must be null or live handles; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_family_contains(const struct BomegaFamily *family,
                                         const struct BomegaElement *element,
                                         bool *out);

// Writes the multiplicative identity of the monoid over `family` to `*out`.
//
// # Safety
//
// `family` must be null or a live handle; `out` must be null or valid for
// writes.
enum BomegaStatus bomega_family_identity(const struct BomegaFamily *family,
                                         struct BomegaElement **out);

// Releases a family handle.  Null is ignored.
//
// # Safety
//
// `family` must be null or a live handle that has not been freed before.
void bomega_family_free(struct BomegaFamily *family);

// Creates the element `(i, j, lower_bound)`.
//
// # Safety
//
// `out` must be null or valid for writes.
enum BomegaStatus bomega_element_triple(uint64_t i,
                                        uint64_t j,
                                        uint64_t lower_bound,
                                        struct BomegaElement **out);

// Creates the absorbing zero element.
//
// # Safety
//
// `out` must be null or valid for writes.
enum BomegaStatus bomega_element_zero(struct BomegaElement **out);

// Parses an element written as `"(i,j,b)"` or `"zero"`.
//
// # Safety
//
// `text` must be null or a NUL-terminated string; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_element_parse(const char *text, struct BomegaElement **out);

// Formats an element as `"(i,j,b)"` or `"zero"`.  Returns an owned string,
// or null on failure.
//
// # Safety
//
// `element` must be null or a live handle.
char *bomega_element_format(const struct BomegaElement *element);

// Decomposes an element.  For the zero element `*is_zero` is set to true and
// the numeric slots are zeroed; otherwise `*i`, `*j` and `*lower_bound`
// receive the triple components.
//
// # Safety
//
// `element` must be null or a live handle; the remaining pointers must be
// null or valid for writes.
enum BomegaStatus bomega_element_parts(const struct BomegaElement *element,
                                       bool *is_zero,
                                       uint64_t *i,
                                       uint64_t *j,
                                       uint64_t *lower_bound);

// Sets `*out` to whether two elements are equal.
//
// # Safety
//
// `left` and `right` must be null or live handles; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_element_eq(const struct BomegaElement *left,
                                    const struct BomegaElement *right,
                                    bool *out);

// Releases an element handle.  Null is ignored.
//
// # Safety
//
// `element` must be null or a live handle that has not been freed before.
void bomega_element_free(struct BomegaElement *element);

// Multiplies two elements of the monoid over `family`; both factors must
// belong to it.
//
// # Safety
//
// `family`, `left` and `right` must be null or live handles; `out` must be
// null or valid for writes.
enum BomegaStatus bomega_multiply(const struct BomegaFamily *family,
                                  const struct BomegaElement *left,
                                  const struct BomegaElement *right,
                                  struct BomegaElement **out);

// Writes the inverse-semigroup inverse of `element` to `*out`.
//
// # Safety
//
// `element` must be null or a live handle; `out` must be null or valid for
// writes.
enum BomegaStatus bomega_invert(const struct BomegaElement *element, struct BomegaElement **out);

// Sets `*out` to whether `element` is idempotent.
//
// # Safety
//
// `element` must be null or a live handle; `out` must be null or valid for
// writes.
enum BomegaStatus bomega_is_idempotent(const struct BomegaElement *element, bool *out);

// Sets `*out` to whether `left ≼ right` in the natural partial order of the
// monoid over `family`; both elements must belong to it.
//
// # Safety
//
// `family`, `left` and `right` must be null or live handles; `out` must be
// null or valid for writes.
enum BomegaStatus bomega_natural_leq(const struct BomegaFamily *family,
                                     const struct BomegaElement *left,
                                     const struct BomegaElement *right,
                                     bool *out);

// Rewrites a word over the alphabet `{q, p}` to its normal form `q^k p^l`
// using the relation `pq = 1`, writing the exponents to `*k` and `*l`.
//
// # Safety
//
// `word` must be null or a NUL-terminated string; `k` and `l` must be null
// or valid for writes.
enum BomegaStatus bomega_word_normalize(const char *word, uint64_t *k, uint64_t *l);

// Parses an endomorphism description: a named form such as
// `"alpha_bracket:2"`, `"alpha:2,1"` or `"beta:2,1"`, or a JSON object with
// a `"kind"` field (`"table"` carries explicit generator images).
//
// # Safety
//
// `text` must be null or a NUL-terminated string; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_endo_parse(const char *text, struct BomegaEndo **out);

// Formats an endomorphism in the same syntax the parser accepts (named
// forms stay compact; tables render as one-line JSON).  Returns an owned
// string, or null on failure.
//
// # Safety
//
// `endo` must be null or a live handle.
char *bomega_endo_format(const struct BomegaEndo *endo);

// Serializes an endomorphism as a JSON object tagged by `"kind"`.  Returns
// an owned string, or null on failure.
//
// # Safety
//
// `endo` must be null or a live handle.
char *bomega_endo_to_json(const struct BomegaEndo *endo);

// Writes the domain family of `endo` to `*out`.
//
// # Safety
//
// `endo` must be null or a live handle; `out` must be null or valid for
// writes.
enum BomegaStatus bomega_endo_family(const struct BomegaEndo *endo, struct BomegaFamily **out);

// Applies `endo` to an element of its domain monoid.
//
// # Safety
//
// `endo` and `element` must be null or live handles; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_endo_apply(const struct BomegaEndo *endo,
                                    const struct BomegaElement *element,
                                    struct BomegaElement **out);

// Composes two endomorphisms of the same monoid: the result applies `first`
// and then `second`.
//
// # Safety
//
// `first` and `second` must be null or live handles; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_endo_compose(const struct BomegaEndo *first,
                                      const struct BomegaEndo *second,
                                      struct BomegaEndo **out);

// Restricts `endo` to the monoid over a subfamily; fails if some generator
// image leaves that monoid.
//
// # Safety
//
// `endo` and `subfamily` must be null or live handles; `out` must be null or
// valid for writes.
enum BomegaStatus bomega_endo_restrict(const struct BomegaEndo *endo,
                                       const struct BomegaFamily *subfamily,
                                       struct BomegaEndo **out);

// Sets `*out` to whether `endo` maps the identity to itself.
//
// # Safety
//
// `endo` must be null or a live handle; `out` must be null or valid for
// writes.
enum BomegaStatus bomega_endo_preserves_identity(const struct BomegaEndo *endo, bool *out);

// Checks multiplicativity of `endo` on all pairs from the window of
// elements with coordinates at most `window`.  `*holds` receives the
// verdict; when it is false and `witness` is non-null, `*witness` receives
// an owned description of the first failing pair (otherwise null).
//
// # Safety
//
// `endo` must be null or a live handle; `holds` and `witness` must be null
// or valid for writes.
enum BomegaStatus bomega_endo_check_homomorphism(const struct BomegaEndo *endo,
                                                 uint64_t window,
                                                 bool *holds,
                                                 char **witness);

// Checks injectivity of `endo` on the window of elements with coordinates
// at most `window`.  `*holds` receives the verdict; when it is false and
// `witness` is non-null, `*witness` receives an owned description of the
// first colliding pair (otherwise null).
//
// # Safety
//
// `endo` must be null or a live handle; `holds` and `witness` must be null
// or valid for writes.
enum BomegaStatus bomega_endo_check_injective(const struct BomegaEndo *endo,
                                              uint64_t window,
                                              bool *holds,
                                              char **witness);

// Writes to `*out` the number of fixed points of `endo` among the non-zero
// elements with coordinates at most `window`.
//
// # Safety
//
// `endo` must be null or a live handle; `out` must be null or valid for
// writes.
enum BomegaStatus bomega_endo_fixed_point_count(const struct BomegaEndo *endo,
                                                uint64_t window,
                                                uint64_t *out);

// Releases an endomorphism handle.  Null is ignored.
//
// # Safety
//
// `endo` must be null or a live handle that has not been freed before.
void bomega_endo_free(struct BomegaEndo *endo);

// Runs the bounded search for injective monoid endomorphisms of the monoid
// over `family`, with generator images drawn from coordinates at most
// `image_bound` and homomorphism/injectivity checks on the window of size
// `window`.  On success `*out_json` receives the full report as an owned
// JSON string (candidates, prune counters, timings).
//
// # Safety
//
// `family` must be null or a live handle; `out_json` must be null or valid
// for writes.
enum BomegaStatus bomega_classify_json(const struct BomegaFamily *family,
                                       uint64_t image_bound,
                                       uint64_t window,
                                       char **out_json);

// Runs the bundled small-scale verification suite (three-set classification,
// composition table, non-extension of the two-set maps, fixed-point counts)
// at the given bounds and writes the overall verdict to `*pass`.
//
// # Safety
//
// `pass` must be null or valid for writes.
enum BomegaStatus bomega_verify_theorems(uint64_t image_bound,
                                         uint64_t window,
                                         uint64_t max_k,
                                         bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOMEGA_H */
