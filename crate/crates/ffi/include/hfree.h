#ifndef HFREE_H
#define HFREE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HfStatus {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_POINTER = 1,
  HF_STATUS_PARSE_ERROR = 2,
  HF_STATUS_PRECONDITION = 3,
  HF_STATUS_NO_DENSE_SUBGRAPH = 4,
  HF_STATUS_TOO_LARGE = 5,
  HF_STATUS_BUDGET_EXCEEDED = 6,
  HF_STATUS_INVALID = 7,
  HF_STATUS_INTERNAL = 8,
} HfStatus;

/*
 Opaque hypergraph handle.
 */
typedef struct HfHypergraph HfHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *hf_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *hf_version(void);

/*
 Parses the text edge-list format (or graph6 for graphs).

 # Safety
 `src` must be a NUL-terminated string; `out` must be writable.
 */
enum HfStatus hf_hypergraph_parse(const char *src, struct HfHypergraph **out);

/*
 Builds a named pattern: `kN`, `cN`, `pN`, `kS,T`, `kNrR` or `g6:<graph6>`.

 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum HfStatus hf_hypergraph_builtin(const char *name, struct HfHypergraph **out);

/*
 # Safety
 `h` must be NULL or a handle from this library not yet freed.
 */
void hf_hypergraph_free(struct HfHypergraph *h);

/*
 # Safety
 `s` must be NULL or a string returned by this library not yet freed.
 */
void hf_string_free(char *s);

/*
 # Safety
 `h` must be a live handle; the out-pointers must be writable.
 */
enum HfStatus hf_hypergraph_shape(const struct HfHypergraph *h,
                                  size_t *uniformity,
                                  size_t *vertices,
                                  size_t *edges);

/*
 Canonical text rendering; free the result with `hf_string_free`.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HfStatus hf_hypergraph_to_text(const struct HfHypergraph *h, char **out);

/*
 r-density `m_r(H)` as a reduced fraction.

 # Safety
 `h` must be a live handle; the out-pointers must be writable.
 */
enum HfStatus hf_r_density(const struct HfHypergraph *h, int64_t *numer, int64_t *denom);

/*
 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HfStatus hf_is_strictly_balanced(const struct HfHypergraph *h, bool *out);

/*
 `ex(n, H)`; `node_budget == 0` means unlimited. `witness` may be NULL;
 otherwise it receives a new handle to an extremal H-free host.

 # Safety
 `h` must be a live handle; `value` must be writable; `witness` must be
 NULL or writable.
 */
enum HfStatus hf_extremal_number(const struct HfHypergraph *h,
                                 size_t n,
                                 uint64_t node_budget,
                                 size_t *value,
                                 struct HfHypergraph **witness);

/*
 Number of labelled H-free hosts on `[n]` as a decimal string; free it
 with `hf_string_free`. `node_budget == 0` means unlimited.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum HfStatus hf_count_h_free(const struct HfHypergraph *h,
                              size_t n,
                              uint64_t node_budget,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HFREE_H */
