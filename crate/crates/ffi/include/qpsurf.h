#ifndef QPSURF_H
#define QPSURF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpsStatus {
  QPS_STATUS_OK = 0,
  QPS_STATUS_NULL_POINTER = 1,
  QPS_STATUS_INVALID_ARGUMENT = 2,
  QPS_STATUS_PARSE = 3,
  QPS_STATUS_MATH = 4,
  QPS_STATUS_PANIC = 5,
} QpsStatus;

// A quiver with potential.
typedef struct QpsQp QpsQp;

// A triangulation of a punctured surface.
typedef struct QpsTriangulation QpsTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. Owned by the library.
const char *qps_last_error(void);

// Safety: `s` is null or a string returned by this library, not yet freed.
void qps_string_free(char *s);

// Safety: `out` must be valid for writes.
enum QpsStatus qps_triangulation_torus(struct QpsTriangulation **out);

// Twice-punctured genus-`g` surface, one puncture inside a 4g-gon.
//
// Safety: `out` must be valid for writes.
enum QpsStatus qps_triangulation_genus2p(size_t g, struct QpsTriangulation **out);

// Safety: `json` is a nul-terminated string; `out` must be valid for writes.
enum QpsStatus qps_triangulation_from_json(const char *json, struct QpsTriangulation **out);

// Safety: `t` is a live handle; `out` must be valid for writes.
enum QpsStatus qps_triangulation_to_json(const struct QpsTriangulation *t, char **out);

// Safety: `t` is a live handle; `out` must be valid for writes.
enum QpsStatus qps_triangulation_num_arcs(const struct QpsTriangulation *t, size_t *out);

// Safety: `t` is a live handle; `out` must be valid for writes.
enum QpsStatus qps_triangulation_flip(const struct QpsTriangulation *t,
                                      uint32_t arc,
                                      struct QpsTriangulation **out);

// Safety: `t` is null or a live handle, not used afterwards.
void qps_triangulation_free(struct QpsTriangulation *t);

// The potential `T + Σ x_p·(cycle around p)` truncated at `degree`, or at the
// default degree when `degree` is 0. `x` is a comma-separated list of rationals.
//
// Safety: `t` is a live handle, `x` a nul-terminated string, `out` valid for writes.
enum QpsStatus qps_qp_standard(const struct QpsTriangulation *t,
                               const char *x,
                               size_t degree,
                               struct QpsQp **out);

// The potential `T + x·(puncture cycle)^n` on a once-punctured triangulation.
//
// Safety: `t` is a live handle, `x` a nul-terminated string, `out` valid for writes.
enum QpsStatus qps_qp_power(const struct QpsTriangulation *t,
                            const char *x,
                            size_t n,
                            size_t degree,
                            struct QpsQp **out);

// Safety: `json` is a nul-terminated string; `out` must be valid for writes.
enum QpsStatus qps_qp_from_json(const char *json, struct QpsQp **out);

// Safety: `qp` is a live handle; `out` must be valid for writes.
enum QpsStatus qps_qp_to_json(const struct QpsQp *qp, char **out);

// Mutation at the vertex with the given name, followed by reduction.
//
// Safety: `qp` is a live handle, `vertex` a nul-terminated string, `out` valid for writes.
enum QpsStatus qps_qp_mutate(const struct QpsQp *qp, const char *vertex, struct QpsQp **out);

// Safety: `qp` is null or a live handle, not used afterwards.
void qps_qp_free(struct QpsQp *qp);

// Checks that mutating `T + x·(puncture cycle)^n` at `arc` is right-equivalent
// to the same potential on the flipped triangulation, up to `degree`
// (0 selects `12n + 6`). Writes whether the check passed.
//
// Safety: `t` is a live handle, `x` a nul-terminated string, `pass` valid for writes.
enum QpsStatus qps_verify_flip(const struct QpsTriangulation *t,
                               uint32_t arc,
                               const char *x,
                               size_t n,
                               size_t degree,
                               bool *pass);

// Dimension of the Jacobian algebra truncated at `degree`. `certified` is set
// when every path of some length at most `degree` vanishes, in which case the
// dimension is that of the untruncated algebra.
//
// Safety: `qp` is a live handle; `dimension` and `certified` valid for writes.
enum QpsStatus qps_jacobian_dim(const struct QpsQp *qp,
                                size_t degree,
                                size_t *dimension,
                                bool *certified);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPSURF_H */
