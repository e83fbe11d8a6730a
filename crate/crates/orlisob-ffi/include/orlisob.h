/* C interface for the orlisob library (liborlisob_ffi).
 *
 * Young functions travel as JSON strings and live behind opaque handles.
 * Every fallible function returns an error code; on failure a
 * thread-local message is available from orlisob_last_error_message().
 */

#ifndef ORLISOB_H
#define ORLISOB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Error codes. */
#define ORLISOB_OK 0
#define ORLISOB_ERR_NULL_ARGUMENT 1
#define ORLISOB_ERR_INVALID_UTF8 2
#define ORLISOB_ERR_DOMAIN 3
#define ORLISOB_ERR_PRECONDITION 4
#define ORLISOB_ERR_INVALID_YOUNG 5
#define ORLISOB_ERR_CLASSIFICATION 6
#define ORLISOB_ERR_OTHER 7

/* Opaque handle to a Young function. */
typedef struct OrlisobYoung OrlisobYoung;

/* Message for the most recent error on this thread, or NULL. Valid until
 * the next failing call on the same thread. Do not free. */
const char *orlisob_last_error_message(void);

/* Parse a Young function from JSON. On success *out must be released with
 * orlisob_young_free(). */
int32_t orlisob_young_parse_json(const char *json, OrlisobYoung **out);

/* Free a handle. NULL is ignored. */
void orlisob_young_free(OrlisobYoung *h);

/* Serialize a Young function to JSON. Release *out with
 * orlisob_string_free(). */
int32_t orlisob_young_to_json(const OrlisobYoung *h, char **out);

/* Free a string returned by this library. NULL is ignored. */
void orlisob_string_free(char *s);

/* Evaluate A(t). Infinite values are reported as +inf. */
int32_t orlisob_young_eval(const OrlisobYoung *h, double t, double *out);

/* Convex conjugate, returned as a new handle. */
int32_t orlisob_young_conjugate(const OrlisobYoung *h, OrlisobYoung **out);

/* Growth classification for the fractional-order space with dimension n
 * and smoothness s. Writes a JSON report ("tag" plus diagnostics);
 * release with orlisob_string_free(). */
int32_t orlisob_classify(const OrlisobYoung *h, uint32_t n, double s,
                         char **out);

/* Optimal Orlicz target A_{n/s}, returned as a new handle. */
int32_t orlisob_target_orlicz(const OrlisobYoung *h, uint32_t n, double s,
                              OrlisobYoung **out);

/* Building block of the optimal rearrangement-invariant target, returned
 * as a new handle. */
int32_t orlisob_target_ri(const OrlisobYoung *h, uint32_t n, double s,
                          OrlisobYoung **out);

/* Luxemburg norm of a piecewise-constant sample on the line: xs holds
 * m_edges cell edges (increasing), vs the m_edges - 1 cell values.
 * Infinite norms are reported as +inf. */
int32_t orlisob_luxemburg_norm(const OrlisobYoung *h, const double *xs,
                               size_t m_edges, const double *vs, double *out);

/* Gagliardo-type modular at unit scale and the fractional seminorm of a
 * piecewise-constant sample (layout as in orlisob_luxemburg_norm). */
int32_t orlisob_seminorm(const OrlisobYoung *h, uint32_t n, double s,
                         const double *xs, size_t m_edges, const double *vs,
                         double *out_modular, double *out_seminorm);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ORLISOB_H */
