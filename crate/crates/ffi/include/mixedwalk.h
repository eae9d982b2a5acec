#ifndef MIXEDWALK_H
#define MIXEDWALK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum MwAngleKind {
  MW_ANGLE_KIND_RATIONAL = 0,
  MW_ANGLE_KIND_REAL = 1,
} MwAngleKind;

typedef enum MwCrossCheck {
  MW_CROSS_CHECK_AGREE = 0,
  MW_CROSS_CHECK_DISAGREE = 1,
  MW_CROSS_CHECK_NOT_RUN = 2,
} MwCrossCheck;

typedef enum MwMethod {
  MW_METHOD_CLOSED_FORM_PATH = 0,
  MW_METHOD_CLOSED_FORM_CYCLE = 1,
  MW_METHOD_BRUTE_FORCE = 2,
} MwMethod;

// Result codes.
typedef enum MwStatus {
  MW_STATUS_OK = 0,
  MW_STATUS_NULL_POINTER = 1,
  MW_STATUS_DOMAIN = 2,
  MW_STATUS_CONTRACT = 3,
  MW_STATUS_INTERNAL = 4,
  MW_STATUS_PARSE = 5,
  MW_STATUS_BUFFER_TOO_SMALL = 6,
  MW_STATUS_PANIC = 7,
} MwStatus;

// Opaque mixed graph.
typedef struct MwGraph MwGraph;

// `pπ/q` when `kind` is `Rational`, otherwise `radians`.
typedef struct MwAngle {
  enum MwAngleKind kind;
  int64_t p;
  int64_t q;
  double radians;
} MwAngle;

// `period` is 0 when `periodic` is false.
typedef struct MwPeriodReport {
  bool periodic;
  uint64_t period;
  enum MwMethod method;
  uint64_t cap_used;
  enum MwCrossCheck cross_check;
  double residual;
} MwPeriodReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next failing call on the same thread.
const char *mw_last_error(void);

// Parses `pi*p/q`, `pi/q`, `pi` or decimal radians.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum MwStatus mw_angle_parse(const char *text, struct MwAngle *out);

// `C_n^j`.
//
// # Safety
// `out` must be a valid pointer.
enum MwStatus mw_graph_cycle(size_t n, size_t j, struct MwGraph **out);

// Mixed path on `n` vertices. `orient` holds `n - 1` symbols from `f`, `b`,
// `d` (also `>`, `<`, `-`); null means all digons.
//
// # Safety
// `orient` must be null or nul-terminated; `out` must be a valid pointer.
enum MwStatus mw_graph_path(size_t n, const char *orient, struct MwGraph **out);

// Graph from its JSON form `{"n": .., "arcs": [[x, y], ..], "edges": [[x, y], ..]}`.
//
// # Safety
// `json` must be nul-terminated; `out` must be a valid pointer.
enum MwStatus mw_graph_from_json(const char *json, struct MwGraph **out);

// JSON form of a graph; release with [`mw_string_free`].
//
// # Safety
// `graph` must come from this library; `out` must be a valid pointer.
enum MwStatus mw_graph_to_json(const struct MwGraph *graph, char **out);

// # Safety
// `graph` must be null or come from this library, and not be used afterwards.
void mw_graph_free(struct MwGraph *graph);

// # Safety
// `s` must be null or a string returned by this library.
void mw_string_free(char *s);

// # Safety
// Pointers must be valid.
enum MwStatus mw_graph_vertex_count(const struct MwGraph *graph, size_t *out);

// Girth of the underlying graph; 0 for forests.
//
// # Safety
// Pointers must be valid.
enum MwStatus mw_graph_girth(const struct MwGraph *graph, size_t *out);

// Writes `H_η` row-major as interleaved `(re, im)`: `2n²` doubles.
//
// # Safety
// `out` must point to at least `len` doubles.
enum MwStatus mw_h_eta(const struct MwGraph *graph, struct MwAngle eta, double *out, size_t len);

// `det H_η` as `(re, im)`.
//
// # Safety
// Pointers must be valid.
enum MwStatus mw_determinant(const struct MwGraph *graph,
                             struct MwAngle eta,
                             double *out_re,
                             double *out_im);

// Characteristic polynomial coefficients, constant term first, as
// interleaved `(re, im)`: `2(n + 1)` doubles.
//
// # Safety
// `out` must point to at least `len` doubles.
enum MwStatus mw_charpoly(const struct MwGraph *graph, struct MwAngle eta, double *out, size_t len);

// Type `j` with the graph switching equivalent to `C_n^j`.
//
// # Safety
// Pointers must be valid.
enum MwStatus mw_classify_cycle(const struct MwGraph *graph, size_t *out_j);

// Walk period. `cap = 0` and `tol <= 0` select the defaults.
//
// # Safety
// Pointers must be valid.
enum MwStatus mw_period(const struct MwGraph *graph,
                        struct MwAngle eta,
                        uint64_t cap,
                        double tol,
                        struct MwPeriodReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXEDWALK_H */
