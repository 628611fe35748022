#ifndef TWOTORUS_H
#define TWOTORUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every entry point.
typedef enum TtStatus {
  TT_STATUS_OK = 0,
  TT_STATUS_NULL_POINTER = 1,
  TT_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON or an instance that fails validation.
  TT_STATUS_INVALID_INPUT = 3,
  // A computation's precondition does not hold.
  TT_STATUS_PRECONDITION = 4,
  // The output buffer is too small; the required length was written.
  TT_STATUS_BUFFER_TOO_SMALL = 5,
  // A bug: the library panicked.
  TT_STATUS_INTERNAL = 6,
} TtStatus;

// Opaque instance handle.
typedef struct TtInstance TtInstance;

typedef struct TtFormality {
  bool hsiang;
  bool criterion;
  // The criterion was not computed but assumed (no triangulation given).
  bool criterion_surrogate;
  bool h_identity;
  bool agree;
  // 'A' for the cone model, 'B' for a supplied triangulation.
  char mode;
} TtFormality;

typedef struct TtCodeParams {
  size_t length;
  size_t dim;
  size_t min_distance;
  bool self_dual;
} TtCodeParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread. The pointer stays
// valid until the next failing call on the same thread.
const char *tt_last_error_message(void);

// Parses and validates an instance from JSON text.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum TtStatus tt_instance_from_json(const char *json, struct TtInstance **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `h` must be null or a handle not yet freed.
void tt_instance_free(struct TtInstance *h);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void tt_string_free(char *s);

// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum TtStatus tt_instance_dim(const struct TtInstance *h, size_t *out);

// Number of vertices of the orbit space, i.e. of fixed points.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum TtStatus tt_fixed_points(const struct TtInstance *h, size_t *out);

// Mod-2 Betti numbers of the model. Writes the count to `len`; fails with
// `BufferTooSmall` when it exceeds `cap`.
//
// # Safety
// `h` must be a live handle, `out` must hold `cap` values and `len` must be
// a valid pointer.
enum TtStatus tt_betti(const struct TtInstance *h, size_t *out, size_t cap, size_t *len);

// The h-vector `(h_0, …, h_n)`.
//
// # Safety
// As for [`tt_betti`].
enum TtStatus tt_h_vector(const struct TtInstance *h, int64_t *out, size_t cap, size_t *len);

// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum TtStatus tt_formality(const struct TtInstance *h, struct TtFormality *out);

// Parameters of the facet code. Fails with `Precondition` when there is no
// m-involution.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum TtStatus tt_code_params(const struct TtInstance *h, struct TtCodeParams *out);

// Cuts the face with id `face` off the orbit space; the result is a new
// handle.
//
// # Safety
// `h` must be a live handle, `face` a NUL-terminated string and `out` a
// valid pointer.
enum TtStatus tt_blowup(const struct TtInstance *h, const char *face, struct TtInstance **out);

// Serializes the instance in the file format.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum TtStatus tt_instance_to_json(const struct TtInstance *h, char **out);

// The full report as JSON.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum TtStatus tt_report_json(const struct TtInstance *h, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOTORUS_H */
