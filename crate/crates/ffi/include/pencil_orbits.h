#ifndef PENCIL_ORBITS_H
#define PENCIL_ORBITS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PoStatus {
  PO_OK = 0,
  // A required pointer argument was null.
  PO_NULL_POINTER = 1,
  // Unsupported q or orbit index.
  PO_INVALID_ARGUMENT = 2,
  // Malformed text, or conics that do not span a pencil.
  PO_PARSE_ERROR = 3,
  // The solid's distributions match no orbit.
  PO_INCONSISTENT = 4,
  // The output buffer is too small; the required size was written.
  PO_BUFFER_TOO_SMALL = 5,
  PO_INTERNAL_ERROR = 6,
} PoStatus;

// Opaque handle to a solid of PG(5,q).
typedef struct PoSolid PoSolid;

// Classification result. `label` is the orbit index 1..=15.
typedef struct PoClassification {
  uint32_t label;
  // r1, r2n, r2s, r3
  uint64_t point_od[4];
  // a1, a2r, a2i, a3
  uint64_t hyperplane_od[4];
  uint64_t base_points;
} PoClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses `q=<q>:<24 hex digits>`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum PoStatus po_solid_from_text(const char *text, struct PoSolid **out);

// The solid of the pencil spanned by two conics, each 6 hex digits in the
// order a00 a01 a02 a11 a12 a22.
//
// # Safety
// `c1` and `c2` must be NUL-terminated strings and `out` a valid pointer.
enum PoStatus po_solid_from_conics(uint32_t q,
                                   const char *c1,
                                   const char *c2,
                                   struct PoSolid **out);

// The representative of orbit `index` (1..=15) over GF(q).
//
// # Safety
// `out` must be a valid pointer.
enum PoStatus po_representative(uint32_t q, uint32_t index, struct PoSolid **out);

// Releases a solid. Null is ignored.
//
// # Safety
// `solid` must come from this library and not be freed twice.
void po_solid_free(struct PoSolid *solid);

// Field order of a solid.
//
// # Safety
// `solid` and `q` must be valid pointers.
enum PoStatus po_solid_q(const struct PoSolid *solid, uint32_t *q);

// Writes `q=<q>:<24 digits>` and a NUL into `buf`. `needed` receives the
// buffer size required, NUL included, whatever the outcome.
//
// # Safety
// `solid` must be valid; `buf` must hold `len` bytes (it may be null when
// `len` is 0); `needed` may be null.
enum PoStatus po_solid_to_text(const struct PoSolid *solid,
                               char *buf,
                               uintptr_t len,
                               uintptr_t *needed);

// Orbit label and distributions of a solid.
//
// # Safety
// `solid` and `out` must be valid pointers.
enum PoStatus po_classify(const struct PoSolid *solid, struct PoClassification *out);

// Size of orbit `index` over GF(q).
//
// # Safety
// `out` must be a valid pointer.
enum PoStatus po_orbit_size(uint32_t q, uint32_t index, uint64_t *out);

// Order of the stabiliser in PGL(3,q) of a solid in orbit `index`.
//
// # Safety
// `out` must be a valid pointer.
enum PoStatus po_stabilizer_order(uint32_t q, uint32_t index, uint64_t *out);

// Copies the calling thread's last error message, NUL-terminated, into
// `buf`. Same buffer protocol as `po_solid_to_text`.
//
// # Safety
// `buf` must hold `len` bytes; `needed` may be null.
enum PoStatus po_last_error_message(char *buf, uintptr_t len, uintptr_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PENCIL_ORBITS_H */
