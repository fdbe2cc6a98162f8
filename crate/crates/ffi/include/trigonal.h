#ifndef TRIGONAL_H
#define TRIGONAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

enum TrigonalStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  TRIGONAL_STATUS_OK = 0,
  TRIGONAL_STATUS_NULL_POINTER = 1,
  TRIGONAL_STATUS_PARSE = 2,
  TRIGONAL_STATUS_INVALID = 3,
  TRIGONAL_STATUS_BUDGET_EXCEEDED = 4,
  TRIGONAL_STATUS_NOT_FOUND = 5,
  TRIGONAL_STATUS_RANK_DEFICIENT = 6,
  TRIGONAL_STATUS_VALIDATION = 7,
  TRIGONAL_STATUS_ASSEMBLY_FAILED = 8,
  TRIGONAL_STATUS_VERIFY_FAILED = 9,
  TRIGONAL_STATUS_BUFFER_TOO_SMALL = 10,
  TRIGONAL_STATUS_PANIC = 11,
};
#ifndef __cplusplus
typedef int32_t TrigonalStatus;
#endif // __cplusplus

typedef struct TrigonalMonodromy TrigonalMonodromy;

typedef struct TrigonalSkeleton TrigonalSkeleton;

typedef struct TrigonalCensus {
  uint64_t index;
  uint64_t cusps;
  int64_t genus;
  bool torsion_free;
  bool contains_minus_id;
} TrigonalCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next call.
 */
const char *trigonal_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void trigonal_string_free(char *s);

/**
 * Parses `"B1;B2;..."` with optional slopes `"W1;W2;..."` (may be null).
 *
 * # Safety
 * String arguments must be nul-terminated; `out` must be writable.
 */
TrigonalStatus trigonal_monodromy_parse(const char *braids,
                                        uint64_t d,
                                        const char *slopes,
                                        struct TrigonalMonodromy **out);

/**
 * # Safety
 * `h` must come from `trigonal_monodromy_parse` or be null.
 */
void trigonal_monodromy_free(struct TrigonalMonodromy *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
TrigonalStatus trigonal_monodromy_validate(const struct TrigonalMonodromy *h, bool strict);

/**
 * Invariant factors of the maximal uniform dihedral quotient. `factors`
 * receives at most `cap` entries; `len` is always set to the true count.
 *
 * # Safety
 * `h` must be a live handle, `factors` writable for `cap` entries.
 */
TrigonalStatus trigonal_uniform_quotient(const struct TrigonalMonodromy *h,
                                         uint64_t *free_rank,
                                         uint64_t *factors,
                                         uintptr_t cap,
                                         uintptr_t *len);

/**
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
TrigonalStatus trigonal_component_count(const struct TrigonalMonodromy *h, uint32_t *out);

/**
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
TrigonalStatus trigonal_alexander_polynomial(const struct TrigonalMonodromy *h, char **out);

/**
 * Full invariant report as JSON.
 *
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
TrigonalStatus trigonal_invariants_json(const struct TrigonalMonodromy *h, char **out);

/**
 * # Safety
 * `out` must be writable.
 */
TrigonalStatus trigonal_skeleton_new(uint64_t m, uint64_t n, struct TrigonalSkeleton **out);

/**
 * # Safety
 * `h` must come from `trigonal_skeleton_new` or be null.
 */
void trigonal_skeleton_free(struct TrigonalSkeleton *h);

/**
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
TrigonalStatus trigonal_skeleton_census(const struct TrigonalSkeleton *h,
                                        struct TrigonalCensus *out);

/**
 * `format`: 0 for DOT, 1 for JSON.
 *
 * # Safety
 * `h` must be a live handle; `out` writable.
 */
TrigonalStatus trigonal_skeleton_export(const struct TrigonalSkeleton *h,
                                        int32_t format,
                                        char **out);

/**
 * Builds and verifies one catalog entry; the JSON report is written to
 * `out` in both the passing and failing case.
 *
 * # Safety
 * `out` must be writable.
 */
TrigonalStatus trigonal_catalog_verify(uint64_t m, uint64_t n, char **out);

/**
 * `j`: 0 for j = 0, 1 for j = 1, 2 for generic. Writes the group as JSON.
 *
 * # Safety
 * `out` must be writable.
 */
TrigonalStatus trigonal_isotrivial_quotient(int32_t j, uint64_t r, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIGONAL_H */
