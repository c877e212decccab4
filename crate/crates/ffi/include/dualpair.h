#ifndef DUALPAIR_H
#define DUALPAIR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of every `dp_*` call.
typedef enum DpStatus {
  DP_STATUS_OK = 0,
  DP_STATUS_NULL_ARGUMENT = 1,
  DP_STATUS_INVALID_UTF8 = 2,
  DP_STATUS_INPUT = 3,
  DP_STATUS_CONTRACT = 4,
  DP_STATUS_CAP_EXCEEDED = 5,
  DP_STATUS_RING_AXIOM = 6,
  DP_STATUS_BALANCE = 7,
  DP_STATUS_UNSUPPORTED = 8,
  DP_STATUS_HYPOTHESIS = 9,
  DP_STATUS_INTERNAL = 10,
  DP_STATUS_PANIC = 11,
} DpStatus;

// A validated instance document.
typedef struct DpInstance DpInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses and validates an instance document given as JSON. On success `*out`
// holds a handle to release with [`dp_instance_free`].
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum DpStatus dp_instance_from_json(const char *json, struct DpInstance **out);

// Releases an instance handle; null is ignored.
//
// # Safety
// `h` must come from [`dp_instance_from_json`] and not be freed twice.
void dp_instance_free(struct DpInstance *h);

// The document behind a handle, re-serialized.
//
// # Safety
// `h` must be a live handle and `out` a valid pointer.
enum DpStatus dp_instance_to_json(const struct DpInstance *h, char **out);

// Closures, perps, density and completion of a pairing (`pairing` may be
// null for `P` or the only pairing).
//
// # Safety
// `h` must be a live handle, `pairing` null or NUL-terminated, `out` valid.
enum DpStatus dp_analyze(const struct DpInstance *h, const char *pairing, char **out);

// The α-condition verdict of a pairing, with a witness when it fails.
//
// # Safety
// As for [`dp_analyze`].
enum DpStatus dp_alpha(const struct DpInstance *h, const char *pairing, char **out);

// Checks one registry entry (or every applicable one when `theorem` is null).
//
// # Safety
// As for [`dp_analyze`].
enum DpStatus dp_check(const struct DpInstance *h, const char *theorem, char **out);

// Runs a named suite. `rings` is null or a list such as `"4,6"`; `caps` is
// null or accepted in any form the command line takes.
//
// # Safety
// String arguments must be null (where allowed) or NUL-terminated; `out` valid.
enum DpStatus dp_run_suite(const char *suite,
                           const char *rings,
                           uint64_t seed,
                           const char *caps,
                           char **out);

// Searches for counterexamples to `theorem` with the comma-separated
// hypotheses in `dropped` removed.
//
// # Safety
// As for [`dp_run_suite`].
enum DpStatus dp_mine(const char *theorem,
                      const char *dropped,
                      const char *rings,
                      uint64_t seed,
                      char **out);

// Predicate table for the given rings (null for the default list). Rings
// whose predicates could not be decided carry a note.
//
// # Safety
// As for [`dp_run_suite`].
enum DpStatus dp_ring_table(const char *rings, char **out);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must come from a `dp_*` call and not be freed twice.
void dp_string_free(char *s);

// Message for the last failing call on this thread (empty after a success).
// The pointer stays valid until the next `dp_*` call on the thread.
const char *dp_last_error(void);

// Library version as a static string.
const char *dp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUALPAIR_H */
