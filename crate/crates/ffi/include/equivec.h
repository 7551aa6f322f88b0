#ifndef EQUIVEC_H
#define EQUIVEC_H

/* Generated by cbindgen from the equivec-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of an FFI call. Anything other than `Ok` leaves the out-pointer
 * untouched; `InvalidProblem` stores a diagnostic readable through
 * `eqv_last_error`.
 */
typedef enum EqvStatus {
  EQV_STATUS_OK = 0,
  EQV_STATUS_NULL_ARGUMENT = 1,
  EQV_STATUS_INVALID_UTF8 = 2,
  EQV_STATUS_INVALID_PROBLEM = 3,
  EQV_STATUS_UNKNOWN_FIXTURE = 4,
  EQV_STATUS_PANIC = 5,
} EqvStatus;

/**
 * Opaque report handle.
 */
typedef struct EqvReport EqvReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Run a problem given as a JSON document.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to writable storage for one pointer.
 */
enum EqvStatus eqv_check_json(const char *json, struct EqvReport **out);

/**
 * Run a problem stored in a file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to writable storage for one pointer.
 */
enum EqvStatus eqv_check_file(const char *path, struct EqvReport **out);

/**
 * Run a named built-in fixture.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to writable storage for one pointer.
 */
enum EqvStatus eqv_check_fixture(const char *name, struct EqvReport **out);

/**
 * Exit code of the report: 0 pass, 1 fail, 3 indeterminate; -1 on null.
 *
 * # Safety
 * `report` must be null or a handle from a check function.
 */
int32_t eqv_report_exit_code(const struct EqvReport *report);

/**
 * Verdict of the report as a string; null on null input. Release with
 * `eqv_string_free`.
 *
 * # Safety
 * `report` must be null or a handle from a check function.
 */
char *eqv_report_verdict(const struct EqvReport *report);

/**
 * The whole report as a JSON document; null on null input or on a
 * serialization failure. Release with `eqv_string_free`.
 *
 * # Safety
 * `report` must be null or a handle from a check function.
 */
char *eqv_report_json(const struct EqvReport *report);

/**
 * The diagnostic from the most recent failing call on this thread; null if
 * there is none. Release with `eqv_string_free`.
 */
char *eqv_last_error(void);

/**
 * Release a report handle. Null is ignored.
 *
 * # Safety
 * `report` must be null or a handle from a check function, released at
 * most once.
 */
void eqv_report_free(struct EqvReport *report);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, released at most
 * once.
 */
void eqv_string_free(char *s);

/**
 * Library version as a static string; do not free.
 */
const char *eqv_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUIVEC_H */
