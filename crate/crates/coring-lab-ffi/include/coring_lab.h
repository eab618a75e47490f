#ifndef CORING_LAB_H
#define CORING_LAB_H

#include <stddef.h>
#include <stdint.h>

/*
 Result of a call.
 */
typedef enum CoringLabStatus {
  CORING_LAB_STATUS_OK = 0,
  /*
   The computation ran and some required check failed.
   */
  CORING_LAB_STATUS_MATH_FAILURE = 1,
  /*
   Unreadable document, unknown command or target, guardrail exceeded.
   */
  CORING_LAB_STATUS_INPUT_ERROR = 2,
  CORING_LAB_STATUS_NULL_POINTER = 3,
  CORING_LAB_STATUS_INVALID_UTF8 = 4,
  /*
   The output buffer is too small; the needed length was written.
   */
  CORING_LAB_STATUS_BUFFER_TOO_SMALL = 5,
  CORING_LAB_STATUS_PANIC = 6,
} CoringLabStatus;

/*
 The report of one command.
 */
typedef struct CoringLabReport CoringLabReport;

/*
 A loaded and validated workspace document.
 */
typedef struct CoringLabWorkspace CoringLabWorkspace;

/*
 Parameters for [`coring_lab_run`]. Null strings and negative numbers mean
 "not given"; start from [`coring_lab_options_default`].
 */
typedef struct CoringLabOptions {
  const char *extension;
  const char *coring;
  const char *entwining;
  const char *deformation;
  /*
   `"standard"` or `"transpose"`.
   */
  const char *structure;
  int64_t max_degree;
  int64_t samples;
  int64_t max_arity;
  uint64_t seed;
} CoringLabOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Options with every field unset and seed 0.
 */
struct CoringLabOptions coring_lab_options_default(void);

/*
 Library version as a static string.
 */
const char *coring_lab_version(void);

/*
 Message of the last failed call on this thread, or null.

 The pointer stays valid until the next call into this library on the same thread.
 */
const char *coring_lab_last_error(void);

/*
 Loads and validates a workspace document from a file.

 # Safety
 `path` is a valid NUL-terminated string and `out` is a valid pointer to
 writable storage for one handle. On success `*out` owns a workspace that
 must be released with [`coring_lab_workspace_free`]; otherwise `*out` is set to null.
 */
enum CoringLabStatus coring_lab_workspace_load(const char *path, struct CoringLabWorkspace **out);

/*
 Loads and validates a workspace document from JSON text.

 # Safety
 Same contract as [`coring_lab_workspace_load`], with `json` a valid NUL-terminated string.
 */
enum CoringLabStatus coring_lab_workspace_parse(const char *json, struct CoringLabWorkspace **out);

/*
 Releases a workspace. Null is ignored.

 # Safety
 `ws` is null or a handle from this library that has not been freed yet.
 */
void coring_lab_workspace_free(struct CoringLabWorkspace *ws);

/*
 Runs one command (`"cartier"`, `"verify-duality"`, ...) on a workspace.

 Returns `CORING_LAB_STATUS_OK` or `CORING_LAB_STATUS_MATH_FAILURE` with a
 report in `*out`, or an error status with `*out` null.

 # Safety
 `ws` is a live workspace handle, `command` a valid NUL-terminated string,
 `options` null or a valid pointer whose string fields are null or valid
 NUL-terminated strings, and `out` a valid pointer to writable storage. The
 report must be released with [`coring_lab_report_free`].
 */
enum CoringLabStatus coring_lab_run(const struct CoringLabWorkspace *ws,
                                    const char *command,
                                    const struct CoringLabOptions *options,
                                    struct CoringLabReport **out);

/*
 `CORING_LAB_STATUS_OK` if every required check passed, else `CORING_LAB_STATUS_MATH_FAILURE`.

 # Safety
 `report` is a live report handle.
 */
enum CoringLabStatus coring_lab_report_status(const struct CoringLabReport *report);

/*
 The report as JSON, borrowed from the handle.

 # Safety
 `report` is a live report handle; the string is valid until it is freed.
 */
const char *coring_lab_report_json(const struct CoringLabReport *report);

/*
 The human-readable table, borrowed from the handle.

 # Safety
 `report` is a live report handle; the string is valid until it is freed.
 */
const char *coring_lab_report_text(const struct CoringLabReport *report);

/*
 Releases a report. Null is ignored.

 # Safety
 `report` is null or a handle from this library that has not been freed yet.
 */
void coring_lab_report_free(struct CoringLabReport *report);

/*
 Cartier cohomology dimensions of a coring with coefficients in itself, degrees `0..=max_degree`.

 # Safety
 `ws` is a live workspace handle, `coring` a valid NUL-terminated string,
 `dims` points to `len` writable `size_t` values and `written` is a valid pointer.
 */
enum CoringLabStatus coring_lab_cartier_dims(const struct CoringLabWorkspace *ws,
                                             const char *coring,
                                             uintptr_t max_degree,
                                             uintptr_t *dims,
                                             uintptr_t len,
                                             uintptr_t *written);

/*
 Relative Hochschild cohomology dimensions `HH^n(A|B)` with coefficients in `A`, degrees `0..=max_degree`.

 # Safety
 Same contract as [`coring_lab_cartier_dims`], with `extension` naming an extension.
 */
enum CoringLabStatus coring_lab_hochschild_dims(const struct CoringLabWorkspace *ws,
                                                const char *extension,
                                                uintptr_t max_degree,
                                                uintptr_t *dims,
                                                uintptr_t len,
                                                uintptr_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CORING_LAB_H */
