#ifndef NORMSURF_H
#define NORMSURF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NsStatus {
  NS_STATUS_OK = 0,
  NS_STATUS_NULL_ARGUMENT = 1,
  NS_STATUS_INVALID_UTF8 = 2,
  /**
   * Input text or gluing table rejected.
   */
  NS_STATUS_PARSE = 3,
  /**
   * Arguments or triangulation unsuitable for the request.
   */
  NS_STATUS_INVALID_INPUT = 4,
  /**
   * A computation failed, for instance on overflow.
   */
  NS_STATUS_COMPUTATION = 5,
  NS_STATUS_PANIC = 6,
} NsStatus;

/**
 * A parsed triangulation with its meridian marking.
 */
typedef struct NsTriangulation NsTriangulation;

/**
 * Pipeline settings. `boundary_budget < 0` selects the automatic budget;
 * zero `interior_cap`, `coord_cap` or `threads` selects the default.
 */
typedef struct NsPipelineConfig {
  uint64_t chi_budget;
  int64_t boundary_budget;
  uint32_t depth;
  uint32_t flat_budget;
  uint32_t interior_cap;
  int64_t coord_cap;
  uint64_t surface_count_factor;
  uint32_t threads;
} NsPipelineConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call on this thread.
 */
const char *ns_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ns_string_free(char *s);

/**
 * Parses a triangulation file in the JSON format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum NsStatus ns_triangulation_parse(const char *text, struct NsTriangulation **out);

/**
 * # Safety
 * `t` must be null or a handle from [`ns_triangulation_parse`], not yet freed.
 */
void ns_triangulation_free(struct NsTriangulation *t);

/**
 * Number of tetrahedra, or 0 for a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
uintptr_t ns_triangulation_tet_count(const struct NsTriangulation *t);

/**
 * Validation report as JSON.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum NsStatus ns_validate(const struct NsTriangulation *t, char **out);

/**
 * Meridional bound of the marked meridian as JSON.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum NsStatus ns_meridian_bound(const struct NsTriangulation *t, char **out);

struct NsPipelineConfig ns_pipeline_config_default(void);

/**
 * Runs the full search on a triangulation file and returns the candidate
 * report as JSON. A report with flags is still `Ok`; inspect its `flags`.
 *
 * # Safety
 * `text` must be a nul-terminated string, `config` null or readable, and
 * `out` writable.
 */
enum NsStatus ns_run_pipeline(const char *text, const struct NsPipelineConfig *config, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NORMSURF_H */
