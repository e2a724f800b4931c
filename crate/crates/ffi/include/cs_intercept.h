#ifndef CS_INTERCEPT_H
#define CS_INTERCEPT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CsiBranch {
  CSI_BRANCH_LEFT = 0,
  CSI_BRANCH_RIGHT = 1,
} CsiBranch;

typedef enum CsiStatus {
  CSI_STATUS_OK = 0,
  CSI_STATUS_INVALID_INPUT = 1,
  CSI_STATUS_NULL_POINTER = 2,
  /**
   * The scenario is valid but has no intercept.
   */
  CSI_STATUS_INFEASIBLE = 3,
  CSI_STATUS_INTERNAL = 4,
} CsiStatus;

/**
 * Opaque solve result; holds every candidate of the searched branches.
 */
typedef struct CsiReport CsiReport;

/**
 * Opaque scenario handle.
 */
typedef struct CsiScenario CsiScenario;

/**
 * Opaque sampled trajectory.
 */
typedef struct CsiTrajectory CsiTrajectory;

/**
 * One intercept path. `lengths` are ξ1..ξ4: left arc, right arc, pursuer
 * straight, target straight. `durations` are the time spent on each, so
 * `durations[3] == total_time`.
 */
typedef struct CsiSolution {
  enum CsiBranch branch;
  double turn_angle;
  double lengths[4];
  double durations[4];
  double total_length;
  double total_time;
  double intercept_x;
  double intercept_y;
} CsiSolution;

typedef struct CsiSample {
  double time;
  double x;
  double y;
} CsiSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next `csi_*` call on the same thread.
 */
const char *csi_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *csi_version(void);

/**
 * Builds a scenario from raw values; headings in radians.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum CsiStatus csi_scenario_new(double pursuer_x,
                                double pursuer_y,
                                double pursuer_heading,
                                double pursuer_speed,
                                double turn_radius,
                                double target_x,
                                double target_y,
                                double target_heading,
                                double target_speed,
                                struct CsiScenario **out);

/**
 * Parses a scenario document (same schema as the CLI input).
 *
 * # Safety
 * `json` must be a NUL-terminated UTF-8 string; `out` must be writable.
 */
enum CsiStatus csi_scenario_from_json(const char *json, bool degrees, struct CsiScenario **out);

/**
 * # Safety
 * `scenario` must be NULL or a handle from `csi_scenario_*`, not yet freed.
 */
void csi_scenario_free(struct CsiScenario *scenario);

/**
 * Searches both turn directions. Returns `Ok` with a report even when no
 * intercept exists; query it with `csi_report_best`.
 *
 * # Safety
 * `scenario` must be a live handle; `out` must be writable.
 */
enum CsiStatus csi_solve(const struct CsiScenario *scenario, struct CsiReport **out);

/**
 * Like `csi_solve` but restricted to one initial turn direction.
 *
 * # Safety
 * `scenario` must be a live handle; `out` must be writable.
 */
enum CsiStatus csi_solve_forced(const struct CsiScenario *scenario,
                                enum CsiBranch branch,
                                struct CsiReport **out);

/**
 * Copies the shortest intercept into `out`, or returns `Infeasible`.
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum CsiStatus csi_report_best(const struct CsiReport *report, struct CsiSolution *out);

/**
 * Number of intercepts found across the searched branches; 0 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
size_t csi_report_candidate_count(const struct CsiReport *report);

/**
 * Copies candidate `index` (left branch first, then by turn angle).
 *
 * # Safety
 * `report` must be a live handle; `out` must be writable.
 */
enum CsiStatus csi_report_candidate(const struct CsiReport *report,
                                    size_t index,
                                    struct CsiSolution *out);

/**
 * # Safety
 * `report` must be NULL or a handle from `csi_solve*`, not yet freed.
 */
void csi_report_free(struct CsiReport *report);

/**
 * Samples the best intercept of `report`. Returns `Infeasible` when the
 * report has none.
 *
 * # Safety
 * `scenario` and `report` must be live handles, the report produced from
 * that scenario; `out` must be writable.
 */
enum CsiStatus csi_sample(const struct CsiScenario *scenario,
                          const struct CsiReport *report,
                          size_t arc_samples,
                          size_t line_samples,
                          struct CsiTrajectory **out);

/**
 * # Safety
 * `trajectory` must be NULL or a live handle.
 */
size_t csi_trajectory_pursuer_len(const struct CsiTrajectory *trajectory);

/**
 * # Safety
 * `trajectory` must be NULL or a live handle.
 */
size_t csi_trajectory_target_len(const struct CsiTrajectory *trajectory);

/**
 * Copies the pursuer samples into `buffer` (room for `capacity` entries).
 *
 * # Safety
 * `buffer` must point to `capacity` writable `CsiSample`s; `written` may be NULL.
 */
enum CsiStatus csi_trajectory_pursuer(const struct CsiTrajectory *trajectory,
                                      struct CsiSample *buffer,
                                      size_t capacity,
                                      size_t *written);

/**
 * Copies the target samples into `buffer` (room for `capacity` entries).
 *
 * # Safety
 * `buffer` must point to `capacity` writable `CsiSample`s; `written` may be NULL.
 */
enum CsiStatus csi_trajectory_target(const struct CsiTrajectory *trajectory,
                                     struct CsiSample *buffer,
                                     size_t capacity,
                                     size_t *written);

/**
 * CSV rendering (`actor,time,x,y`) as a new string; release it with
 * `csi_string_free`. Returns NULL for a NULL handle.
 *
 * # Safety
 * `trajectory` must be NULL or a live handle.
 */
char *csi_trajectory_csv(const struct CsiTrajectory *trajectory);

/**
 * # Safety
 * `trajectory` must be NULL or a handle from `csi_sample`, not yet freed.
 */
void csi_trajectory_free(struct CsiTrajectory *trajectory);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void csi_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CS_INTERCEPT_H */
