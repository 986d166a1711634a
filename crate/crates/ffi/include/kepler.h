#ifndef KEPLER_H
#define KEPLER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum KeplerStatus {
  KEPLER_STATUS_OK = 0,
  KEPLER_STATUS_NULL_POINTER = 1,
  KEPLER_STATUS_INVALID_INPUT = 2,
  KEPLER_STATUS_SINGULAR_POSITION = 3,
  KEPLER_STATUS_DEGENERATE_ORBIT = 4,
  KEPLER_STATUS_NOT_BOUND = 5,
  KEPLER_STATUS_INSUFFICIENT_COVERAGE = 6,
  KEPLER_STATUS_COLLINEAR_POINTS = 7,
  KEPLER_STATUS_PARALLEL_LINES = 8,
  KEPLER_STATUS_DEGENERATE_CONFIGURATION = 9,
  KEPLER_STATUS_INDEX_OUT_OF_RANGE = 10,
  KEPLER_STATUS_IO = 11,
  KEPLER_STATUS_PANIC = 12,
} KeplerStatus;

typedef enum KeplerMethod {
  KEPLER_METHOD_RK4 = 0,
  KEPLER_METHOD_VERLET = 1,
} KeplerMethod;

/**
 * Opaque integrated trajectory.
 */
typedef struct KeplerTrajectory KeplerTrajectory;

typedef struct KeplerVec3 {
  double x;
  double y;
  double z;
} KeplerVec3;

typedef struct KeplerDrift {
  double max_rel_dh;
  double max_rel_dl;
  double max_rel_dk;
} KeplerDrift;

/**
 * Orbital ellipse of a bound state. The first focus is the origin.
 */
typedef struct KeplerEllipse {
  double a;
  double b;
  double c;
  double eccentricity;
  double period;
  double energy;
  double angular_momentum;
  double lrl_norm;
  struct KeplerVec3 second_focus;
  struct KeplerVec3 center;
} KeplerEllipse;

typedef struct KeplerNewtonSummary {
  double e_distance_residual;
  double lemma_de_ef;
  double lemma_fr_br;
  double areal_center_residual;
  double areal_focus_residual;
  double ratio_residual;
  double inverse_square_spread;
  double mean_q;
} KeplerNewtonSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t kepler_last_error_message(char *buf, size_t len);

/**
 * Static, NUL-terminated name of a status code.
 */
const char *kepler_status_name(enum KeplerStatus status);

/**
 * Integrates `n_steps` fixed steps from `(r0, v0)`. A `dt` of zero picks
 * the default step. On success `*out` owns a new handle.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_integrate(double m,
                                   double k,
                                   struct KeplerVec3 r0,
                                   struct KeplerVec3 v0,
                                   double dt,
                                   size_t n_steps,
                                   enum KeplerMethod method,
                                   struct KeplerTrajectory **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `traj` must be null or a handle from [`kepler_integrate`] not yet freed.
 */
void kepler_trajectory_free(struct KeplerTrajectory *traj);

/**
 * Number of samples, 0 for null.
 *
 * # Safety
 * `traj` must be null or a live handle.
 */
size_t kepler_trajectory_len(const struct KeplerTrajectory *traj);

/**
 * Time, position and velocity of sample `index`. Any of the out pointers
 * may be null.
 *
 * # Safety
 * `traj` must be null or a live handle; non-null outs valid for writes.
 */
enum KeplerStatus kepler_trajectory_sample(const struct KeplerTrajectory *traj,
                                           size_t index,
                                           double *t,
                                           struct KeplerVec3 *r,
                                           struct KeplerVec3 *v);

/**
 * Period from the accumulated angle; needs one full revolution.
 *
 * # Safety
 * `traj` must be null or a live handle; `out` null or valid for writes.
 */
enum KeplerStatus kepler_trajectory_measure_period(const struct KeplerTrajectory *traj,
                                                   double *out);

/**
 * Largest relative drift of H, L and K over the trajectory.
 *
 * # Safety
 * `traj` must be null or a live handle; `out` null or valid for writes.
 */
enum KeplerStatus kepler_trajectory_drift(const struct KeplerTrajectory *traj,
                                          struct KeplerDrift *out);

/**
 * Writes the trajectory CSV (`t,rx,ry,rz,vx,vy,vz`) to a UTF-8 path.
 *
 * # Safety
 * `traj` must be null or a live handle; `path` null or a NUL-terminated
 * string.
 */
enum KeplerStatus kepler_trajectory_write_csv(const struct KeplerTrajectory *traj,
                                              const char *path);

/**
 * `H = m v²/2 - k/r`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_energy(double m,
                                double k,
                                struct KeplerVec3 r,
                                struct KeplerVec3 v,
                                double *out);

/**
 * `L = r × m v`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_angular_momentum(double m,
                                          struct KeplerVec3 r,
                                          struct KeplerVec3 v,
                                          struct KeplerVec3 *out);

/**
 * `K = p × L - k m r/|r|`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_lrl_vector(double m,
                                    double k,
                                    struct KeplerVec3 r,
                                    struct KeplerVec3 v,
                                    struct KeplerVec3 *out);

/**
 * Second focus `K/(mH)`; `NotBound` for `H ≥ 0`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_focal_point(double m,
                                     double k,
                                     struct KeplerVec3 r,
                                     struct KeplerVec3 v,
                                     struct KeplerVec3 *out);

/**
 * Reflection of the projection `s` in the tangent line at `r`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_reflect_in_tangent(double m,
                                            double k,
                                            struct KeplerVec3 r,
                                            struct KeplerVec3 v,
                                            struct KeplerVec3 *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_ellipse_geometry(double m,
                                          double k,
                                          struct KeplerVec3 r,
                                          struct KeplerVec3 v,
                                          struct KeplerEllipse *out);

/**
 * Hodograph circle: center `iK/(mL)` and radius `k/L`.
 *
 * # Safety
 * `center` and `radius` must be null or valid for writes.
 */
enum KeplerStatus kepler_hodograph_circle(double m,
                                          double k,
                                          struct KeplerVec3 r,
                                          struct KeplerVec3 v,
                                          struct KeplerVec3 *center,
                                          double *radius);

/**
 * Two-center check on the planar ellipse with semi-axes `a ≥ b`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum KeplerStatus kepler_newton_check(double a,
                                      double b,
                                      size_t n_samples,
                                      struct KeplerNewtonSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KEPLER_H */
