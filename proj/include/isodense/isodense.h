// Copyright 2026 The isodense Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* Stable C interface to the isodense solvers.
 *
 * Every fallible call returns an isodense_status; on failure the message is
 * available from isodense_last_error() on the same thread until the next
 * call. Objects are opaque handles released with their _destroy function.
 */

#ifndef ISODENSE_ISODENSE_H_
#define ISODENSE_ISODENSE_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(ISODENSE_BUILDING_LIBRARY)
#define ISODENSE_API __declspec(dllexport)
#else
#define ISODENSE_API __declspec(dllimport)
#endif
#else
#define ISODENSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ISODENSE_OK = 0,
  ISODENSE_ERR_DOMAIN = 1,   /* argument outside the mathematical domain */
  ISODENSE_ERR_BRANCH = 2,   /* quantity undefined on this branch (e.g. p <= 1) */
  ISODENSE_ERR_BRACKET = 3,  /* root finder could not bracket */
  ISODENSE_ERR_NUMERIC = 4,  /* iteration failed or disagreed with a cross-check */
  ISODENSE_ERR_CONFIG = 5,   /* bad option, method or suite name */
  ISODENSE_ERR_IO = 6,
  ISODENSE_ERR_NULL = 7,     /* required pointer was NULL */
  ISODENSE_ERR_INTERNAL = 8
} isodense_status;

ISODENSE_API const char* isodense_last_error(void);
ISODENSE_API const char* isodense_status_name(isodense_status status);
ISODENSE_API const char* isodense_version(void);

/* ---- density rho(r) = r^p + a ---- */

typedef struct isodense_density isodense_density;

ISODENSE_API isodense_status isodense_density_create(double p, double a, isodense_density** out);
ISODENSE_API void isodense_density_destroy(isodense_density* dens);
ISODENSE_API isodense_status isodense_density_eval(const isodense_density* dens, double r,
                                                   double* out);
ISODENSE_API isodense_status isodense_density_derivative(const isodense_density* dens, double r,
                                                         double* out);
ISODENSE_API isodense_status isodense_density_primitive(const isodense_density* dens, double q,
                                                        double* out);
ISODENSE_API isodense_status isodense_density_primitive_inverse(const isodense_density* dens,
                                                                double m, double* out);
/* *has_radius is 0 when rho is never log-convex (p <= 1 or a = 0). */
ISODENSE_API isodense_status isodense_density_log_convex_radius(const isodense_density* dens,
                                                                int* has_radius, double* out);

ISODENSE_API isodense_status isodense_critical_offset(double p, int dim, double mass,
                                                      double* out);
ISODENSE_API isodense_status isodense_critical_mass(const isodense_density* dens, int dim,
                                                    double* out);

/* ---- solutions ---- */

typedef enum {
  ISODENSE_BRANCH_AT_ORIGIN = 0,
  ISODENSE_BRANCH_ASYMMETRIC = 1,
  ISODENSE_BRANCH_SYMMETRIC = 2,
  ISODENSE_BRANCH_CENTRED = 3,
  ISODENSE_BRANCH_OFF_CENTRE = 4
} isodense_branch;

ISODENSE_API const char* isodense_branch_name(isodense_branch branch);

typedef enum {
  ISODENSE_METHOD_AUTO = 0,
  ISODENSE_METHOD_P2 = 1,
  ISODENSE_METHOD_P1 = 2,
  ISODENSE_METHOD_P_LT_1 = 3,
  ISODENSE_METHOD_SYMMETRIC = 4,
  ISODENSE_METHOD_GENERAL = 5,
  ISODENSE_METHOD_BRUTE_FORCE = 6
} isodense_method1d;

typedef struct {
  double alpha;
  double beta;
  double perimeter;
  double mass_residual;
  isodense_branch branch;
  int has_lagrange;
  double lagrange;
} isodense_interval_solution;

/* grid_n is used by ISODENSE_METHOD_BRUTE_FORCE only. */
ISODENSE_API isodense_status isodense_solve_1d(const isodense_density* dens, double mass,
                                               isodense_method1d method, int grid_n,
                                               isodense_interval_solution* out);

typedef struct {
  int dim;
  double radius;
  double center_offset;
  double perimeter;
  double mass;
  isodense_branch branch;
  int has_lagrange;
  double lagrange;
} isodense_ball_solution;

/* Closed forms for p = 2, otherwise the origin-centred ball. dim is 2 or 3. */
ISODENSE_API isodense_status isodense_solve_ball(const isodense_density* dens, int dim,
                                                 double mass, isodense_ball_solution* out);

ISODENSE_API isodense_status isodense_kappa_psi(const isodense_density* dens, double r,
                                                double r_dot, double r_ddot, double* out);

/* Reduces n disjoint intervals [lo[i], hi[i]] to one interval [0, *out_hi]
 * of equal mass and no larger perimeter. */
ISODENSE_API isodense_status isodense_reduce_intervals(const isodense_density* dens,
                                                       const double* lo, const double* hi,
                                                       size_t n, double* out_lo,
                                                       double* out_hi);

/* Fills four arrays of n*n entries, row-major with rows over |alpha|. */
ISODENSE_API isodense_status isodense_contour_grid(const isodense_density* dens,
                                                   double alpha_max, double beta_max, int n,
                                                   double* alpha_abs, double* beta,
                                                   double* perimeter, double* mass);

ISODENSE_API isodense_status isodense_beta_on_constraint(const isodense_density* dens,
                                                         double alpha_abs, double mass,
                                                         double* out);

ISODENSE_API isodense_status isodense_contour_curvatures(const isodense_density* dens,
                                                         double alpha_abs, double beta,
                                                         double* perimeter_curvature,
                                                         double* mass_curvature);

/* ---- evolver ---- */

typedef struct {
  int vertices; /* closed-curve vertices (2D) or profile segments (3D) */
  int max_iters;
  double tol;
  int has_initial_offset;
  double initial_offset;
} isodense_evolve_options;

ISODENSE_API void isodense_evolve_options_default(isodense_evolve_options* opts);

typedef struct isodense_evolve_result isodense_evolve_result;

typedef struct {
  int dim;
  int iterations;
  int converged;
  double weighted_perimeter;
  double weighted_mass;
  double unweighted_perimeter; /* 3D: surface area */
  double unweighted_area;      /* 3D: volume */
  double isoperimetric_quotient;
  double kappa_psi_mean;
  double kappa_psi_spread;
  double centroid_x;
  double centroid_y;
  double center_offset;
  double radius;
  double min_radial_distance;
  double mass_residual;
  double projected_gradient;
} isodense_evolve_summary;

/* opts may be NULL for defaults. dim is 2 or 3. */
ISODENSE_API isodense_status isodense_evolve(const isodense_density* dens, int dim, double mass,
                                             const isodense_evolve_options* opts,
                                             isodense_evolve_result** out);
ISODENSE_API void isodense_evolve_result_destroy(isodense_evolve_result* res);
ISODENSE_API isodense_status isodense_evolve_result_summary(const isodense_evolve_result* res,
                                                            isodense_evolve_summary* out);
ISODENSE_API size_t isodense_evolve_result_vertex_count(const isodense_evolve_result* res);
/* Writes x0,y0,x1,y1,... ; capacity counts doubles. */
ISODENSE_API isodense_status isodense_evolve_result_vertices(const isodense_evolve_result* res,
                                                             double* xy, size_t capacity);
ISODENSE_API isodense_status isodense_evolve_result_write_csv(const isodense_evolve_result* res,
                                                              const char* path);

/* ---- sweeps ---- */

typedef struct {
  double a;
  isodense_branch branch;
  double first;  /* alpha (1D) or R */
  double second; /* beta (1D) or r0 */
  double perimeter;
  double mass_residual;
} isodense_sweep_point;

ISODENSE_API isodense_status isodense_sweep_point_solve(int dim, double p, double a, double mass,
                                                        int force_numeric,
                                                        const isodense_evolve_options* opts,
                                                        isodense_sweep_point* out);

/* ---- verification suites ---- */

typedef void (*isodense_verify_callback)(const char* check, int passed, double value,
                                         double limit, void* user);

ISODENSE_API size_t isodense_verify_suite_count(void);
ISODENSE_API const char* isodense_verify_suite_name(size_t index);
/* Calls cb once per check. Unknown suite: ISODENSE_ERR_CONFIG. */
ISODENSE_API isodense_status isodense_verify(const char* suite, isodense_verify_callback cb,
                                             void* user, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif  /* ISODENSE_ISODENSE_H_ */
