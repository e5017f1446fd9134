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

#include "isodense/isodense.h"

#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "dispatch.hpp"
#include "isodense/density.hpp"
#include "isodense/error.hpp"
#include "isodense/evolver.hpp"
#include "isodense/interval1d.hpp"
#include "isodense/radial.hpp"
#include "verify.hpp"

struct isodense_density {
  isodense::Density dens;
};

struct isodense_evolve_result {
  isodense::EvolveReport report;
};

namespace {

using namespace isodense;

thread_local std::string g_last_error;

isodense_status fail(isodense_status s, const char* what) {
  g_last_error = what;
  return s;
}

// Runs body and maps the exception hierarchy onto status codes.
template <typename F>
isodense_status guarded(F&& body) {
  try {
    g_last_error.clear();
    std::forward<F>(body)();
    return ISODENSE_OK;
  } catch (const DomainError& e) {
    return fail(ISODENSE_ERR_DOMAIN, e.what());
  } catch (const BranchError& e) {
    return fail(ISODENSE_ERR_BRANCH, e.what());
  } catch (const BracketError& e) {
    return fail(ISODENSE_ERR_BRACKET, e.what());
  } catch (const NumericError& e) {
    return fail(ISODENSE_ERR_NUMERIC, e.what());
  } catch (const ConfigError& e) {
    return fail(ISODENSE_ERR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(ISODENSE_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(ISODENSE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ISODENSE_ERR_INTERNAL, "unknown exception");
  }
}

#define ISODENSE_REQUIRE(ptr) \
  if ((ptr) == nullptr) return fail(ISODENSE_ERR_NULL, #ptr " is NULL")

isodense_branch to_c(IntervalBranch b) {
  switch (b) {
    case IntervalBranch::AtOrigin:
      return ISODENSE_BRANCH_AT_ORIGIN;
    case IntervalBranch::Asymmetric:
      return ISODENSE_BRANCH_ASYMMETRIC;
    case IntervalBranch::Symmetric:
      break;
  }
  return ISODENSE_BRANCH_SYMMETRIC;
}

isodense_branch to_c(BallBranch b) {
  return b == BallBranch::Centred ? ISODENSE_BRANCH_CENTRED : ISODENSE_BRANCH_OFF_CENTRE;
}

isodense_branch branch_from_name(const std::string& name) {
  for (const auto b : {IntervalBranch::AtOrigin, IntervalBranch::Asymmetric,
                       IntervalBranch::Symmetric}) {
    if (name == to_string(b)) return to_c(b);
  }
  return name == to_string(BallBranch::Centred) ? ISODENSE_BRANCH_CENTRED
                                                : ISODENSE_BRANCH_OFF_CENTRE;
}

EvolveOptions to_cpp(const isodense_evolve_options* o) {
  EvolveOptions opts;
  if (o == nullptr) return opts;
  opts.vertices = o->vertices;
  opts.max_iters = o->max_iters;
  opts.tol = o->tol;
  if (o->has_initial_offset) opts.initial_offset = o->initial_offset;
  return opts;
}

detail::Method1d to_cpp(isodense_method1d m) {
  switch (m) {
    case ISODENSE_METHOD_AUTO:
      return detail::Method1d::Auto;
    case ISODENSE_METHOD_P2:
      return detail::Method1d::P2;
    case ISODENSE_METHOD_P1:
      return detail::Method1d::P1;
    case ISODENSE_METHOD_P_LT_1:
      return detail::Method1d::PLessThanOne;
    case ISODENSE_METHOD_SYMMETRIC:
      return detail::Method1d::Symmetric;
    case ISODENSE_METHOD_GENERAL:
      return detail::Method1d::General;
    case ISODENSE_METHOD_BRUTE_FORCE:
      return detail::Method1d::BruteForce;
  }
  throw ConfigError("unknown 1D method " + std::to_string(static_cast<int>(m)));
}

}  // namespace

extern "C" {

const char* isodense_last_error(void) { return g_last_error.c_str(); }

const char* isodense_status_name(isodense_status status) {
  switch (status) {
    case ISODENSE_OK:
      return "ok";
    case ISODENSE_ERR_DOMAIN:
      return "domain error";
    case ISODENSE_ERR_BRANCH:
      return "branch error";
    case ISODENSE_ERR_BRACKET:
      return "bracket error";
    case ISODENSE_ERR_NUMERIC:
      return "numeric error";
    case ISODENSE_ERR_CONFIG:
      return "configuration error";
    case ISODENSE_ERR_IO:
      return "I/O error";
    case ISODENSE_ERR_NULL:
      return "null argument";
    case ISODENSE_ERR_INTERNAL:
      break;
  }
  return "internal error";
}

const char* isodense_version(void) { return "0.1.0"; }

isodense_status isodense_density_create(double p, double a, isodense_density** out) {
  ISODENSE_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new isodense_density{Density(p, a)}; });
}

void isodense_density_destroy(isodense_density* dens) { delete dens; }

isodense_status isodense_density_eval(const isodense_density* dens, double r, double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = dens->dens.eval(r); });
}

isodense_status isodense_density_derivative(const isodense_density* dens, double r, double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = dens->dens.derivative(r); });
}

isodense_status isodense_density_primitive(const isodense_density* dens, double q, double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = dens->dens.primitive(q); });
}

isodense_status isodense_density_primitive_inverse(const isodense_density* dens, double m,
                                                   double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = dens->dens.primitive_inverse(m); });
}

isodense_status isodense_density_log_convex_radius(const isodense_density* dens, int* has_radius,
                                                   double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(has_radius);
  ISODENSE_REQUIRE(out);
  return guarded([&] {
    const auto r = dens->dens.log_convex_radius();
    *has_radius = r.has_value() ? 1 : 0;
    *out = r.value_or(0.0);
  });
}

isodense_status isodense_critical_offset(double p, int dim, double mass, double* out) {
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = critical_offset(p, Dimension(dim), mass); });
}

isodense_status isodense_critical_mass(const isodense_density* dens, int dim, double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = critical_mass(dens->dens, Dimension(dim)); });
}

const char* isodense_branch_name(isodense_branch branch) {
  switch (branch) {
    case ISODENSE_BRANCH_AT_ORIGIN:
      return "AtOrigin";
    case ISODENSE_BRANCH_ASYMMETRIC:
      return "Asymmetric";
    case ISODENSE_BRANCH_SYMMETRIC:
      return "Symmetric";
    case ISODENSE_BRANCH_CENTRED:
      return "Centred";
    case ISODENSE_BRANCH_OFF_CENTRE:
      break;
  }
  return "OffCentre";
}

isodense_status isodense_solve_1d(const isodense_density* dens, double mass,
                                  isodense_method1d method, int grid_n,
                                  isodense_interval_solution* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] {
    const IntervalSolution s = detail::solve_1d(dens->dens, mass, to_cpp(method), grid_n);
    const double m = mass1d(dens->dens, Interval(s.alpha, s.beta));
    *out = {s.alpha,
            s.beta,
            s.perimeter,
            std::abs(m - mass),
            to_c(s.branch),
            s.lagrange_multiplier ? 1 : 0,
            s.lagrange_multiplier.value_or(0.0)};
  });
}

isodense_status isodense_solve_ball(const isodense_density* dens, int dim, double mass,
                                    isodense_ball_solution* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] {
    const BallSolution s = detail::solve_ball(dens->dens, Dimension(dim), mass);
    *out = {s.dim.d(),        s.radius, s.center_offset, s.perimeter, s.mass, to_c(s.branch),
            s.lagrange_multiplier ? 1 : 0, s.lagrange_multiplier.value_or(0.0)};
  });
}

isodense_status isodense_kappa_psi(const isodense_density* dens, double r, double r_dot,
                                   double r_ddot, double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = kappa_psi(dens->dens, r, r_dot, r_ddot); });
}

isodense_status isodense_reduce_intervals(const isodense_density* dens, const double* lo,
                                          const double* hi, size_t n, double* out_lo,
                                          double* out_hi) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(lo);
  ISODENSE_REQUIRE(hi);
  ISODENSE_REQUIRE(out_lo);
  ISODENSE_REQUIRE(out_hi);
  return guarded([&] {
    std::vector<Interval> ivs;
    ivs.reserve(n);
    for (size_t i = 0; i < n; ++i) ivs.emplace_back(lo[i], hi[i]);
    const Interval r = reduce_intervals(dens->dens, ivs);
    *out_lo = r.lo;
    *out_hi = r.hi;
  });
}

isodense_status isodense_contour_grid(const isodense_density* dens, double alpha_max,
                                      double beta_max, int n, double* alpha_abs, double* beta,
                                      double* perimeter, double* mass) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(alpha_abs);
  ISODENSE_REQUIRE(beta);
  ISODENSE_REQUIRE(perimeter);
  ISODENSE_REQUIRE(mass);
  return guarded([&] {
    const ContourGrid g = contour_grid(dens->dens, alpha_max, beta_max, n);
    for (std::size_t i = 0; i < g.points.size(); ++i) {
      alpha_abs[i] = g.points[i].alpha_abs;
      beta[i] = g.points[i].beta;
      perimeter[i] = g.points[i].perimeter;
      mass[i] = g.points[i].mass;
    }
  });
}

isodense_status isodense_beta_on_constraint(const isodense_density* dens, double alpha_abs,
                                            double mass, double* out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  return guarded([&] { *out = beta_on_constraint(dens->dens, alpha_abs, mass); });
}

isodense_status isodense_contour_curvatures(const isodense_density* dens, double alpha_abs,
                                            double beta, double* perimeter_curvature,
                                            double* mass_curvature) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(perimeter_curvature);
  ISODENSE_REQUIRE(mass_curvature);
  return guarded([&] {
    const ContourCurvatures c = contour_curvatures(dens->dens, alpha_abs, beta);
    *perimeter_curvature = c.perimeter_contour;
    *mass_curvature = c.mass_contour;
  });
}

void isodense_evolve_options_default(isodense_evolve_options* opts) {
  if (opts == nullptr) return;
  const EvolveOptions d;
  *opts = {d.vertices, d.max_iters, d.tol, 0, 0.0};
}

isodense_status isodense_evolve(const isodense_density* dens, int dim, double mass,
                                const isodense_evolve_options* opts,
                                isodense_evolve_result** out) {
  ISODENSE_REQUIRE(dens);
  ISODENSE_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const Dimension d(dim);
    if (d.d() == 1) throw DomainError("evolve: dimension must be 2 or 3");
    const EvolveOptions o = to_cpp(opts);
    EvolveReport rep = d.d() == 2 ? evolve_2d(dens->dens, mass, o)
                                  : evolve_3d_axisym(dens->dens, mass, o);
    *out = new isodense_evolve_result{std::move(rep)};
  });
}

void isodense_evolve_result_destroy(isodense_evolve_result* res) { delete res; }

isodense_status isodense_evolve_result_summary(const isodense_evolve_result* res,
                                               isodense_evolve_summary* out) {
  ISODENSE_REQUIRE(res);
  ISODENSE_REQUIRE(out);
  return guarded([&] {
    const EvolveReport& r = res->report;
    *out = {r.dim,
            r.iterations,
            r.converged ? 1 : 0,
            r.weighted_perimeter,
            r.weighted_mass,
            r.unweighted_perimeter,
            r.unweighted_area,
            isoperimetric_quotient(r),
            r.kappa_psi_mean,
            r.kappa_psi_spread,
            r.centroid.x,
            r.centroid.y,
            r.center_offset,
            r.radius,
            r.min_radial_distance,
            r.mass_residual,
            r.projected_gradient};
  });
}

size_t isodense_evolve_result_vertex_count(const isodense_evolve_result* res) {
  return res == nullptr ? 0 : res->report.final_curve.size();
}

isodense_status isodense_evolve_result_vertices(const isodense_evolve_result* res, double* xy,
                                                size_t capacity) {
  ISODENSE_REQUIRE(res);
  ISODENSE_REQUIRE(xy);
  const auto v = res->report.final_curve.vertices();
  if (capacity < 2 * v.size()) return fail(ISODENSE_ERR_CONFIG, "vertex buffer too small");
  for (std::size_t i = 0; i < v.size(); ++i) {
    xy[2 * i] = v[i].x;
    xy[2 * i + 1] = v[i].y;
  }
  g_last_error.clear();
  return ISODENSE_OK;
}

isodense_status isodense_evolve_result_write_csv(const isodense_evolve_result* res,
                                                 const char* path) {
  ISODENSE_REQUIRE(res);
  ISODENSE_REQUIRE(path);
  return guarded([&] { write_curve_csv(res->report.final_curve, std::string(path)); });
}

isodense_status isodense_sweep_point_solve(int dim, double p, double a, double mass,
                                           int force_numeric, const isodense_evolve_options* opts,
                                           isodense_sweep_point* out) {
  ISODENSE_REQUIRE(out);
  return guarded([&] {
    const detail::SweepPoint s =
        detail::sweep_point(dim, p, a, mass, force_numeric != 0, to_cpp(opts));
    *out = {s.a, branch_from_name(s.branch), s.first, s.second, s.perimeter, s.mass_residual};
  });
}

size_t isodense_verify_suite_count(void) { return detail::verify_suite_names().size(); }

const char* isodense_verify_suite_name(size_t index) {
  const auto names = detail::verify_suite_names();
  return index < names.size() ? names[index].data() : nullptr;
}

isodense_status isodense_verify(const char* suite, isodense_verify_callback cb, void* user,
                                int* all_passed) {
  ISODENSE_REQUIRE(suite);
  ISODENSE_REQUIRE(all_passed);
  return guarded([&] {
    const auto checks = detail::run_verify_suite(suite);
    *all_passed = 1;
    for (const auto& c : checks) {
      if (!c.passed) *all_passed = 0;
      if (cb != nullptr) cb(c.name.c_str(), c.passed ? 1 : 0, c.value, c.limit, user);
    }
  });
}

}  // extern "C"
