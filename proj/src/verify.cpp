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

#include "verify.hpp"

#include <array>
#include <cmath>
#include <random>

#include "dispatch.hpp"
#include "format.hpp"
#include "isodense/error.hpp"
#include "isodense/evolver.hpp"
#include "isodense/interval1d.hpp"
#include "isodense/radial.hpp"

namespace isodense::detail {
namespace {

constexpr std::array<std::string_view, 5> kSuites = {
    "oracle1d", "branch-continuity", "reduction", "radial-quadrature", "evolver-p2"};

double rel(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

// value <= limit passes.
void check(std::vector<CheckResult>& out, std::string name, double value, double limit) {
  out.push_back({std::move(name), value <= limit, value, limit});
}

std::string tag(std::string_view what, double p, double a) {
  return std::string(what) + " p=" + format_number(p) + " a=" + format_number(a);
}

std::vector<CheckResult> oracle1d() {
  std::vector<CheckResult> out;
  for (const double p : {0.5, 1.0, 2.0, 4.0}) {
    for (const double a : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      const Density dens(p, a);
      const IntervalSolution s = solve_1d(dens, 1.0, Method1d::Auto);
      const IntervalSolution bf = brute_force_oracle(dens, 1.0, 10000);
      check(out, tag("brute-force perimeter", p, a), rel(s.perimeter, bf.perimeter), 2e-3);
      // The scan can only find a perimeter at or above the true minimum.
      check(out, tag("closed form not above grid", p, a),
            std::max(0.0, s.perimeter - bf.perimeter) / bf.perimeter, 1e-9);
      if (p != 4.0) {
        const IntervalSolution g = solve_general(dens, 1.0);
        check(out, tag("general vs closed form", p, a), rel(g.perimeter, s.perimeter), 1e-6);
      }
      check(out, tag("mass residual", p, a),
            std::abs(mass1d(dens, Interval(s.alpha, s.beta)) - 1.0), 1e-8);
    }
  }
  return out;
}

std::vector<CheckResult> branch_continuity() {
  std::vector<CheckResult> out;
  for (const double m : {0.5, 1.0, 2.0}) {
    const double a_crit = critical_offset_1d(2.0, m);
    const double p_asym = std::cbrt(9.0 * m * m);
    const IntervalSolution sym = solve_symmetric(Density(2.0, a_crit), m);
    check(out, "asymmetric = symmetric at a_crit, M=" + format_number(m), rel(sym.perimeter, p_asym),
          1e-9);
    const double eps = 1e-7 * a_crit;
    const double below = solve_p2(a_crit - eps, m).perimeter;
    const double above = solve_p2(a_crit + eps, m).perimeter;
    check(out, "perimeter continuous across a_crit, M=" + format_number(m), rel(above, below), 1e-6);
  }
  return out;
}

std::vector<CheckResult> reduction() {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(20260101);
  const std::array<double, 4> ps = {0.5, 1.0, 2.0, 4.0};
  std::uniform_real_distribution<double> ua(0.05, 2.0), gap(0.05, 0.6), len(0.05, 0.8),
      start(-2.0, 0.5);
  std::uniform_int_distribution<int> count(1, 5);
  double worst_mass = 0.0, worst_increase = 0.0, worst_merge = 0.0, worst_split = 0.0;
  double worst_total = 0.0;
  int merges = 0;
  for (int c = 0; c < 200; ++c) {
    const Density dens(ps[c % 4], ua(rng));
    std::vector<Interval> ivs;
    double x = start(rng);
    for (int k = count(rng); k > 0; --k) {
      const double lo = x;
      x += len(rng);
      ivs.emplace_back(lo, x);
      x += gap(rng);
    }
    const ReductionTrace t = reduce_intervals_traced(dens, ivs);
    const double final_mass = mass1d(dens, t.result);
    worst_mass = std::max(worst_mass, rel(final_mass, t.initial_mass));
    worst_total = std::max(worst_total, (perimeter1d(dens, t.result) - t.initial_perimeter) /
                                            t.initial_perimeter);
    double prev = t.initial_perimeter;
    for (const ReductionStep& s : t.steps) {
      const double drop = prev - s.perimeter;
      if (s.kind == ReductionStepKind::Split) {
        // Cutting at the origin books two new endpoints at rho(0) = a.
        worst_split = std::max(worst_split, std::abs(drop + 2.0 * dens.a()));
      } else {
        if (s.kind == ReductionStepKind::Merge) {
          ++merges;
          worst_merge = std::max(worst_merge, std::abs(drop - 2.0 * dens.a()));
        }
        worst_increase = std::max(worst_increase, -drop / t.initial_perimeter);
      }
      prev = s.perimeter;
    }
  }
  check(out, "mass conserved (200 cases)", worst_mass, 1e-10);
  check(out, "final perimeter not above initial", std::max(0.0, worst_total), 1e-12);
  check(out, "no step other than the origin cut increases perimeter",
        std::max(0.0, worst_increase), 1e-12);
  check(out, "origin cut adds exactly 2a", worst_split, 1e-12);
  check(out, "merge removes exactly 2a", worst_merge, 1e-12);
  check(out, "merge steps exercised", merges > 0 ? 0.0 : 1.0, 0.0);
  return out;
}

std::vector<CheckResult> radial_quadrature() {
  std::vector<CheckResult> out;
  struct Case {
    double radius, offset, a;
  };
  for (const Case c : {Case{0.67872, 0.51055, 0.2}, Case{1.0, 0.0, 0.0}, Case{0.5, 1.3, 0.7},
                       Case{0.8, 0.3, 0.0}}) {
    const Density dens(2.0, c.a);
    const std::string t = " R=" + format_number(c.radius) + " r0=" + format_number(c.offset);
    const BallMeasures q2 = offcenter_quadrature_2d(dens, c.radius, c.offset);
    const BallMeasures e2 = offcenter_p2_2d(c.radius, c.offset, c.a);
    check(out, "2D perimeter" + t, rel(q2.perimeter, e2.perimeter), 1e-8);
    check(out, "2D mass" + t, rel(q2.mass, e2.mass), 1e-8);
    const BallMeasures q3 = offcenter_quadrature_3d(dens, c.radius, c.offset);
    const BallMeasures e3 = offcenter_p2_3d(c.radius, c.offset, c.a);
    check(out, "3D area" + t, rel(q3.perimeter, e3.perimeter), 1e-8);
    check(out, "3D mass" + t, rel(q3.mass, e3.mass), 1e-8);
  }
  return out;
}

std::vector<CheckResult> evolver_p2() {
  std::vector<CheckResult> out;
  for (const double a : {0.2, 1.0}) {
    const BallSolution s = solve_2d_p2(a, 1.0);
    const EvolveReport r = evolve_2d(Density(2.0, a), 1.0);
    const std::string t = " a=" + format_number(a);
    check(out, "perimeter" + t, rel(r.weighted_perimeter, s.perimeter), 5e-3);
    check(out, "radius" + t, rel(r.radius, s.radius), 5e-3);
    if (s.branch == BallBranch::OffCentre) {
      check(out, "centre offset" + t, rel(r.center_offset, s.center_offset), 2e-2);
    } else {
      check(out, "centre offset" + t, r.center_offset, 1e-2);
    }
    check(out, "quotient" + t, std::abs(isoperimetric_quotient(r) - 1.0), 1e-3);
    check(out, "mass residual" + t, r.mass_residual, 1e-8);
  }
  return out;
}

}  // namespace

std::span<const std::string_view> verify_suite_names() { return kSuites; }

std::vector<CheckResult> run_verify_suite(std::string_view suite) {
  if (suite == "oracle1d") return oracle1d();
  if (suite == "branch-continuity") return branch_continuity();
  if (suite == "reduction") return reduction();
  if (suite == "radial-quadrature") return radial_quadrature();
  if (suite == "evolver-p2") return evolver_p2();
  throw ConfigError("unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace isodense::detail
