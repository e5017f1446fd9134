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

#include "dispatch.hpp"

#include <cmath>

#include "isodense/error.hpp"

namespace isodense::detail {
namespace {

// Offsets this close to the axis are reported as centred.
constexpr double kCentredOffset = 1e-3;

SweepPoint from_report(double a, const EvolveReport& rep) {
  const bool centred = rep.center_offset < kCentredOffset * rep.radius;
  return {a,
          std::string(to_string(centred ? BallBranch::Centred : BallBranch::OffCentre)),
          rep.radius,
          rep.center_offset,
          rep.weighted_perimeter,
          rep.mass_residual};
}

}  // namespace

IntervalSolution solve_1d(const Density& dens, double mass, Method1d method, int grid_n) {
  const double p = dens.p();
  if (method == Method1d::Auto) {
    if (p == 2.0) {
      method = Method1d::P2;
    } else if (p == 1.0) {
      method = Method1d::P1;
    } else if (p < 1.0) {
      method = Method1d::PLessThanOne;
    } else {
      method = Method1d::General;
    }
  }
  switch (method) {
    case Method1d::P2:
      if (p != 2.0) throw ConfigError("method p2 requires p = 2");
      return solve_p2(dens.a(), mass);
    case Method1d::P1:
      if (p != 1.0) throw ConfigError("method p1 requires p = 1");
      return solve_p1(dens.a(), mass);
    case Method1d::PLessThanOne:
      return solve_p_lt_1(dens, mass);
    case Method1d::Symmetric:
      return solve_symmetric(dens, mass);
    case Method1d::General:
      return solve_general(dens, mass);
    case Method1d::BruteForce:
      return brute_force_oracle(dens, mass, grid_n);
    case Method1d::Auto:
      break;
  }
  throw ConfigError("unknown 1D method");
}

BallSolution solve_ball(const Density& dens, Dimension dim, double mass) {
  if (dens.p() == 2.0) {
    if (dim.d() == 2) return solve_2d_p2(dens.a(), mass);
    if (dim.d() == 3) return solve_3d_p2(dens.a(), mass);
  }
  return symmetric_ball(dens, dim, mass);
}

SweepPoint sweep_point(int dim, double p, double a, double mass, bool force_numeric,
                       const EvolveOptions& opts) {
  const Density dens(p, a);
  const Dimension d(dim);
  if (dim == 1) {
    const IntervalSolution s =
        solve_1d(dens, mass, force_numeric ? Method1d::General : Method1d::Auto);
    const double m = mass1d(dens, Interval(s.alpha, s.beta));
    return {a, std::string(to_string(s.branch)), s.alpha, s.beta, s.perimeter,
            std::abs(m - mass)};
  }
  if (force_numeric) {
    const EvolveReport rep = dim == 2 ? evolve_2d(dens, mass, opts) : evolve_3d_axisym(dens, mass, opts);
    return from_report(a, rep);
  }
  if (p == 2.0 || (p > 1.0 && a >= critical_offset(p, d, mass))) {
    const BallSolution s = solve_ball(dens, d, mass);
    const BallMeasures m = dim == 2 ? offcenter_quadrature_2d(dens, s.radius, s.center_offset)
                                    : offcenter_quadrature_3d(dens, s.radius, s.center_offset);
    return {a, std::string(to_string(s.branch)), s.radius, s.center_offset, s.perimeter,
            std::abs(m.mass - mass)};
  }
  const EvolveReport rep = dim == 2 ? evolve_2d(dens, mass, opts) : evolve_3d_axisym(dens, mass, opts);
  return from_report(a, rep);
}

}  // namespace isodense::detail
