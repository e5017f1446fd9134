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

// Circles (d = 2) and spheres (d = 3) under rho(r) = r^p + a.
//
// Origin-centred balls are solved for any p from the mass equation
//   M0 = k_d R^d (R^p / (p + d) + a / d).
// For p = 2 the off-centre ball with R^2 = r0^2 + a is the candidate optimum
// below a_crit; its perimeter and radius do not depend on a there.

#pragma once

#include <optional>
#include <string_view>

#include "isodense/density.hpp"

namespace isodense {

enum class BallBranch { Centred, OffCentre };

std::string_view to_string(BallBranch b);

struct BallSolution {
  Dimension dim;
  double radius;
  double center_offset;
  double perimeter;  // weighted circumference (d = 2) or surface area (d = 3)
  double mass;
  BallBranch branch;
  std::optional<double> lagrange_multiplier;
};

/// Weighted perimeter and mass of an off-centre ball.
struct BallMeasures {
  double perimeter;
  double mass;
};

BallSolution symmetric_ball(const Density& dens, Dimension dim, double mass);

/// Mass and perimeter of the origin-centred ball of radius R.
BallMeasures centred_ball_measures(const Density& dens, Dimension dim, double radius);

/// p = 2, d = 2: P = 2 pi (R^3 + R r0^2 + R a), M = pi/2 (R^4 + 2 R^2 r0^2 + 2 R^2 a).
BallMeasures offcenter_p2_2d(double radius, double offset, double a);

/// p = 2, d = 3: S = 4 pi (R^4 + R^2 r0^2 + R^2 a),
/// M = 4 pi / 15 (3 R^5 + 5 R^3 r0^2 + 5 R^3 a).
BallMeasures offcenter_p2_3d(double radius, double offset, double a);

/// Direct tensor Gauss-Legendre evaluation (64 nodes per axis) of the
/// perimeter and mass integrals of an off-centre circle, any p.
BallMeasures offcenter_quadrature_2d(const Density& dens, double radius, double offset);

/// Same for a sphere, integrating over (q, theta, phi).
BallMeasures offcenter_quadrature_3d(const Density& dens, double radius, double offset);

double critical_offset_p2_2d(double mass);
double critical_offset_p2_3d(double mass);

BallSolution solve_2d_p2(double a, double mass);
BallSolution solve_3d_p2(double a, double mass);

/// Generalised curvature of a plane curve r(theta):
///   (r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^(3/2) + psi'(r) r / (r^2 + r'^2)^(1/2)
/// with psi = log(rho).
double kappa_psi(const Density& dens, double r, double r_dot, double r_ddot);

}  // namespace isodense
