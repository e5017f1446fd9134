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

// Isoperimetric intervals on the real line under rho(x) = |x|^p + a.
//
// An interval [alpha, beta] has weighted perimeter rho(alpha) + rho(beta) and
// weighted mass equal to the integral of rho over it. Closed-form optimisers
// exist for p = 2, p = 1 and 0 < p < 1 (root of a scalar equation, with a
// cubic formula at p = 1/2); every other exponent goes through the
// constraint-parametrised numerical solver, which the brute-force grid scan
// cross-checks.

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "isodense/density.hpp"

namespace isodense {

struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_);
};

enum class IntervalBranch { AtOrigin, Asymmetric, Symmetric };

std::string_view to_string(IntervalBranch b);

/// Optimal interval [alpha, beta] with alpha <= 0 < beta.
struct IntervalSolution {
  double alpha;
  double beta;
  double perimeter;
  IntervalBranch branch;
  std::optional<double> lagrange_multiplier;
};

double perimeter1d(const Density& dens, const Interval& iv);
double mass1d(const Density& dens, const Interval& iv);

/// p = 2 closed form. Asymmetric (alpha beta = -a, P = (3 M0)^(2/3)) below
/// a_crit = (3 M0)^(2/3) / 4, symmetric from the cubic at and above it, and
/// AtOrigin at a = 0.
IntervalSolution solve_p2(double a, double mass);

/// p = 1: one end at the origin, beta = -a + sqrt(a^2 + 2 M0).
IntervalSolution solve_p1(double a, double mass);

/// 0 < p < 1: one end at the origin, beta solving
/// beta^(p+1) = (p+1)(M0 - a beta).
IntervalSolution solve_p_lt_1(const Density& dens, double mass);

/// Closed-form cubic root at p = 1/2, evaluated in the cancellation-free
/// product form. Valid for a <= (3 M0)^(1/3); empty beyond.
std::optional<double> p_half_closed_form_beta(double a, double mass);

/// Symmetric interval [-beta, beta] for p > 1.
IntervalSolution solve_symmetric(const Density& dens, double mass);

/// Numerical optimiser for any p: scans |alpha| in [0, beta_sym] with beta
/// recovered from the mass constraint, refines by golden section, and
/// compares with the symmetric candidate.
IntervalSolution solve_general(const Density& dens, double mass);

/// Exhaustive grid over |alpha| in [0, L] with F(L) = M0. Test oracle.
IntervalSolution brute_force_oracle(const Density& dens, double mass, int grid_n);

/// beta >= 0 such that [-alpha_abs, beta] has mass M0. Requires F(alpha_abs) <= M0.
double beta_on_constraint(const Density& dens, double alpha_abs, double mass);

/// Lagrange multiplier from dL/dbeta = 0: lambda = -rho'(beta) / rho(beta).
double lagrange_from_beta(const Density& dens, double beta);

enum class ReductionStepKind { Split, Reflect, Concatenate, Translate, Merge };

std::string_view to_string(ReductionStepKind k);

/// Total perimeter and mass of the working set after one reduction step.
struct ReductionStep {
  ReductionStepKind kind;
  double perimeter;
  double mass;
};

struct ReductionTrace {
  Interval result;
  double initial_perimeter;
  double initial_mass;
  std::vector<ReductionStep> steps;
};

/// Reduces pairwise-disjoint intervals to one interval containing the origin
/// with the same mass and no larger perimeter: intervals straddling 0 are
/// split there, the negative half-line is mirrored, each half-line is
/// concatenated pairwise and translated to the origin, and the two halves are
/// merged across 0.
Interval reduce_intervals(const Density& dens, std::span<const Interval> ivs);
ReductionTrace reduce_intervals_traced(const Density& dens, std::span<const Interval> ivs);

struct ContourPoint {
  double alpha_abs;
  double beta;
  double perimeter;
  double mass;
};

/// n x n samples over (|alpha|, beta) in [0, alpha_max] x [0, beta_max];
/// row-major with the row index running over |alpha|.
struct ContourGrid {
  int n;
  std::vector<ContourPoint> points;

  const ContourPoint& at(int i, int j) const { return points[static_cast<std::size_t>(i) * n + j]; }
};

ContourGrid contour_grid(const Density& dens, double alpha_max, double beta_max, int n);

/// d^2 beta / d|alpha|^2 along the constant-perimeter contour and along the
/// constant-mass contour through (|alpha|, beta).
struct ContourCurvatures {
  double perimeter_contour;
  double mass_contour;
};

ContourCurvatures contour_curvatures(const Density& dens, double alpha_abs, double beta);

}  // namespace isodense
