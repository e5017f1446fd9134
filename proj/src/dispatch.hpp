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

// Solver selection shared by the C API and the verification suites.

#pragma once

#include <string>

#include "isodense/evolver.hpp"
#include "isodense/interval1d.hpp"
#include "isodense/radial.hpp"

namespace isodense::detail {

enum class Method1d { Auto, P2, P1, PLessThanOne, Symmetric, General, BruteForce };

/// Auto picks the closed form for p = 2, p = 1 and 0 < p < 1 and the
/// constrained minimiser otherwise.
IntervalSolution solve_1d(const Density& dens, double mass, Method1d method, int grid_n = 10000);

/// Closed forms for p = 2; the origin-centred ball for any other p.
BallSolution solve_ball(const Density& dens, Dimension dim, double mass);

struct SweepPoint {
  double a = 0.0;
  std::string branch;
  double first = 0.0;   // alpha (1D) or R
  double second = 0.0;  // beta (1D) or r0
  double perimeter = 0.0;
  double mass_residual = 0.0;
};

/// One row of an a-sweep. In 2D/3D with p > 1, p != 2 the centred ball is
/// taken from a_crit upward; p <= 1 is never log-convex and, like everything
/// below a_crit or under force_numeric, goes to the evolver.
SweepPoint sweep_point(int dim, double p, double a, double mass, bool force_numeric,
                       const EvolveOptions& opts);

}  // namespace isodense::detail
