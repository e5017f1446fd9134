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

// Discrete minimisation of weighted perimeter at fixed weighted mass.
//
// 2D: a closed counter-clockwise polygon. 3D: an axisymmetric surface whose
// meridian half-profile runs from the pole on the +x side over the top to the
// pole on the -x side; the symmetry axis is the x-axis, through the origin.
//
// Both use the same loop: the perimeter gradient is preconditioned with a
// discrete H^1 metric (I + sigma * second-difference), projected against the
// mass gradient in that metric, followed by a backtracking line search and a
// scalar Newton correction of the mass along vertex normals.

#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isodense/density.hpp"

namespace isodense {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
  friend double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
  friend double norm(Vec2 a) { return std::hypot(a.x, a.y); }
};

/// Closed polygon, counter-clockwise, at least 16 vertices, simple.
class PolyCurve {
 public:
  PolyCurve() = default;  // empty placeholder
  explicit PolyCurve(std::vector<Vec2> vertices);

  static PolyCurve circle(Vec2 center, double radius, int n);

  std::span<const Vec2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

 private:
  std::vector<Vec2> vertices_;
};

double weighted_perimeter_2d(const Density& dens, const PolyCurve& c);
double weighted_mass_2d(const Density& dens, const PolyCurve& c);
double unweighted_perimeter(const PolyCurve& c);
double unweighted_area(const PolyCurve& c);
Vec2 area_centroid(const PolyCurve& c);

/// Perimeter / mass with gradients with respect to every vertex coordinate.
/// The vertex list is interpreted as a closed counter-clockwise polygon.
double weighted_perimeter_2d_grad(const Density& dens, std::span<const Vec2> v,
                                  std::span<Vec2> grad);
double weighted_mass_2d_grad(const Density& dens, std::span<const Vec2> v, std::span<Vec2> grad);

/// Axisymmetric 3D functionals on an open half-profile (poles on the axis).
double weighted_area_3d_grad(const Density& dens, std::span<const Vec2> profile,
                             std::span<Vec2> grad);
double weighted_mass_3d_grad(const Density& dens, std::span<const Vec2> profile,
                             std::span<Vec2> grad);

/// True when every edge turns positively about the area centroid and the
/// winding angle is 2 pi, which implies the polygon is simple.
bool is_star_shaped(std::span<const Vec2> v);

struct EvolveOptions {
  int vertices = 512;  // closed-curve vertices (2D) or profile segments (3D)
  int max_iters = 20000;
  double tol = 1e-10;  // relative perimeter decrease over 50 iterations
  /// Initial centre distance from the origin along +x. Defaults to
  /// sqrt(R^2 - a) for p = 2 and R/2 otherwise, with R the radius of the
  /// origin-centred ball of the requested mass.
  std::optional<double> initial_offset;
};

struct EvolveReport {
  int dim = 2;
  PolyCurve final_curve;  // 3D: full meridian section through the axis
  double weighted_perimeter = 0.0;
  double weighted_mass = 0.0;
  double unweighted_perimeter = 0.0;  // 3D: surface area
  double unweighted_area = 0.0;       // 3D: volume
  int iterations = 0;
  bool converged = false;
  double kappa_psi_spread = 0.0;  // (max - min) / |mean| over vertices
  double kappa_psi_mean = 0.0;
  Vec2 centroid;                  // area (2D) or volume (3D) centroid
  double center_offset = 0.0;     // |centroid|
  double radius = 0.0;            // equal-area (2D) / equal-volume (3D) radius
  double min_radial_distance = 0.0;  // distance from the origin to the boundary
  double mass_residual = 0.0;        // |weighted_mass - M0|
  double projected_gradient = 0.0;   // relative, in the preconditioned metric
  std::vector<double> perimeter_history;  // accepted iterates
  std::vector<double> mass_history;       // same iterates
};

EvolveReport evolve_2d(const Density& dens, double mass, const EvolveOptions& opts = {});
EvolveReport evolve_3d_axisym(const Density& dens, double mass, const EvolveOptions& opts = {});

/// P_u / sqrt(4 pi A_u) in 2D, S_u / (36 pi V_u^2)^(1/3) in 3D. Equal to 1
/// exactly for a circle / sphere.
double isoperimetric_quotient(const EvolveReport& report);

/// Relative spread of the generalised curvature over the vertices of a closed
/// curve, using finite differences of r(theta) about the origin when the
/// curve is star-shaped about it, and circumscribed circles otherwise.
struct KappaStats {
  double mean;
  double spread;
};
KappaStats kappa_psi_stats_2d(const Density& dens, std::span<const Vec2> v);

/// Writes "vertex_index,x,y" with a header row.
void write_curve_csv(const PolyCurve& c, std::ostream& out);
void write_curve_csv(const PolyCurve& c, const std::string& path);

}  // namespace isodense
