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

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "isodense/error.hpp"
#include "isodense/evolver.hpp"
#include "isodense/radial.hpp"
#include "oracles.hpp"

using namespace isodense;
using std::numbers::pi;

namespace {

PolyCurve ngon(int n, Vec2 c = {}, double r = 1.0) { return PolyCurve::circle(c, r, n); }

// Smooth star-shaped curve: circle with a few random Fourier modes.
std::vector<Vec2> wobbly(std::mt19937_64& rng, int n, Vec2 centre) {
  std::uniform_real_distribution<double> u(-0.08, 0.08), ur(0.5, 1.0);
  const double r0 = ur(rng);
  const double c2 = u(rng), s3 = u(rng), c5 = u(rng);
  std::vector<Vec2> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * pi * i / n;
    const double r = r0 * (1.0 + c2 * std::cos(2 * t) + s3 * std::sin(3 * t) + c5 * std::cos(5 * t));
    v[i] = {centre.x + r * std::cos(t), centre.y + r * std::sin(t)};
  }
  return v;
}

std::vector<double> flat(const std::vector<Vec2>& v) {
  std::vector<double> x;
  for (const Vec2 p : v) {
    x.push_back(p.x);
    x.push_back(p.y);
  }
  return x;
}

std::vector<Vec2> unflat(const std::vector<double>& x) {
  std::vector<Vec2> v(x.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {x[2 * i], x[2 * i + 1]};
  return v;
}

using GradFn = double (*)(const Density&, std::span<const Vec2>, std::span<Vec2>);

double gradient_error(GradFn fn, const Density& d, const std::vector<Vec2>& v) {
  std::vector<Vec2> g(v.size());
  fn(d, v, g);
  const auto fd = oracle::fd_gradient(
      [&](const std::vector<double>& x) { return fn(d, unflat(x), {}); }, flat(v), 1e-6);
  const auto ga = flat(g);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    num += (ga[i] - fd[i]) * (ga[i] - fd[i]);
    den += fd[i] * fd[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("PolyCurve validation") {
  CHECK_THROWS_AS(ngon(15), DomainError);
  CHECK_NOTHROW(ngon(16));
  // Clockwise orientation is rejected.
  const PolyCurve base = ngon(32);
  std::vector<Vec2> v(base.vertices().begin(), base.vertices().end());
  std::reverse(v.begin(), v.end());
  CHECK_THROWS_AS(PolyCurve{v}, DomainError);
  // Figure of eight: self-intersecting.
  std::vector<Vec2> eight;
  for (int i = 0; i < 64; ++i) {
    const double t = 2.0 * pi * i / 64;
    eight.push_back({std::sin(t), std::sin(t) * std::cos(t)});
  }
  CHECK_THROWS_AS(PolyCurve{eight}, DomainError);
  CHECK_FALSE(is_star_shaped(eight));
}

TEST_CASE("weighted perimeter of regular n-gons") {
  // Edge of length 2 sin(h), h = pi / n, with its midpoint at radius cos(h).
  for (const int n : {64, 128, 256, 512}) {
    const double h = pi / n, s = std::sin(h), c = std::cos(h);
    for (const double a : {0.0, 1.0}) {
      const double exact = n * 2.0 * s * (c * c + a);
      CHECK(weighted_perimeter_2d(Density(2.0, a), ngon(n)) == doctest::Approx(exact).epsilon(1e-12));
    }
    CHECK(std::abs(weighted_perimeter_2d(Density(2.0, 0.0), ngon(n)) - 2.0 * pi) < 80.0 / (double(n) * n));
  }
}

TEST_CASE("weighted measures of the off-centre optimum polygon") {
  const PolyCurve c = ngon(512, {0.51055, 0.0}, 0.67872);
  const Density d(2.0, 0.2);
  const auto exact = offcenter_p2_2d(0.67872, 0.51055, 0.2);
  CHECK(weighted_perimeter_2d(d, c) == doctest::Approx(3.9291).epsilon(5e-3));
  CHECK(weighted_perimeter_2d(d, c) == doctest::Approx(exact.perimeter).epsilon(1e-4));
  CHECK(weighted_mass_2d(d, c) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(weighted_mass_2d(d, c) == doctest::Approx(exact.mass).epsilon(1e-4));
}

TEST_CASE("weighted mass of unit-circle polygons") {
  CHECK(weighted_mass_2d(Density(2.0, 0.0), ngon(256)) == doctest::Approx(pi / 2.0).epsilon(1e-3));
  for (const double p : {0.5, 1.0, 3.0, 4.0}) {
    for (const double a : {0.0, 0.7}) {
      CHECK(weighted_mass_2d(Density(p, a), ngon(256)) ==
            doctest::Approx(a * pi + 2.0 * pi / (p + 2.0)).epsilon(1e-3));
    }
  }
}

TEST_CASE("weighted mass of a region not containing the origin") {
  // Signed fan triangles still give the enclosed integral.
  const Density d(2.0, 0.3);
  const PolyCurve c = ngon(512, {2.0, 0.5}, 0.6);
  const auto q = oracle::circle_2d(2.0, 0.3, 0.6, std::hypot(2.0, 0.5));
  CHECK(weighted_mass_2d(d, c) == doctest::Approx(q.mass).epsilon(1e-4));
}

TEST_CASE("zero-length edges are rejected") {
  const PolyCurve base = ngon(32);
  std::vector<Vec2> v(base.vertices().begin(), base.vertices().end());
  v[1] = v[0];
  CHECK_THROWS_AS(weighted_perimeter_2d_grad(Density(2.0, 0.1), v, {}), DomainError);
}

TEST_CASE("unweighted perimeter, area and quotient of a regular 512-gon") {
  const PolyCurve c = ngon(512);
  EvolveReport r;
  r.unweighted_perimeter = unweighted_perimeter(c);
  r.unweighted_area = unweighted_area(c);
  const double q = isoperimetric_quotient(r);
  CHECK(q > 1.0);
  CHECK(q - 1.0 < 1e-5);
  EvolveReport perfect;
  perfect.unweighted_perimeter = 2.0 * pi;
  perfect.unweighted_area = pi;
  CHECK(isoperimetric_quotient(perfect) == doctest::Approx(1.0).epsilon(1e-15));
  EvolveReport empty;
  CHECK_THROWS_AS(isoperimetric_quotient(empty), DomainError);
  const Vec2 c0 = area_centroid(ngon(64, {0.3, -0.2}, 0.5));
  CHECK(c0.x == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(c0.y == doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("analytic gradients match central differences on random curves") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uc(-0.6, 0.6);
  const double ps[] = {1.0, 2.0, 3.0, 4.0, 2.5};
  for (int k = 0; k < 20; ++k) {
    const Density d(ps[k % 5], 0.1 + 0.05 * k);
    const auto v = wobbly(rng, 48, {uc(rng), uc(rng)});
    CAPTURE(k);
    CHECK(gradient_error(weighted_perimeter_2d_grad, d, v) < 1e-5);
    CHECK(gradient_error(weighted_mass_2d_grad, d, v) < 1e-5);
    // Half-profile: the upper half of the same curve about the x-axis.
    std::vector<Vec2> prof;
    const double r0 = 0.5 + 0.02 * k, x0 = uc(rng);
    for (int i = 0; i <= 40; ++i) {
      const double t = pi * i / 40;
      prof.push_back({x0 + r0 * (1.0 + 0.05 * std::cos(2 * t)) * std::cos(t),
                      r0 * (1.0 + 0.05 * std::cos(2 * t)) * std::sin(t)});
    }
    prof.back().y = 0.0;
    CHECK(gradient_error(weighted_area_3d_grad, d, prof) < 1e-5);
    CHECK(gradient_error(weighted_mass_3d_grad, d, prof) < 1e-5);
  }
}

TEST_CASE("3D functionals on a sphere profile match the closed forms") {
  const Density d(2.0, 0.3);
  std::vector<Vec2> prof;
  const int m = 400;
  for (int i = 0; i <= m; ++i) {
    const double t = pi * i / m;
    prof.push_back({0.4 + 0.7 * std::cos(t), 0.7 * std::sin(t)});
  }
  prof.back().y = 0.0;
  const auto e = offcenter_p2_3d(0.7, 0.4, 0.3);
  CHECK(weighted_area_3d_grad(d, prof, {}) == doctest::Approx(e.perimeter).epsilon(1e-4));
  CHECK(weighted_mass_3d_grad(d, prof, {}) == doctest::Approx(e.mass).epsilon(1e-4));
}

TEST_CASE("evolve_2d recovers the p = 2 off-centre circle") {
  const auto exact = solve_2d_p2(0.2, 1.0);
  const EvolveReport r = evolve_2d(Density(2.0, 0.2), 1.0);
  CHECK(r.converged);
  CHECK(r.weighted_perimeter == doctest::Approx(3.9291).epsilon(5e-3));
  CHECK(r.weighted_perimeter == doctest::Approx(exact.perimeter).epsilon(5e-3));
  CHECK(r.center_offset == doctest::Approx(exact.center_offset).epsilon(2e-2));
  CHECK(r.radius == doctest::Approx(exact.radius).epsilon(5e-3));
  CHECK(r.kappa_psi_spread < 1e-2);
  CHECK(r.mass_residual <= 1e-8);
  CHECK(std::abs(isoperimetric_quotient(r) - 1.0) < 1e-3);
}

TEST_CASE("evolve_2d trajectory is monotone and mass-conserving") {
  const EvolveReport r = evolve_2d(Density(2.0, 0.1), 1.0);
  REQUIRE(r.perimeter_history.size() == r.mass_history.size());
  REQUIRE(r.perimeter_history.size() > 1);
  for (std::size_t i = 1; i < r.perimeter_history.size(); ++i) {
    CHECK(r.perimeter_history[i] <= r.perimeter_history[i - 1] + 1e-12);
  }
  for (const double m : r.mass_history) CHECK(std::abs(m - 1.0) <= 1e-8);
}

TEST_CASE("evolve_2d centred case") {
  const EvolveReport r = evolve_2d(Density(2.0, 1.0), 1.0);
  CHECK(r.radius == doctest::Approx(0.52849).epsilon(5e-3));
  CHECK(r.center_offset < 1e-2);
  CHECK(std::hypot(r.centroid.x, r.centroid.y) < 1e-2);
}

TEST_CASE("evolve_2d p = 4 is visibly non-circular") {
  const EvolveReport r = evolve_2d(Density(4.0, 0.1), 1.0);
  CHECK(isoperimetric_quotient(r) > 1.001);
  CHECK(r.mass_residual <= 1e-8);
}

TEST_CASE("evolve_2d refinement") {
  EvolveOptions o;
  o.vertices = 256;
  const double p256 = evolve_2d(Density(2.0, 0.2), 1.0, o).weighted_perimeter;
  o.vertices = 512;
  const double p512 = evolve_2d(Density(2.0, 0.2), 1.0, o).weighted_perimeter;
  CHECK(std::abs(p512 - p256) / p512 < 2e-3);
  double prev = HUGE_VAL;
  for (const int n : {128, 256, 512, 1024}) {
    o.vertices = n;
    const double s = evolve_2d(Density(2.0, 0.2), 1.0, o).kappa_psi_spread;
    CAPTURE(n);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("evolve_2d quotient stays at 1 for p = 2") {
  for (const double a : {0.1, 0.3, 1.0}) {
    CAPTURE(a);
    CHECK(std::abs(isoperimetric_quotient(evolve_2d(Density(2.0, a), 1.0)) - 1.0) < 1e-3);
  }
}

TEST_CASE("evolve option validation") {
  EvolveOptions o;
  o.vertices = 32;
  CHECK_THROWS_AS(evolve_2d(Density(2.0, 0.2), 1.0, o), ConfigError);
  CHECK_THROWS_AS(evolve_2d(Density(2.0, 0.2), 0.0), DomainError);
  o = {};
  o.tol = 0.0;
  CHECK_THROWS_AS(evolve_3d_axisym(Density(2.0, 0.2), 1.0, o), ConfigError);
}

TEST_CASE("evolve_3d_axisym off-centre sphere") {
  const auto exact = solve_3d_p2(0.3, 1.0);
  const EvolveReport r = evolve_3d_axisym(Density(2.0, 0.3), 1.0);
  CHECK(r.dim == 3);
  CHECK(r.weighted_perimeter == doctest::Approx(5.4873).epsilon(1e-2));
  CHECK(r.weighted_perimeter == doctest::Approx(exact.perimeter).epsilon(1e-2));
  CHECK(r.center_offset == doctest::Approx(exact.center_offset).epsilon(3e-2));
  CHECK(r.radius == doctest::Approx(exact.radius).epsilon(1e-2));
  CHECK(r.mass_residual <= 1e-8);
  CHECK(std::abs(isoperimetric_quotient(r) - 1.0) < 1e-3);
}

TEST_CASE("evolve_3d_axisym centred and touching cases") {
  const EvolveReport c = evolve_3d_axisym(Density(2.0, 1.0), 1.0);
  CHECK(c.radius == doctest::Approx(0.5831).epsilon(1e-2));
  CHECK(c.center_offset < 1e-2);
  const EvolveReport t = evolve_3d_axisym(Density(2.0, 0.0), 1.0);
  CHECK(t.min_radial_distance < 0.02 * t.radius);
}

TEST_CASE("curve CSV layout") {
  std::ostringstream out;
  write_curve_csv(ngon(16, {}, 2.0), out);
  const std::string s = out.str();
  CHECK(s.rfind("vertex_index,x,y\n0,2,0\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 17);
  CHECK_THROWS_AS(write_curve_csv(ngon(16), std::string("/nonexistent/dir/c.csv")), IoError);
}
