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
#include <random>
#include <vector>

#include "doctest.h"
#include "isodense/error.hpp"
#include "isodense/interval1d.hpp"
#include "oracles.hpp"

using namespace isodense;

namespace {

double mass_of(const Density& d, const IntervalSolution& s) {
  return mass1d(d, Interval(s.alpha, s.beta));
}

}  // namespace

TEST_CASE("Interval rejects lo > hi") {
  CHECK_THROWS_AS(Interval(1.0, 0.0), DomainError);
  CHECK_NOTHROW(Interval(0.0, 0.0));
}

TEST_CASE("perimeter1d examples") {
  CHECK(perimeter1d(Density(2.0, 0.25), Interval(-0.20149, 1.24076)) ==
        doctest::Approx(2.08008).epsilon(1e-5));
  CHECK(perimeter1d(Density(1.0, 0.5), Interval(0.0, 1.0)) == 2.0);
  CHECK(perimeter1d(Density(3.0, 0.7), Interval(0.0, 0.0)) == doctest::Approx(1.4));
  // Same-sign interval uses rho at both ends.
  CHECK(perimeter1d(Density(2.0, 0.1), Interval(0.5, 1.0)) == doctest::Approx(0.25 + 1.0 + 0.2));
}

TEST_CASE("mass1d against quadrature") {
  const Density d(2.0, 1.0);
  CHECK(mass1d(d, Interval(-0.46622, 0.46622)) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(mass1d(Density(1.0, 0.5), Interval(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mass1d(d, Interval(0.3, 0.3)) == 0.0);
  for (const double p : {0.5, 1.0, 2.0, 4.0}) {
    const Density dp(p, 0.35);
    for (const auto& [lo, hi] : {std::pair{-0.7, 1.1}, std::pair{0.2, 0.9}, std::pair{-1.3, -0.4}}) {
      CHECK(mass1d(dp, Interval(lo, hi)) ==
            doctest::Approx(oracle::mass_1d(p, 0.35, lo, hi)).epsilon(1e-9));
    }
  }
}

TEST_CASE("solve_p2 examples") {
  const auto s0 = solve_p2(0.0, 1.0);
  CHECK(s0.branch == IntervalBranch::AtOrigin);
  CHECK(s0.alpha == 0.0);
  CHECK(s0.beta == doctest::Approx(std::cbrt(3.0)).epsilon(1e-14));
  CHECK(s0.perimeter == doctest::Approx(std::cbrt(9.0)).epsilon(1e-14));

  const auto s = solve_p2(0.25, 1.0);
  CHECK(s.branch == IntervalBranch::Asymmetric);
  CHECK(s.alpha == doctest::Approx(-0.20149).epsilon(1e-4));
  CHECK(s.beta == doctest::Approx(1.24076).epsilon(1e-5));
  CHECK(s.perimeter == doctest::Approx(2.08008).epsilon(1e-5));
  CHECK(std::abs(s.alpha * s.beta + 0.25) < 1e-12);
  const auto bf = oracle::brute_force_1d(2.0, 0.25, 1.0, 4001);
  CHECK(s.perimeter == doctest::Approx(bf.perimeter).epsilon(1e-5));

  const auto s1 = solve_p2(1.0, 1.0);
  CHECK(s1.branch == IntervalBranch::Symmetric);
  CHECK(s1.alpha == -s1.beta);
  CHECK(s1.beta == doctest::Approx(std::cbrt(2.0) - 1.0 / std::cbrt(2.0)).epsilon(1e-13));
  CHECK(s1.perimeter == doctest::Approx(2.43472).epsilon(1e-5));
  CHECK_THROWS_AS(solve_p2(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(solve_p2(-0.1, 1.0), DomainError);
}

TEST_CASE("solve_p2 asymmetric branch: constant perimeter and alpha beta = -a") {
  for (const double m : {0.3, 1.0, 4.0}) {
    const double a_crit = std::pow(3.0 * m, 2.0 / 3.0) / 4.0;
    for (int i = 0; i <= 20; ++i) {
      const double a = a_crit * i / 20.0 * 0.999;
      const auto s = solve_p2(a, m);
      CHECK(s.perimeter == doctest::Approx(std::pow(3.0 * m, 2.0 / 3.0)).epsilon(1e-12));
      CHECK(std::abs(s.alpha * s.beta + a) < 1e-12 * std::max(1.0, m));
      CHECK(std::abs(mass_of(Density(2.0, a), s) - m) <= 1e-9 * m);
    }
  }
}

TEST_CASE("solve_p2 symmetric branch matches solve_symmetric") {
  for (const double a : {0.6, 1.0, 3.0, 20.0}) {
    const auto s = solve_p2(a, 1.0);
    const auto t = solve_symmetric(Density(2.0, a), 1.0);
    CHECK(s.branch == IntervalBranch::Symmetric);
    CHECK(s.beta == doctest::Approx(t.beta).epsilon(1e-12));
  }
}

TEST_CASE("solve_p2 Lagrange multiplier satisfies both stationarity conditions") {
  for (const double a : {0.1, 0.3, 1.0}) {
    const auto s = solve_p2(a, 1.0);
    REQUIRE(s.lagrange_multiplier.has_value());
    const double lam = *s.lagrange_multiplier;
    // dP/dbeta + lambda dM/dbeta = 2 beta + lambda (beta^2 + a) = 0, and the
    // same at |alpha|.
    CHECK(std::abs(2.0 * s.beta + lam * (s.beta * s.beta + a)) < 1e-10);
    const double x = -s.alpha;
    if (x > 0.0) CHECK(std::abs(2.0 * x + lam * (x * x + a)) < 1e-10);
  }
}

TEST_CASE("solve_p1 examples") {
  const auto s = solve_p1(0.5, 1.0);
  CHECK(s.branch == IntervalBranch::AtOrigin);
  CHECK(std::abs(s.beta - 1.0) < 1e-12);
  CHECK(std::abs(s.perimeter - 2.0) < 1e-12);
  const auto s0 = solve_p1(0.0, 1.0);
  CHECK(s0.beta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s0.perimeter == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const auto s2 = solve_p1(2.0, 1.0);
  CHECK(s2.beta == doctest::Approx(std::sqrt(6.0) - 2.0).epsilon(1e-13));
  CHECK(s2.perimeter == doctest::Approx(std::sqrt(6.0) + 2.0).epsilon(1e-14));
  for (const double a : {0.0, 0.5, 2.0, 10.0}) {
    const auto bf = oracle::brute_force_1d(1.0, a, 1.0, 4001);
    CHECK(solve_p1(a, 1.0).perimeter == doctest::Approx(bf.perimeter).epsilon(1e-4));
    CHECK(bf.alpha_abs < 1e-3);
  }
}

TEST_CASE("solve_p_lt_1 examples") {
  const Density d0(0.5, 0.0);
  const auto s0 = solve_p_lt_1(d0, 1.0);
  CHECK(s0.branch == IntervalBranch::AtOrigin);
  CHECK(s0.beta == doctest::Approx(std::pow(1.5, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(s0.perimeter == doctest::Approx(1.14471).epsilon(1e-5));

  const Density d(0.5, 0.5);
  const auto s = solve_p_lt_1(d, 1.0);
  CHECK(s.beta == doctest::Approx(0.8868).epsilon(1e-3));
  CHECK(s.perimeter == doctest::Approx(1.9417).epsilon(1e-4));
  const double root = oracle::bisect_increasing(
      [](double b) { return std::pow(b, 1.5) + 0.75 * b - 1.5; }, 0.0, 2.0);
  CHECK(s.beta == doctest::Approx(root).epsilon(1e-12));
  const auto cf = p_half_closed_form_beta(0.5, 1.0);
  REQUIRE(cf.has_value());
  CHECK(std::abs(*cf - root) < 1e-6);
  CHECK_THROWS_AS(solve_p_lt_1(Density(2.0, 0.5), 1.0), BranchError);
}

TEST_CASE("p = 1/2 closed form tracks bisection over its validity range") {
  for (const double m : {0.2, 1.0, 5.0}) {
    const double a_max = 0.9 * std::cbrt(3.0 * m);
    for (int i = 0; i <= 40; ++i) {
      const double a = a_max * i / 40.0;
      const auto cf = p_half_closed_form_beta(a, m);
      REQUIRE(cf.has_value());
      const double root = oracle::bisect_increasing(
          [&](double b) { return oracle::primitive(0.5, a, b) - m; }, 0.0, 1.0);
      CHECK(std::abs(*cf - root) <= 1e-6 * root);
    }
  }
  CHECK_FALSE(p_half_closed_form_beta(1.1 * std::cbrt(3.0), 1.0).has_value());
}

TEST_CASE("solve_symmetric examples") {
  CHECK(solve_symmetric(Density(2.0, 1.0), 1.0).beta == doctest::Approx(0.46622).epsilon(1e-4));
  CHECK(solve_symmetric(Density(2.0, 0.0), 1.0).beta ==
        doctest::Approx(std::cbrt(1.5)).epsilon(1e-12));
  const auto s4 = solve_symmetric(Density(4.0, 1.0), 1.0);
  CHECK(std::abs(0.4 * std::pow(s4.beta, 5) + 2.0 * s4.beta - 1.0) < 1e-12);
  // Brute force restricted to alpha = -beta: scan beta for mass 1.
  double best = 0.0, err = HUGE_VAL;
  for (int i = 0; i <= 200000; ++i) {
    const double b = 1e-5 * i;
    const double e = std::abs(2.0 * oracle::primitive(4.0, 1.0, b) - 1.0);
    if (e < err) {
      err = e;
      best = b;
    }
  }
  CHECK(std::abs(s4.beta - best) < 2e-5);
}

TEST_CASE("solve_general against closed forms") {
  CHECK(solve_general(Density(2.0, 0.25), 1.0).perimeter ==
        doctest::Approx(solve_p2(0.25, 1.0).perimeter).epsilon(1e-6));
  CHECK(solve_general(Density(1.0, 0.5), 1.0).perimeter ==
        doctest::Approx(solve_p1(0.5, 1.0).perimeter).epsilon(1e-6));
  const auto g1 = solve_general(Density(2.0, 1.0), 1.0);
  CHECK(g1.branch == IntervalBranch::Symmetric);
  CHECK(solve_general(Density(2.0, 0.0), 1.0).branch == IntervalBranch::AtOrigin);
  CHECK_THROWS_AS(solve_general(Density(2.0, 0.2), -1.0), DomainError);
}

TEST_CASE("solve_general p = 4, a = 0.2 is asymmetric and beats both end candidates") {
  const Density d(4.0, 0.2);
  const auto g = solve_general(d, 1.0);
  CHECK(g.branch == IntervalBranch::Asymmetric);
  const double at_origin = d.eval(0.0) + d.eval(d.primitive_inverse(1.0));
  const double symmetric = solve_symmetric(d, 1.0).perimeter;
  CHECK(g.perimeter < at_origin);
  CHECK(g.perimeter < symmetric);
  // Perimeter decreases with a near a = 0.2.
  CHECK(solve_general(Density(4.0, 0.21), 1.0).perimeter < g.perimeter);
  CHECK(solve_general(Density(4.0, 0.19), 1.0).perimeter > g.perimeter);
}

TEST_CASE("solve_general agrees with an independent brute force on a random grid") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> up(1.2, 5.0), ua(0.0, 1.5), um(0.3, 3.0);
  for (int i = 0; i < 12; ++i) {
    const double p = up(rng), a = ua(rng), m = um(rng);
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    const auto g = solve_general(Density(p, a), m);
    const auto bf = oracle::brute_force_1d(p, a, m, 20001);
    CHECK(g.perimeter == doctest::Approx(bf.perimeter).epsilon(1e-4));
    CHECK(g.perimeter <= bf.perimeter * (1.0 + 1e-12));
    CHECK(std::abs(mass_of(Density(p, a), g) - m) <= 1e-9 * m);
  }
}

TEST_CASE("solutions are stationary under perturbation along the constraint") {
  for (const auto& [p, a] : {std::pair{2.0, 0.25}, std::pair{2.0, 1.0}, std::pair{4.0, 0.2},
                             std::pair{3.0, 0.6}}) {
    const Density d(p, a);
    const auto g = solve_general(d, 1.0);
    for (const double eps : {-1e-3, 1e-3}) {
      const double x = -g.alpha + eps;
      if (x < 0.0 || d.primitive(x) >= 1.0) continue;
      const double b = beta_on_constraint(d, x, 1.0);
      CHECK(d.eval(x) + d.eval(b) >= g.perimeter - 1e-8);
    }
  }
}

TEST_CASE("brute_force_oracle examples") {
  const auto s = brute_force_oracle(Density(2.0, 0.25), 1.0, 10000);
  CHECK(std::abs(s.perimeter - std::cbrt(9.0)) < 1e-4);
  CHECK(brute_force_oracle(Density(1.0, 2.0), 1.0, 10000).branch == IntervalBranch::AtOrigin);
  const auto sym = brute_force_oracle(Density(2.0, 1.0), 1.0, 10000);
  CHECK(sym.branch == IntervalBranch::Symmetric);
  CHECK(sym.beta == doctest::Approx(0.46622).epsilon(1e-3));
  CHECK_THROWS_AS(brute_force_oracle(Density(2.0, 1.0), 1.0, 99), ConfigError);
}

TEST_CASE("reduce_intervals examples") {
  const Density d(2.0, 0.25);
  const std::vector<Interval> two{{0.5, 1.0}, {1.5, 2.0}};
  const Interval r = reduce_intervals(d, two);
  CHECK(r.lo <= 0.0);
  CHECK(r.hi >= 0.0);
  const double m0 = mass1d(d, two[0]) + mass1d(d, two[1]);
  const double p0 = perimeter1d(d, two[0]) + perimeter1d(d, two[1]);
  CHECK(mass1d(d, r) == doctest::Approx(m0).epsilon(1e-12));
  CHECK(perimeter1d(d, r) < p0);

  const std::vector<Interval> mirror{{-1.0, -0.5}, {0.5, 1.0}};
  const ReductionTrace t = reduce_intervals_traced(d, mirror);
  CHECK(t.result.lo < 0.0);
  CHECK(t.result.hi > 0.0);
  REQUIRE(t.steps.size() >= 2);
  CHECK(t.steps.back().kind == ReductionStepKind::Merge);
  const double before_merge = t.steps[t.steps.size() - 2].perimeter;
  CHECK(before_merge - t.steps.back().perimeter == doctest::Approx(2.0 * d.a()).epsilon(1e-12));

  const std::vector<Interval> fixed{{-0.3, 0.8}};
  const Interval f = reduce_intervals(d, fixed);
  CHECK(f.lo == -0.3);
  CHECK(f.hi == 0.8);

  const std::vector<Interval> overlap{{0.0, 1.0}, {0.5, 2.0}};
  CHECK_THROWS_AS(reduce_intervals(d, overlap), DomainError);
  CHECK_THROWS_AS(reduce_intervals(d, std::vector<Interval>{}), DomainError);
}

TEST_CASE("reduce_intervals on random sets conserves mass and lowers perimeter") {
  std::mt19937_64 rng(99);
  const double ps[] = {0.5, 1.0, 2.0, 4.0};
  std::uniform_real_distribution<double> ua(0.05, 2.0), u(0.02, 0.7), s(-2.5, 1.0);
  std::uniform_int_distribution<int> count(1, 6);
  for (int c = 0; c < 200; ++c) {
    const Density d(ps[c % 4], ua(rng));
    std::vector<Interval> ivs;
    double x = s(rng);
    double m0 = 0.0, p0 = 0.0;
    for (int k = count(rng); k > 0; --k) {
      const double lo = x;
      x += u(rng);
      ivs.emplace_back(lo, x);
      m0 += oracle::mass_1d(d.p(), d.a(), lo, x, 2000);
      p0 += oracle::rho(d.p(), d.a(), std::abs(lo)) + oracle::rho(d.p(), d.a(), std::abs(x));
      x += u(rng);
    }
    const Interval r = reduce_intervals(d, ivs);
    CHECK(r.lo <= 0.0);
    CHECK(r.hi >= 0.0);
    CHECK(std::abs(mass1d(d, r) - m0) <= 1e-9 * m0);
    CHECK(perimeter1d(d, r) <= p0 * (1.0 + 1e-12));
  }
}

TEST_CASE("contour_grid corners and symmetry") {
  const Density d(1.5, 0.4);
  const ContourGrid g = contour_grid(d, 1.2, 1.2, 7);
  CHECK(g.points.size() == 49u);
  CHECK(g.at(0, 0).perimeter == doctest::Approx(0.8));
  CHECK(g.at(0, 0).mass == 0.0);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      CHECK(g.at(i, j).perimeter == g.at(j, i).perimeter);
      CHECK(g.at(i, j).mass == g.at(j, i).mass);
    }
  }
  const ContourGrid two = contour_grid(d, 1.0, 2.0, 2);
  CHECK(two.points.size() == 4u);
  CHECK(two.at(1, 1).alpha_abs == 1.0);
  CHECK(two.at(1, 1).beta == 2.0);
  CHECK_THROWS_AS(contour_grid(d, 1.0, 1.0, 1), DomainError);
}

TEST_CASE("p = 1 mass level set lies on a circle centred at (-a, -a)") {
  const Density d(1.0, 0.5);
  for (int i = 0; i <= 40; ++i) {
    const double x = 1.0 * i / 40.0;
    if (d.primitive(x) >= 1.0) break;
    const double b = beta_on_constraint(d, x, 1.0);
    const double lhs = (x + 0.5) * (x + 0.5) + (b + 0.5) * (b + 0.5);
    CHECK(std::abs(lhs - 2.0 * (1.0 + 0.25)) < 1e-10);
  }
}

TEST_CASE("contour curvature signs") {
  const auto c = contour_curvatures(Density(0.5, 0.5), 0.3, 0.8);
  CHECK(c.perimeter_contour > 0.0);
  CHECK(c.mass_contour < 0.0);
  CHECK(contour_curvatures(Density(2.0, 0.25), 0.2, 1.2).perimeter_contour < 0.0);
  CHECK_THROWS_AS(contour_curvatures(Density(2.0, 0.25), 0.0, 1.2), DomainError);
}

TEST_CASE("contour curvatures match finite differences along traced level sets") {
  for (const double p : {0.5, 1.5, 3.0}) {
    const double a = 0.5, x0 = 0.3, b0 = 0.8;
    const Density d(p, a);
    const auto c = contour_curvatures(d, x0, b0);
    // P level set: beta(x) with x^p + beta^p = const.
    const double pc = std::pow(x0, p) + std::pow(b0, p);
    auto beta_p = [&](double x) { return std::pow(pc - std::pow(x, p), 1.0 / p); };
    // M level set: F(x) + F(beta) = const.
    const double mc = oracle::primitive(p, a, x0) + oracle::primitive(p, a, b0);
    auto beta_m = [&](double x) {
      const double rest = mc - oracle::primitive(p, a, x);
      return oracle::bisect_increasing([&](double q) { return oracle::primitive(p, a, q) - rest; },
                                       0.0, 1.0);
    };
    const double h = 1e-4;
    const double fd_p = (beta_p(x0 + h) - 2.0 * beta_p(x0) + beta_p(x0 - h)) / (h * h);
    const double fd_m = (beta_m(x0 + h) - 2.0 * beta_m(x0) + beta_m(x0 - h)) / (h * h);
    CAPTURE(p);
    CHECK(c.perimeter_contour == doctest::Approx(fd_p).epsilon(1e-4));
    CHECK(c.mass_contour == doctest::Approx(fd_m).epsilon(1e-4));
  }
}
