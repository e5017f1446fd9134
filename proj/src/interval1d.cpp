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

#include "isodense/interval1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isodense/error.hpp"
#include "isodense/numerics.hpp"

namespace isodense {
namespace {

constexpr double kBranchTol = 1e-6;

void require_mass(double mass, const char* who) {
  if (!std::isfinite(mass) || !(mass > 0.0)) {
    throw DomainError(std::string(who) + ": mass must be finite and > 0");
  }
}

void require_offset(double a, const char* who) {
  if (!std::isfinite(a) || a < 0.0) throw DomainError(std::string(who) + ": a must be >= 0");
}

IntervalSolution make_solution(const Density& dens, double alpha, double beta,
                               IntervalBranch branch) {
  IntervalSolution s;
  s.alpha = alpha;
  s.beta = beta;
  s.perimeter = dens.eval(std::abs(alpha)) + dens.eval(beta);
  s.branch = branch;
  s.lagrange_multiplier = lagrange_from_beta(dens, beta);
  return s;
}

// Perimeter along the mass constraint as a function of |alpha|.
double constrained_perimeter(const Density& dens, double alpha_abs, double mass) {
  return dens.eval(alpha_abs) + dens.eval(beta_on_constraint(dens, alpha_abs, mass));
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo_ <= hi_)) throw DomainError("Interval: lo must be <= hi");
}

std::string_view to_string(IntervalBranch b) {
  switch (b) {
    case IntervalBranch::AtOrigin:
      return "AtOrigin";
    case IntervalBranch::Asymmetric:
      return "Asymmetric";
    case IntervalBranch::Symmetric:
      return "Symmetric";
  }
  return "?";
}

std::string_view to_string(ReductionStepKind k) {
  switch (k) {
    case ReductionStepKind::Split:
      return "split";
    case ReductionStepKind::Reflect:
      return "reflect";
    case ReductionStepKind::Concatenate:
      return "concatenate";
    case ReductionStepKind::Translate:
      return "translate";
    case ReductionStepKind::Merge:
      return "merge";
  }
  return "?";
}

double perimeter1d(const Density& dens, const Interval& iv) {
  return dens.eval(std::abs(iv.lo)) + dens.eval(std::abs(iv.hi));
}

double mass1d(const Density& dens, const Interval& iv) {
  if (iv.lo <= 0.0 && iv.hi >= 0.0) return dens.primitive(iv.hi) + dens.primitive(-iv.lo);
  return std::abs(dens.primitive(std::abs(iv.hi)) - dens.primitive(std::abs(iv.lo)));
}

double lagrange_from_beta(const Density& dens, double beta) {
  return -dens.derivative(beta) / dens.eval(beta);
}

double beta_on_constraint(const Density& dens, double alpha_abs, double mass) {
  const double rest = mass - dens.primitive(alpha_abs);
  if (rest < 0.0) throw DomainError("beta_on_constraint: |alpha| already exceeds the mass");
  return dens.primitive_inverse(rest);
}

IntervalSolution solve_p2(double a, double mass) {
  require_offset(a, "solve_p2");
  require_mass(mass, "solve_p2");
  const Density dens(2.0, a);
  const double c = std::cbrt(3.0 * mass);
  const double a_crit = 0.25 * c * c;
  if (a == 0.0) return make_solution(dens, 0.0, c, IntervalBranch::AtOrigin);
  if (a < a_crit) {
    const double beta = 0.5 * (std::sqrt(c * c - 4.0 * a) + c);
    IntervalSolution s = make_solution(dens, -a / beta, beta, IntervalBranch::Asymmetric);
    s.perimeter = c * c;
    return s;
  }
  // Cardano: beta = z - a/z with z^3 = Z. Since z^3 - (a/z)^3 = 3 M0 / 2 the
  // difference is rewritten as a quotient to avoid cancellation at large a.
  const double big_z = 0.75 * mass + 0.25 * std::sqrt(9.0 * mass * mass + 16.0 * a * a * a);
  const double z = std::cbrt(big_z);
  const double w = a / z;
  const double beta = 1.5 * mass / (z * z + z * w + w * w);
  return make_solution(dens, -beta, beta, IntervalBranch::Symmetric);
}

IntervalSolution solve_p1(double a, double mass) {
  require_offset(a, "solve_p1");
  require_mass(mass, "solve_p1");
  const Density dens(1.0, a);
  const double root = std::sqrt(a * a + 2.0 * mass);
  const double beta = 2.0 * mass / (a + root);
  IntervalSolution s = make_solution(dens, 0.0, beta, IntervalBranch::AtOrigin);
  s.perimeter = a + root;
  return s;
}

std::optional<double> p_half_closed_form_beta(double a, double mass) {
  require_offset(a, "p_half_closed_form_beta");
  require_mass(mass, "p_half_closed_form_beta");
  // sqrt(beta) = t - a/2 with t = Z^(1/3) + Z'^(1/3), where Z, Z' are the two
  // roots c -+ sqrt(c^2 - a^6/64). Z Z' = a^6/64, so the small root is taken
  // as a quotient instead of a difference.
  const double c = 0.75 * mass - a * a * a / 8.0;
  const double a6 = std::pow(a, 6.0) / 64.0;
  const double disc = c * c - a6;
  if (disc < 0.0 || c < 0.0) return std::nullopt;
  const double z_big = c + std::sqrt(disc);
  const double z_small = a6 / z_big;
  const double s = std::cbrt(z_big) + std::cbrt(z_small) - 0.5 * a;
  return s * s;
}

IntervalSolution solve_p_lt_1(const Density& dens, double mass) {
  require_mass(mass, "solve_p_lt_1");
  if (!(dens.p() < 1.0)) throw BranchError("solve_p_lt_1: requires 0 < p < 1");
  const double beta = dens.primitive_inverse(mass);
  if (dens.p() == 0.5) {
    if (const auto closed = p_half_closed_form_beta(dens.a(), mass)) {
      if (std::abs(*closed - beta) > 1e-6 * std::max(1.0, beta)) {
        throw NumericError("solve_p_lt_1: cubic and bisection roots disagree");
      }
    }
  }
  return make_solution(dens, 0.0, beta, IntervalBranch::AtOrigin);
}

IntervalSolution solve_symmetric(const Density& dens, double mass) {
  require_mass(mass, "solve_symmetric");
  if (!(dens.p() > 1.0)) throw BranchError("solve_symmetric: requires p > 1");
  const double beta = dens.primitive_inverse(0.5 * mass);
  return make_solution(dens, -beta, beta, IntervalBranch::Symmetric);
}

IntervalSolution solve_general(const Density& dens, double mass) {
  require_mass(mass, "solve_general");
  const double x_sym = dens.primitive_inverse(0.5 * mass);
  auto objective = [&](double x) { return constrained_perimeter(dens, x, mass); };
  const numerics::MinResult best =
      numerics::scan_then_golden(objective, 0.0, x_sym, 64, 1e-12 * x_sym);

  const double alpha_abs = best.x;
  const double beta = beta_on_constraint(dens, alpha_abs, mass);
  // The objective is flat at both ends of the range, so the golden search
  // stops short of them; the exact end candidates win ties.
  const double x_full = dens.primitive_inverse(mass);
  const double p_origin = dens.eval(0.0) + dens.eval(x_full);
  const double p_sym = 2.0 * dens.eval(x_sym);
  const double slack = 1e-12 * best.fx;
  if (alpha_abs < kBranchTol * beta || p_origin <= best.fx + slack) {
    if (p_origin <= p_sym) return make_solution(dens, 0.0, x_full, IntervalBranch::AtOrigin);
  }
  if (std::abs(beta - alpha_abs) < kBranchTol * beta || p_sym <= best.fx + slack) {
    return make_solution(dens, -x_sym, x_sym, IntervalBranch::Symmetric);
  }
  return make_solution(dens, -alpha_abs, beta, IntervalBranch::Asymmetric);
}

IntervalSolution brute_force_oracle(const Density& dens, double mass, int grid_n) {
  require_mass(mass, "brute_force_oracle");
  if (grid_n < 100) throw ConfigError("brute_force_oracle: grid_n must be >= 100");
  const double len = dens.primitive_inverse(mass);
  const double h = len / (grid_n - 1);
  double best_p = HUGE_VAL;
  double best_x = 0.0, best_beta = len;
  for (int i = 0; i < grid_n; ++i) {
    // The last node carries all the mass on one side; F(len) may round a
    // hair above M, so its partner is set to 0 directly.
    const bool last = i == grid_n - 1;
    const double x = last ? len : i * h;
    const double beta = last ? 0.0 : beta_on_constraint(dens, x, mass);
    const double perim = dens.eval(x) + dens.eval(beta);
    if (perim < best_p) {
      best_p = perim;
      best_x = x;
      best_beta = beta;
    }
  }
  // Mirror so that the shorter arm sits on the negative side.
  const double alpha_abs = std::min(best_x, best_beta);
  const double beta = std::max(best_x, best_beta);
  IntervalBranch branch = IntervalBranch::Asymmetric;
  if (alpha_abs == 0.0) {
    branch = IntervalBranch::AtOrigin;
  } else if (beta - alpha_abs <= 2.0 * h) {
    branch = IntervalBranch::Symmetric;
  }
  IntervalSolution s = make_solution(dens, -alpha_abs, beta, branch);
  if (alpha_abs == 0.0) s.alpha = 0.0;
  return s;
}

ReductionTrace reduce_intervals_traced(const Density& dens, std::span<const Interval> ivs) {
  if (ivs.empty()) throw DomainError("reduce_intervals: no intervals");
  std::vector<Interval> sorted(ivs.begin(), ivs.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1].hi > sorted[i].lo) throw DomainError("reduce_intervals: intervals overlap");
  }

  // Working set: both half-lines stored as [lo, hi] with 0 <= lo <= hi; the
  // negative side is kept mirrored.
  std::vector<Interval> pos, neg;
  auto totals = [&]() {
    double perim = 0.0, mass = 0.0;
    for (const auto* side : {&pos, &neg}) {
      for (const Interval& iv : *side) {
        perim += perimeter1d(dens, iv);
        mass += mass1d(dens, iv);
      }
    }
    return std::pair{perim, mass};
  };

  ReductionTrace trace{sorted.front(), 0.0, 0.0, {}};
  for (const Interval& iv : sorted) {
    trace.initial_perimeter += perimeter1d(dens, iv);
    trace.initial_mass += mass1d(dens, iv);
  }
  auto record = [&](ReductionStepKind kind) {
    const auto [perim, mass] = totals();
    trace.steps.push_back({kind, perim, mass});
  };

  // A straddling interval is split at the origin; everything else keeps its
  // sign. Pieces are still in original coordinates at this point.
  bool split = false;
  std::vector<Interval> pieces;
  for (const Interval& iv : sorted) {
    if (iv.lo < 0.0 && iv.hi > 0.0) {
      pieces.emplace_back(iv.lo, 0.0);
      pieces.emplace_back(0.0, iv.hi);
      split = true;
    } else {
      pieces.push_back(iv);
    }
  }
  bool any_negative = false;
  for (const Interval& iv : pieces) {
    if (iv.hi <= 0.0 && iv.lo < 0.0) {
      neg.emplace_back(-iv.hi, -iv.lo);
      any_negative = true;
    } else {
      pos.push_back(iv);
    }
  }
  if (split) record(ReductionStepKind::Split);
  if (any_negative) record(ReductionStepKind::Reflect);

  auto by_lo = [](const Interval& x, const Interval& y) { return x.lo < y.lo; };
  std::sort(pos.begin(), pos.end(), by_lo);
  std::sort(neg.begin(), neg.end(), by_lo);

  // Concatenate the two innermost intervals of a half-line: the outer one
  // slides inward until it abuts the inner one, keeping its own mass.
  for (auto* side : {&pos, &neg}) {
    while (side->size() > 1) {
      const Interval inner = (*side)[0];
      const Interval outer = (*side)[1];
      const double outer_mass = mass1d(dens, outer);
      const double new_hi = dens.primitive_inverse(dens.primitive(inner.hi) + outer_mass);
      side->erase(side->begin());
      (*side)[0] = Interval(inner.lo, std::max(new_hi, inner.hi));
      record(ReductionStepKind::Concatenate);
    }
  }

  for (auto* side : {&pos, &neg}) {
    if (side->empty() || (*side)[0].lo == 0.0) continue;
    const double m = mass1d(dens, (*side)[0]);
    (*side)[0] = Interval(0.0, dens.primitive_inverse(m));
    record(ReductionStepKind::Translate);
  }

  if (!pos.empty() && !neg.empty()) {
    const Interval merged(-neg[0].hi, pos[0].hi);
    pos.assign(1, merged);
    neg.clear();
    record(ReductionStepKind::Merge);
    trace.result = merged;
  } else if (!pos.empty()) {
    trace.result = pos[0];
  } else {
    trace.result = Interval(-neg[0].hi, -neg[0].lo);
  }
  return trace;
}

Interval reduce_intervals(const Density& dens, std::span<const Interval> ivs) {
  return reduce_intervals_traced(dens, ivs).result;
}

ContourGrid contour_grid(const Density& dens, double alpha_max, double beta_max, int n) {
  if (n < 2) throw DomainError("contour_grid: n must be >= 2");
  if (!(alpha_max > 0.0) || !(beta_max > 0.0)) {
    throw DomainError("contour_grid: extents must be > 0");
  }
  ContourGrid g{n, {}};
  g.points.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double x = (i == n - 1) ? alpha_max : alpha_max * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double y = (j == n - 1) ? beta_max : beta_max * j / (n - 1);
      g.points.push_back({x, y, dens.eval(x) + dens.eval(y), dens.primitive(x) + dens.primitive(y)});
    }
  }
  return g;
}

ContourCurvatures contour_curvatures(const Density& dens, double alpha_abs, double beta) {
  if (!(alpha_abs > 0.0) || !(beta > 0.0)) {
    throw DomainError("contour_curvatures: |alpha| and beta must be > 0");
  }
  const double p = dens.p();
  const double x = alpha_abs;
  // Constant perimeter: x^p + beta^p fixed.
  const double perim = -(p - 1.0) / std::pow(beta, p - 1.0) *
                       (std::pow(x, p - 2.0) + std::pow(x, 2.0 * p - 2.0) / std::pow(beta, p));
  // Constant mass: F(x) + F(beta) fixed.
  const double rb = dens.eval(beta);
  const double rx = dens.eval(x);
  const double mass = -(p * std::pow(x, p - 1.0) * rb * rb + p * std::pow(beta, p - 1.0) * rx * rx) /
                      (rb * rb * rb);
  return {perim, mass};
}

}  // namespace isodense
