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

// Scalar kernels shared by every solver: bracketed bisection, golden-section
// minimisation, Gauss-Legendre quadrature and finite differences.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <utility>

#include "isodense/error.hpp"

namespace isodense::numerics {

struct RootConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_iters = 200;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iters < 1) {
      throw ConfigError("RootConfig: tolerances must be positive and max_iters >= 1");
    }
  }
};

template <typename F>
concept ScalarFunction = std::regular_invocable<F, double> &&
                         std::convertible_to<std::invoke_result_t<F, double>, double>;

// Bisection on [lo, hi]. Stops as soon as |f(x)| <= abs_tol + rel_tol * |x|,
// f(x) == 0, or the bracket has collapsed to adjacent doubles; after
// max_iters the midpoint is returned. Deterministic for a given bracket.
template <ScalarFunction F>
double bisect(F&& f, double lo, double hi, const RootConfig& cfg = {}) {
  cfg.validate();
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi)) {
    throw BracketError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < cfg.max_iters; ++it) {
    mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      // Bracket collapsed: return whichever end is closer to the root.
      return std::abs(flo) <= std::abs(fhi) ? lo : hi;
    }
    const double fm = f(mid);
    if (fm == 0.0 || std::abs(fm) <= cfg.abs_tol + cfg.rel_tol * std::abs(mid)) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return mid;
}

// Grows hi geometrically (doubling) until f changes sign on [lo, hi].
// Returns the final hi; throws BracketError after 200 doublings.
template <ScalarFunction F>
double grow_bracket(F&& f, double lo, double hi) {
  const double flo = f(lo);
  if (!(hi > lo)) hi = lo + 1.0;
  for (int k = 0; k < 200; ++k) {
    const double fhi = f(hi);
    if (fhi == 0.0 || std::signbit(fhi) != std::signbit(flo)) return hi;
    hi = lo + 2.0 * (hi - lo);
  }
  throw BracketError("grow_bracket: no sign change found");
}

struct MinResult {
  double x;
  double fx;
};

// Golden-section search. For unimodal f the minimiser is found to within tol;
// otherwise the best point seen (including both end points) is returned.
template <ScalarFunction F>
MinResult golden_min(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw DomainError("golden_min: requires lo < hi");
  if (!(tol > 0.0)) throw ConfigError("golden_min: tol must be positive");
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 500 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  MinResult best = fc <= fd ? MinResult{c, fc} : MinResult{d, fd};
  for (const double x : {lo, hi}) {
    const double fx = f(x);
    if (fx < best.fx) best = {x, fx};
  }
  return best;
}

// Coarse uniform scan followed by golden-section refinement around the best
// sample. Used where the objective may have several local minima.
template <ScalarFunction F>
MinResult scan_then_golden(F&& f, double lo, double hi, int samples, double tol) {
  if (samples < 3) samples = 3;
  const double h = (hi - lo) / (samples - 1);
  int best_i = 0;
  double best_f = f(lo);
  for (int i = 1; i < samples; ++i) {
    const double x = (i == samples - 1) ? hi : lo + i * h;
    const double fx = f(x);
    if (fx < best_f) {
      best_f = fx;
      best_i = i;
    }
  }
  const double a = lo + std::max(0, best_i - 1) * h;
  const double b = std::min(hi, lo + (best_i + 1) * h);
  MinResult r = golden_min(f, a, b, tol);
  if (best_f < r.fx) {
    const double x = (best_i == samples - 1) ? hi : lo + best_i * h;
    r = {x, best_f};
  }
  return r;
}

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

// Supported orders: 4, 7, 16, 64. Anything else throws ConfigError.
const GaussRule& gauss_legendre_rule(int nodes);

template <ScalarFunction F>
double gauss_legendre(F&& f, double lo, double hi, int nodes) {
  const GaussRule& rule = gauss_legendre_rule(nodes);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * f(mid + half * rule.nodes[k]);
  }
  return half * sum;
}

template <ScalarFunction F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <ScalarFunction F>
double second_difference(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace isodense::numerics
