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

#include "isodense/numerics.hpp"

#include <array>
#include <numbers>
#include <vector>

namespace isodense::numerics {
namespace {

struct OwnedRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  GaussRule view;
};

// Nodes are the roots of P_n, located by Newton iteration from the
// Chebyshev-like initial guess; weights follow from P_n'.
OwnedRule build_rule(int n) {
  OwnedRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  r.view = GaussRule{r.nodes, r.weights};
  return r;
}

}  // namespace

const GaussRule& gauss_legendre_rule(int nodes) {
  static const std::array<OwnedRule, 4> rules = {build_rule(4), build_rule(7), build_rule(16),
                                                 build_rule(64)};
  switch (nodes) {
    case 4:
      return rules[0].view;
    case 7:
      return rules[1].view;
    case 16:
      return rules[2].view;
    case 64:
      return rules[3].view;
    default:
      throw ConfigError("gauss_legendre: unsupported node count " + std::to_string(nodes) +
                        " (supported: 4, 7, 16, 64)");
  }
}

}  // namespace isodense::numerics
