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

#pragma once

#include <optional>

namespace isodense {

/// Radial density rho(r) = r^p + a with p > 0 and a >= 0.
///
/// a = 0 is accepted as the pure power-law limit. Negative exponents have no
/// isoperimetric intervals on the line and are rejected at construction.
class Density {
 public:
  Density(double p, double a);

  double p() const { return p_; }
  double a() const { return a_; }

  /// rho(r); r must be non-negative (1D callers pass |x|).
  double eval(double r) const;

  /// d rho / dr = p r^(p-1). Zero at r = 0 for p > 1, +inf for p < 1.
  double derivative(double r) const;

  /// F(q) = q^(p+1)/(p+1) + a q, the integral of rho over [0, q].
  double primitive(double q) const;

  /// Inverse of primitive(): the q >= 0 with F(q) = m. Bisection.
  double primitive_inverse(double m) const;

  /// d log(rho) / dr = p r^(p-1) / (r^p + a), r > 0.
  double log_derivative(double r) const;

  /// Second derivative of log(rho):
  ///   p r^(p-2) (a (p-1) - r^p) / (r^p + a)^2,  r > 0.
  double psi_second_derivative(double r) const;

  /// (a (p-1))^(1/p) for p > 1: the radius inside which rho is log-convex.
  /// Empty for p <= 1 (or a = 0), where no such ball exists.
  std::optional<double> log_convex_radius() const;

 private:
  double p_;
  double a_;
};

/// Ambient dimension d in {1, 2, 3} and the unit-sphere constant k_d.
///
/// k_1 = 2 counts both end points of the 0-sphere {-1, +1}; this is the value
/// for which the general critical-offset formula reduces to the dedicated 1D
/// one. k_2 = 2 pi and k_3 = 4 pi.
class Dimension {
 public:
  explicit Dimension(int d);

  int d() const { return d_; }
  double k() const;

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

/// a_crit(p, d, M): offset above which the origin-centred ball of mass M is
/// isoperimetric (log-convexity on the whole ball). Requires p > 1, M > 0.
double critical_offset(double p, Dimension dim, double mass);

/// M_crit: mass of the largest origin-centred ball on which rho is
/// log-convex. Inverse of critical_offset in a. Requires p > 1.
double critical_mass(const Density& dens, Dimension dim);

/// Dedicated 1D form ((p+1)/(4p))^(p/(p+1)) (p-1)^(-1/(p+1)) M^(p/(p+1)).
double critical_offset_1d(double p, double mass);

}  // namespace isodense
