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

#include "isodense/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isodense/error.hpp"
#include "isodense/numerics.hpp"

namespace isodense {

Density::Density(double p, double a) : p_(p), a_(a) {
  if (!std::isfinite(p) || !(p > 0.0)) {
    throw DomainError("Density: exponent p must be finite and > 0, got " + std::to_string(p));
  }
  if (!std::isfinite(a) || a < 0.0) {
    throw DomainError("Density: offset a must be finite and >= 0, got " + std::to_string(a));
  }
}

double Density::eval(double r) const {
  if (!(r >= 0.0)) throw DomainError("Density::eval: radius must be >= 0");
  return std::pow(r, p_) + a_;
}

double Density::derivative(double r) const {
  if (!(r >= 0.0)) throw DomainError("Density::derivative: radius must be >= 0");
  if (r == 0.0) {
    if (p_ > 1.0) return 0.0;
    if (p_ == 1.0) return 1.0;
    return HUGE_VAL;
  }
  return p_ * std::pow(r, p_ - 1.0);
}

double Density::primitive(double q) const {
  if (!(q >= 0.0)) throw DomainError("Density::primitive: argument must be >= 0");
  return std::pow(q, p_ + 1.0) / (p_ + 1.0) + a_ * q;
}

double Density::primitive_inverse(double m) const {
  if (!(m >= 0.0)) throw DomainError("Density::primitive_inverse: mass must be >= 0");
  if (m == 0.0) return 0.0;
  auto f = [&](double q) { return primitive(q) - m; };
  // Either term of F alone bounds the root from above.
  double hi = std::pow((p_ + 1.0) * m, 1.0 / (p_ + 1.0));
  if (a_ > 0.0) hi = std::min(hi, m / a_);
  hi = numerics::grow_bracket(f, 0.0, std::max(hi, 1e-300));
  return numerics::bisect(f, 0.0, hi);
}

double Density::log_derivative(double r) const {
  if (!(r > 0.0)) throw DomainError("Density::log_derivative: radius must be > 0");
  return p_ * std::pow(r, p_ - 1.0) / (std::pow(r, p_) + a_);
}

double Density::psi_second_derivative(double r) const {
  if (!(r > 0.0)) throw DomainError("Density::psi_second_derivative: radius must be > 0");
  const double rp = std::pow(r, p_);
  const double denom = rp + a_;
  return p_ * std::pow(r, p_ - 2.0) * (a_ * (p_ - 1.0) - rp) / (denom * denom);
}

std::optional<double> Density::log_convex_radius() const {
  if (p_ <= 1.0 || a_ == 0.0) return std::nullopt;
  return std::pow(a_ * (p_ - 1.0), 1.0 / p_);
}

Dimension::Dimension(int d) : d_(d) {
  if (d < 1 || d > 3) throw DomainError("Dimension: d must be 1, 2 or 3");
}

double Dimension::k() const {
  switch (d_) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * std::numbers::pi;
    default:
      return 4.0 * std::numbers::pi;
  }
}

double critical_offset(double p, Dimension dim, double mass) {
  if (!(p > 1.0)) throw BranchError("critical_offset: undefined for p <= 1");
  if (!(mass > 0.0)) throw DomainError("critical_offset: mass must be > 0");
  const double d = dim.d();
  const double lead = d * (p + d) / (dim.k() * p * (d + 1.0));
  return std::pow(lead, p / (p + d)) * std::pow(p - 1.0, -d / (p + d)) *
         std::pow(mass, p / (p + d));
}

double critical_mass(const Density& dens, Dimension dim) {
  const double p = dens.p();
  if (!(p > 1.0)) throw BranchError("critical_mass: undefined for p <= 1");
  const double d = dim.d();
  return dim.k() * p * (d + 1.0) / (d * (p + d)) * std::pow(p - 1.0, d / p) *
         std::pow(dens.a(), (p + d) / p);
}

double critical_offset_1d(double p, double mass) {
  if (!(p > 1.0)) throw BranchError("critical_offset_1d: undefined for p <= 1");
  if (!(mass > 0.0)) throw DomainError("critical_offset_1d: mass must be > 0");
  return std::pow((p + 1.0) / (4.0 * p), p / (p + 1.0)) * std::pow(p - 1.0, -1.0 / (p + 1.0)) *
         std::pow(mass, p / (p + 1.0));
}

}  // namespace isodense
