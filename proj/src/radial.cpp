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

#include "isodense/radial.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isodense/error.hpp"
#include "isodense/numerics.hpp"

namespace isodense {
namespace {

using std::numbers::pi;

void require_mass(double mass, const char* who) {
  if (!std::isfinite(mass) || !(mass > 0.0)) {
    throw DomainError(std::string(who) + ": mass must be finite and > 0");
  }
}

void require_ball_dim(Dimension dim, const char* who) {
  if (dim.d() < 2) throw DomainError(std::string(who) + ": dimension must be 2 or 3");
}

// Multiplier of the centred ball: dP/dR + lambda dM/dR = 0.
double centred_lagrange(const Density& dens, Dimension dim, double radius) {
  return -((dim.d() - 1.0) / radius + dens.derivative(radius) / dens.eval(radius));
}

}  // namespace

std::string_view to_string(BallBranch b) {
  return b == BallBranch::Centred ? "Centred" : "OffCentre";
}

BallMeasures centred_ball_measures(const Density& dens, Dimension dim, double radius) {
  if (!(radius >= 0.0)) throw DomainError("centred_ball_measures: radius must be >= 0");
  const double d = dim.d();
  const double p = dens.p();
  const double rd = std::pow(radius, d);
  const double rp = std::pow(radius, p);
  return {dim.k() * std::pow(radius, d - 1.0) * (rp + dens.a()),
          dim.k() * rd * (rp / (p + d) + dens.a() / d)};
}

BallSolution symmetric_ball(const Density& dens, Dimension dim, double mass) {
  require_ball_dim(dim, "symmetric_ball");
  require_mass(mass, "symmetric_ball");
  auto f = [&](double r) { return centred_ball_measures(dens, dim, r).mass - mass; };
  const double guess = std::pow(mass / dim.k(), 1.0 / dim.d());
  const double hi = numerics::grow_bracket(f, 0.0, guess);
  const double radius = numerics::bisect(f, 0.0, hi);
  const BallMeasures m = centred_ball_measures(dens, dim, radius);
  return {dim, radius, 0.0, m.perimeter, m.mass, BallBranch::Centred,
          centred_lagrange(dens, dim, radius)};
}

BallMeasures offcenter_p2_2d(double radius, double offset, double a) {
  if (!(radius > 0.0)) throw DomainError("offcenter_p2_2d: radius must be > 0");
  const double r2 = radius * radius;
  const double o2 = offset * offset;
  return {2.0 * pi * (r2 * radius + radius * o2 + radius * a),
          0.5 * pi * (r2 * r2 + 2.0 * r2 * o2 + 2.0 * r2 * a)};
}

BallMeasures offcenter_p2_3d(double radius, double offset, double a) {
  if (!(radius > 0.0)) throw DomainError("offcenter_p2_3d: radius must be > 0");
  const double r2 = radius * radius;
  const double r3 = r2 * radius;
  const double o2 = offset * offset;
  return {4.0 * pi * (r2 * r2 + r2 * o2 + r2 * a),
          4.0 * pi / 15.0 * (3.0 * r3 * r2 + 5.0 * r3 * o2 + 5.0 * r3 * a)};
}

BallMeasures offcenter_quadrature_2d(const Density& dens, double radius, double offset) {
  if (!(radius > 0.0)) throw DomainError("offcenter_quadrature_2d: radius must be > 0");
  const double half_p = 0.5 * dens.p();
  const double a = dens.a();
  auto ring = [&](double q) {
    return numerics::gauss_legendre(
        [&](double theta) {
          const double s = q * q + offset * offset + 2.0 * q * offset * std::cos(theta);
          return std::pow(std::max(s, 0.0), half_p) + a;
        },
        -pi, pi, 64);
  };
  const double perimeter = radius * ring(radius);
  const double mass = numerics::gauss_legendre([&](double q) { return q * ring(q); }, 0.0, radius, 64);
  return {perimeter, mass};
}

BallMeasures offcenter_quadrature_3d(const Density& dens, double radius, double offset) {
  if (!(radius > 0.0)) throw DomainError("offcenter_quadrature_3d: radius must be > 0");
  const double half_p = 0.5 * dens.p();
  const double a = dens.a();
  auto shell = [&](double q) {
    return numerics::gauss_legendre(
        [&](double theta) {
          return numerics::gauss_legendre(
              [&](double phi) {
                const double s = q * q + offset * offset +
                                 2.0 * q * offset * std::sin(phi) * std::cos(theta);
                return std::sin(phi) * (std::pow(std::max(s, 0.0), half_p) + a);
              },
              0.0, pi, 64);
        },
        -pi, pi, 64);
  };
  const double area = radius * radius * shell(radius);
  const double mass =
      numerics::gauss_legendre([&](double q) { return q * q * shell(q); }, 0.0, radius, 64);
  return {area, mass};
}

double critical_offset_p2_2d(double mass) {
  require_mass(mass, "critical_offset_p2_2d");
  return std::sqrt(2.0 * mass / (3.0 * pi));
}

double critical_offset_p2_3d(double mass) {
  require_mass(mass, "critical_offset_p2_3d");
  return std::pow(15.0 * mass / (32.0 * pi), 0.4);
}

BallSolution solve_2d_p2(double a, double mass) {
  require_mass(mass, "solve_2d_p2");
  if (!std::isfinite(a) || a < 0.0) throw DomainError("solve_2d_p2: a must be >= 0");
  const Dimension dim(2);
  const double a_crit = critical_offset_p2_2d(mass);
  if (a <= a_crit) {
    const double r2 = a_crit;  // R^2 = sqrt(2 M0 / (3 pi)) = a_crit
    const double radius = std::sqrt(r2);
    const double offset = std::sqrt(std::max(0.0, r2 - a));
    return {dim,    radius,    offset, 4.0 * pi * r2 * radius, 1.5 * pi * r2 * r2,
            BallBranch::OffCentre, -2.0 / radius};
  }
  const double q = 2.0 * mass / pi;
  const double r2 = q / (a + std::sqrt(a * a + q));
  const double radius = std::sqrt(r2);
  const Density dens(2.0, a);
  const BallMeasures m = centred_ball_measures(dens, dim, radius);
  return {dim, radius, 0.0, m.perimeter, m.mass, BallBranch::Centred,
          centred_lagrange(dens, dim, radius)};
}

BallSolution solve_3d_p2(double a, double mass) {
  require_mass(mass, "solve_3d_p2");
  if (!std::isfinite(a) || a < 0.0) throw DomainError("solve_3d_p2: a must be >= 0");
  const Dimension dim(3);
  const double a_crit = critical_offset_p2_3d(mass);
  if (a <= a_crit) {
    const double r2 = a_crit;  // R^2 = (15 M0 / (32 pi))^(2/5) = a_crit
    const double radius = std::sqrt(r2);
    const double offset = std::sqrt(std::max(0.0, r2 - a));
    return {dim,
            radius,
            offset,
            8.0 * pi * r2 * r2,
            32.0 * pi / 15.0 * r2 * r2 * radius,
            BallBranch::OffCentre,
            -3.0 / radius};
  }
  return symmetric_ball(Density(2.0, a), dim, mass);
}

double kappa_psi(const Density& dens, double r, double r_dot, double r_ddot) {
  if (!(r > 0.0)) throw DomainError("kappa_psi: r must be > 0");
  const double q = r * r + r_dot * r_dot;
  const double sq = std::sqrt(q);
  return (r * r + 2.0 * r_dot * r_dot - r * r_ddot) / (q * sq) + dens.log_derivative(r) * r / sq;
}

}  // namespace isodense
