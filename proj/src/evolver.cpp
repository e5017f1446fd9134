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

#include "isodense/evolver.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numbers>
#include <ostream>

#include "format.hpp"
#include "isodense/error.hpp"
#include "isodense/numerics.hpp"
#include "isodense/radial.hpp"

namespace isodense {
namespace {

using std::numbers::pi;

constexpr int kEdgeNodes = 7;
constexpr double kMassProjectionTol = 1e-13;
constexpr int kRedistributeEvery = 100;
constexpr double kClusterRatio = 3.0;
constexpr int kWindow = 50;

// Gauss-Legendre nodes/weights mapped to [0, 1].
struct EdgeRule {
  std::array<double, kEdgeNodes> t;
  std::array<double, kEdgeNodes> w;
};

const EdgeRule& edge_rule() {
  static const EdgeRule rule = [] {
    const numerics::GaussRule& g = numerics::gauss_legendre_rule(kEdgeNodes);
    EdgeRule r{};
    for (int k = 0; k < kEdgeNodes; ++k) {
      r.t[k] = 0.5 * (g.nodes[k] + 1.0);
      r.w[k] = 0.5 * g.weights[k];
    }
    return r;
  }();
  return rule;
}

// |u|^p from |u|^2, with multiplication for the common integer exponents.
inline double pow_sq(double r2, double p) {
  if (p == 2.0) return r2;
  if (p == 4.0) return r2 * r2;
  if (p == 1.0) return std::sqrt(r2);
  if (r2 == 0.0) return 0.0;
  return std::pow(r2, 0.5 * p);
}

// grad_u |u|^p = pow_grad_factor(|u|^2) * u; taken as 0 at u = 0.
inline double pow_grad_factor(double r2, double p) {
  if (p == 2.0) return 2.0;
  if (p == 4.0) return 4.0 * r2;
  if (r2 == 0.0) return 0.0;
  return p * std::pow(r2, 0.5 * p - 1.0);
}

void zero(std::span<Vec2> g) { std::fill(g.begin(), g.end(), Vec2{}); }

double dot_all(std::span<const Vec2> a, std::span<const Vec2> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
  return s;
}

double mean_edge_length(std::span<const Vec2> v, bool closed) {
  const std::size_t edges = closed ? v.size() : v.size() - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < edges; ++i) total += norm(v[(i + 1) % v.size()] - v[i]);
  return total / static_cast<double>(edges);
}

double edge_ratio(std::span<const Vec2> v, bool closed) {
  const std::size_t edges = closed ? v.size() : v.size() - 1;
  double lo = HUGE_VAL, hi = 0.0;
  for (std::size_t i = 0; i < edges; ++i) {
    const double l = norm(v[(i + 1) % v.size()] - v[i]);
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  return lo > 0.0 ? hi / lo : HUGE_VAL;
}

// Uniform arc-length resampling. Closed curves keep vertex 0; open
// polylines keep both end points.
void resample_uniform(std::vector<Vec2>& v, bool closed) {
  const std::size_t n = v.size();
  const std::size_t edges = closed ? n : n - 1;
  std::vector<double> s(edges + 1, 0.0);
  for (std::size_t i = 0; i < edges; ++i) s[i + 1] = s[i] + norm(v[(i + 1) % n] - v[i]);
  const double total = s.back();
  std::vector<Vec2> out(n);
  out[0] = v[0];
  if (!closed) out[n - 1] = v[n - 1];
  const std::size_t last = closed ? n : n - 1;
  std::size_t seg = 0;
  for (std::size_t k = 1; k < last; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(edges);
    while (seg + 1 < edges && s[seg + 1] < target) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double t = len > 0.0 ? (target - s[seg]) / len : 0.0;
    const Vec2 a = v[seg];
    const Vec2 b = v[(seg + 1) % n];
    out[k] = a + t * (b - a);
  }
  v.swap(out);
}

// Solves a symmetric tridiagonal system with constant off-diagonal `off`
// (Thomas algorithm). `diag` is consumed.
void solve_tridiagonal(std::vector<double>& diag, double off, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = off / diag[i - 1];
    diag[i] -= m * off;
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - off * rhs[i + 1]) / diag[i];
}

// (I + sigma K) z = g with K the cyclic second-difference matrix, via the
// Sherman-Morrison correction of the open tridiagonal system.
void solve_cyclic(double sigma, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  const double b = 1.0 + 2.0 * sigma;
  const double off = -sigma;
  const double gamma = -b;
  std::vector<double> diag(n, b);
  diag[0] -= gamma;
  diag[n - 1] -= off * off / gamma;
  std::vector<double> diag2 = diag;
  solve_tridiagonal(diag, off, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = off;
  solve_tridiagonal(diag2, off, u);
  const double fact = (rhs[0] + off * rhs[n - 1] / gamma) / (1.0 + u[0] + off * u[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= fact * u[i];
}

// One discretised variational problem: functionals with gradients, vertex
// normals for the mass correction, validity, and the H^1 preconditioner.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual double perimeter(std::span<const Vec2> v, std::span<Vec2> g) const = 0;
  virtual double mass(std::span<const Vec2> v, std::span<Vec2> g) const = 0;
  virtual void normals(std::span<const Vec2> v, std::span<Vec2> out) const = 0;
  virtual bool valid(std::span<const Vec2> v) const = 0;
  // Solves (I + sigma K) z = g in place for one scalar per vertex.
  virtual void precondition(std::vector<double>& g) const = 0;
  virtual bool closed() const = 0;
};

class Curve2d final : public Problem {
 public:
  Curve2d(const Density& dens, std::size_t n)
      : dens_(dens), sigma_(std::pow(static_cast<double>(n) / (2.0 * pi), 2.0)) {}

  double perimeter(std::span<const Vec2> v, std::span<Vec2> g) const override {
    return weighted_perimeter_2d_grad(dens_, v, g);
  }
  double mass(std::span<const Vec2> v, std::span<Vec2> g) const override {
    return weighted_mass_2d_grad(dens_, v, g);
  }
  void normals(std::span<const Vec2> v, std::span<Vec2> out) const override {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 t = v[(i + 1) % n] - v[(i + n - 1) % n];
      const double l = norm(t);
      out[i] = {t.y / l, -t.x / l};
    }
  }
  bool valid(std::span<const Vec2> v) const override { return is_star_shaped(v); }
  void precondition(std::vector<double>& g) const override { solve_cyclic(sigma_, g); }
  bool closed() const override { return true; }

 private:
  Density dens_;
  double sigma_;
};

// Half-profile v[0..m]: v[0] is the +x pole, v[m] the -x pole, y > 0 between.
class Profile3d final : public Problem {
 public:
  Profile3d(const Density& dens, std::size_t segments)
      : dens_(dens), sigma_(std::pow(static_cast<double>(segments) / (2.0 * pi), 2.0)) {}

  double perimeter(std::span<const Vec2> v, std::span<Vec2> g) const override {
    return weighted_area_3d_grad(dens_, v, g);
  }
  double mass(std::span<const Vec2> v, std::span<Vec2> g) const override {
    return weighted_mass_3d_grad(dens_, v, g);
  }
  void normals(std::span<const Vec2> v, std::span<Vec2> out) const override {
    const std::size_t m = v.size() - 1;
    out[0] = {1.0, 0.0};
    out[m] = {-1.0, 0.0};
    for (std::size_t i = 1; i < m; ++i) {
      const Vec2 t = v[i + 1] - v[i - 1];
      const double l = norm(t);
      out[i] = {t.y / l, -t.x / l};
    }
  }
  bool valid(std::span<const Vec2> v) const override {
    const std::size_t m = v.size() - 1;
    if (!(v[0].x > v[m].x)) return false;
    for (std::size_t i = 1; i < m; ++i) {
      if (!(v[i].y > 0.0)) return false;
    }
    // Star-shaped about the axis point midway between the poles; the swept
    // angle must be exactly pi.
    const Vec2 c{0.5 * (v[0].x + v[m].x), 0.0};
    double angle = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 a = v[i] - c;
      const Vec2 b = v[i + 1] - c;
      const double cr = cross(a, b);
      if (!(cr > 0.0)) return false;
      angle += std::atan2(cr, dot(a, b));
    }
    return std::abs(angle - pi) < 1e-6;
  }
  void precondition(std::vector<double>& g) const override {
    // Free ends: the poles move along the axis.
    std::vector<double> diag(g.size(), 1.0 + 2.0 * sigma_);
    diag.front() = diag.back() = 1.0 + sigma_;
    solve_tridiagonal(diag, -sigma_, g);
  }
  bool closed() const override { return false; }

 private:
  Density dens_;
  double sigma_;
};

// Newton correction of the mass along vertex normals.
bool project_mass(const Problem& prob, std::vector<Vec2>& v, double target) {
  std::vector<Vec2> gm(v.size()), nrm(v.size());
  for (int it = 0; it < 30; ++it) {
    const double m = prob.mass(v, gm);
    const double res = m - target;
    if (std::abs(res) <= kMassProjectionTol * target) return true;
    prob.normals(v, nrm);
    const double slope = dot_all(gm, nrm);
    if (!(std::abs(slope) > 0.0)) return false;
    const double delta = -res / slope;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += delta * nrm[i];
    if (!prob.valid(v)) return false;
  }
  return false;
}

struct DescentResult {
  std::vector<Vec2> v;
  double perimeter = 0.0;
  double mass = 0.0;
  int iterations = 0;
  bool converged = false;
  double projected_gradient = 0.0;
  std::vector<double> history;
  std::vector<double> mass_history;
};

DescentResult descend(const Problem& prob, std::vector<Vec2> v, double target,
                      const EvolveOptions& opts) {
  const std::size_t n = v.size();
  if (!prob.valid(v) || !project_mass(prob, v, target)) {
    throw NumericError("evolver: could not project the initial curve onto the mass constraint");
  }
  std::vector<Vec2> gp(n), gm(n), nrm(n), dir(n), trial(n);
  std::vector<double> zp(n), zm(n), gpn(n), gmn(n);
  DescentResult out;
  double perim = prob.perimeter(v, gp);
  out.mass_history.push_back(prob.mass(v, gm));
  out.history.push_back(perim);

  const double h = mean_edge_length(v, prob.closed());
  double step = 0.1 * h;
  const double max_step = 2.0 * h;
  const double min_step = 1e-13 * h;
  std::size_t window_start = 0;

  auto dot_n = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    // Normal velocity only; tangential sliding is a near-null mode that the
    // descent would otherwise chase forever.
    prob.normals(v, nrm);
    for (std::size_t i = 0; i < n; ++i) {
      gpn[i] = zp[i] = dot(gp[i], nrm[i]);
      gmn[i] = zm[i] = dot(gm[i], nrm[i]);
    }
    prob.precondition(zp);
    prob.precondition(zm);
    const double lambda = dot_n(gpn, zm) / dot_n(gmn, zm);
    double dmax = 0.0;
    double res2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double vel = lambda * zm[i] - zp[i];
      dir[i] = vel * nrm[i];
      dmax = std::max(dmax, std::abs(vel));
      res2 -= vel * (gpn[i] - lambda * gmn[i]);
    }
    out.projected_gradient = std::sqrt(std::max(0.0, res2) / dot_n(gpn, zp));
    if (dmax == 0.0) {
      out.converged = true;
      break;
    }

    bool accepted = false;
    bool geometry_failed = false;
    double trial_perim = 0.0;
    while (step >= min_step) {
      const double s = step / dmax;
      for (std::size_t i = 0; i < n; ++i) trial[i] = v[i] + s * dir[i];
      if (prob.valid(trial) && project_mass(prob, trial, target)) {
        geometry_failed = false;
        trial_perim = prob.perimeter(trial, {});
        if (trial_perim <= perim) {
          accepted = true;
          break;
        }
      } else {
        geometry_failed = true;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (geometry_failed) {
        throw NumericError("evolver: every trial step produced an invalid curve");
      }
      // No descent possible at any representable step: stationary.
      out.converged = true;
      break;
    }
    v.swap(trial);
    step = std::min(1.5 * step, max_step);
    perim = prob.perimeter(v, gp);
    out.mass_history.push_back(prob.mass(v, gm));
    out.history.push_back(perim);

    if ((it + 1) % kRedistributeEvery == 0 && edge_ratio(v, prob.closed()) > kClusterRatio) {
      std::vector<Vec2> resampled = v;
      resample_uniform(resampled, prob.closed());
      if (prob.valid(resampled) && project_mass(prob, resampled, target)) {
        v.swap(resampled);
        perim = prob.perimeter(v, gp);
        out.mass_history.push_back(prob.mass(v, gm));
        out.history.push_back(perim);
        window_start = out.history.size() - 1;
      }
    }

    const std::size_t last = out.history.size() - 1;
    if (last >= window_start + kWindow) {
      const double old = out.history[last - kWindow];
      if (old - perim <= opts.tol * perim) {
        out.converged = true;
        ++it;
        break;
      }
    }
  }
  out.iterations = it;
  out.perimeter = perim;
  out.mass = prob.mass(v, {});
  out.v = std::move(v);
  return out;
}

double segment_distance_to_origin(Vec2 a, Vec2 b) {
  const Vec2 e = b - a;
  const double ll = dot(e, e);
  double t = ll > 0.0 ? -dot(a, e) / ll : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(a + t * e);
}

double min_distance_to_origin(std::span<const Vec2> v) {
  double best = HUGE_VAL;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, segment_distance_to_origin(v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

double initial_offset(const Density& dens, double radius, const EvolveOptions& opts) {
  if (opts.initial_offset) return *opts.initial_offset;
  if (dens.p() == 2.0) return std::sqrt(std::max(0.0, radius * radius - dens.a()));
  return 0.5 * radius;
}

void validate_options(double mass, const EvolveOptions& opts, int min_vertices) {
  if (!(mass > 0.0)) throw DomainError("evolver: mass must be > 0");
  if (opts.vertices < min_vertices) {
    throw ConfigError("evolver: at least " + std::to_string(min_vertices) + " vertices required");
  }
  if (opts.max_iters < 1) throw ConfigError("evolver: max_iters must be >= 1");
  if (!(opts.tol > 0.0)) throw ConfigError("evolver: tol must be > 0");
}

KappaStats stats_of(const std::vector<double>& k) {
  if (k.empty()) return {0.0, 0.0};
  double lo = HUGE_VAL, hi = -HUGE_VAL, sum = 0.0;
  for (const double x : k) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
  }
  const double mean = sum / static_cast<double>(k.size());
  return {mean, (hi - lo) / std::abs(mean)};
}

// Signed curvature of the circle through a, b, c (positive when turning left).
double circumcurvature(Vec2 a, Vec2 b, Vec2 c) {
  return 2.0 * cross(b - a, c - b) / (norm(b - a) * norm(c - b) * norm(c - a));
}

// Outward unit normal at b of the circle through a, b, c; exact on circles,
// so the parallel curvature n_y / y of a sphere has no pole error.
Vec2 circumnormal(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 u = a - b, w = c - b;
  const double den = 2.0 * cross(u, w);
  const Vec2 t = c - a;
  const Vec2 chord_normal = (1.0 / norm(t)) * Vec2{t.y, -t.x};
  if (std::abs(den) < 1e-14 * dot(t, t)) return chord_normal;
  const double uu = dot(u, u), ww = dot(w, w);
  const Vec2 centre{(w.y * uu - u.y * ww) / den, (u.x * ww - w.x * uu) / den};
  const Vec2 out = (-1.0 / norm(centre)) * centre;
  return dot(out, chord_normal) >= 0.0 ? out : -1.0 * out;
}

// Generalised mean curvature of the surface of revolution at each interior
// profile vertex: meridian curvature + parallel curvature n_y / y + dpsi/dn.
KappaStats kappa_psi_stats_profile(const Density& dens, std::span<const Vec2> v) {
  std::vector<double> k;
  const std::size_t m = v.size() - 1;
  for (std::size_t i = 1; i < m; ++i) {
    const Vec2 nrm = circumnormal(v[i - 1], v[i], v[i + 1]);
    const double r = norm(v[i]);
    double value = circumcurvature(v[i - 1], v[i], v[i + 1]) + nrm.y / v[i].y;
    if (r > 0.0) value += dens.log_derivative(r) * dot(v[i], nrm) / r;
    k.push_back(value);
  }
  return stats_of(k);
}

}  // namespace

PolyCurve::PolyCurve(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 16) throw DomainError("PolyCurve: at least 16 vertices required");
  if (!is_star_shaped(vertices_)) {
    throw DomainError("PolyCurve: curve must be simple, counter-clockwise and star-shaped");
  }
}

PolyCurve PolyCurve::circle(Vec2 center, double radius, int n) {
  if (!(radius > 0.0)) throw DomainError("PolyCurve::circle: radius must be > 0");
  std::vector<Vec2> v(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * pi * k / n;
    v[k] = {center.x + radius * std::cos(th), center.y + radius * std::sin(th)};
  }
  return PolyCurve(std::move(v));
}

bool is_star_shaped(std::span<const Vec2> v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  double area2 = 0.0;
  Vec2 c{};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    const double cr = cross(a, b);
    area2 += cr;
    c += cr * (a + b);
  }
  if (!(area2 > 0.0)) return false;
  c = (1.0 / (3.0 * area2)) * c;
  double angle = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i] - c, b = v[(i + 1) % n] - c;
    const double cr = cross(a, b);
    if (!(cr > 0.0)) return false;
    angle += std::atan2(cr, dot(a, b));
  }
  return std::abs(angle - 2.0 * pi) < 1e-6;
}

double weighted_perimeter_2d_grad(const Density& dens, std::span<const Vec2> v,
                                  std::span<Vec2> grad) {
  const std::size_t n = v.size();
  const double p = dens.p(), a = dens.a();
  const bool want = !grad.empty();
  if (want) zero(grad);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Vec2 e = v[j] - v[i];
    const double len = norm(e);
    if (!(len > 0.0)) throw DomainError("weighted_perimeter_2d: zero-length edge");
    const Vec2 mid = 0.5 * (v[i] + v[j]);
    const double r2 = dot(mid, mid);
    const double rho = pow_sq(r2, p) + a;
    total += len * rho;
    if (want) {
      const Vec2 along = (rho / len) * e;
      const Vec2 radial = (0.5 * len * pow_grad_factor(r2, p)) * mid;
      grad[i] += radial - along;
      grad[j] += radial + along;
    }
  }
  return total;
}

double weighted_mass_2d_grad(const Density& dens, std::span<const Vec2> v, std::span<Vec2> grad) {
  const std::size_t n = v.size();
  const double p = dens.p(), a = dens.a();
  const EdgeRule& rule = edge_rule();
  const bool want = !grad.empty();
  if (want) zero(grad);
  double total = 0.0;
  // Fan of signed triangles (0, v_i, v_j); the radial integral of s^(p+1) is
  // exact, the one along the edge uses Gauss-Legendre.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Vec2 va = v[i], vb = v[j];
    const double c = cross(va, vb);
    double q = 0.0;
    Vec2 dqa{}, dqb{};
    for (int k = 0; k < kEdgeNodes; ++k) {
      const double t = rule.t[k];
      const Vec2 u = va + t * (vb - va);
      const double r2 = dot(u, u);
      q += rule.w[k] * pow_sq(r2, p);
      if (want) {
        const double f = rule.w[k] * pow_grad_factor(r2, p);
        dqa += ((1.0 - t) * f) * u;
        dqb += (t * f) * u;
      }
    }
    const double inv = 1.0 / (p + 2.0);
    const double qq = 0.5 * a + inv * q;
    total += c * qq;
    if (want) {
      grad[i] += qq * Vec2{vb.y, -vb.x} + (c * inv) * dqa;
      grad[j] += qq * Vec2{-va.y, va.x} + (c * inv) * dqb;
    }
  }
  return total;
}

double weighted_area_3d_grad(const Density& dens, std::span<const Vec2> v, std::span<Vec2> grad) {
  const std::size_t m = v.size() - 1;
  const double p = dens.p(), a = dens.a();
  const EdgeRule& rule = edge_rule();
  const bool want = !grad.empty();
  if (want) zero(grad);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 va = v[i], vb = v[i + 1];
    const Vec2 e = vb - va;
    const double len = norm(e);
    if (!(len > 0.0)) throw DomainError("weighted_area_3d: zero-length segment");
    double s = 0.0;
    Vec2 da{}, db{};
    for (int k = 0; k < kEdgeNodes; ++k) {
      const double t = rule.t[k];
      const Vec2 u = va + t * e;
      const double r2 = dot(u, u);
      const double rho = pow_sq(r2, p) + a;
      s += rule.w[k] * u.y * rho;
      if (want) {
        const Vec2 g = Vec2{0.0, rho} + (u.y * pow_grad_factor(r2, p)) * u;
        da += (rule.w[k] * (1.0 - t)) * g;
        db += (rule.w[k] * t) * g;
      }
    }
    total += 2.0 * pi * len * s;
    if (want) {
      const Vec2 eh = (1.0 / len) * e;
      grad[i] += (2.0 * pi) * (len * da - s * eh);
      grad[i + 1] += (2.0 * pi) * (len * db + s * eh);
    }
  }
  return total;
}

double weighted_mass_3d_grad(const Density& dens, std::span<const Vec2> v, std::span<Vec2> grad) {
  const std::size_t m = v.size() - 1;
  const double p = dens.p(), a = dens.a();
  const EdgeRule& rule = edge_rule();
  const bool want = !grad.empty();
  if (want) zero(grad);
  const double inv = 1.0 / (p + 3.0);
  double total = 0.0;
  // dV = 2 pi y dA over the half-section; the fan triangle from the origin
  // gives s^(p+2) and s^2 radial factors, integrated exactly.
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 va = v[i], vb = v[i + 1];
    const double c = cross(va, vb);
    double g = 0.0;
    Vec2 dga{}, dgb{};
    for (int k = 0; k < kEdgeNodes; ++k) {
      const double t = rule.t[k];
      const Vec2 u = va + t * (vb - va);
      const double r2 = dot(u, u);
      const double pw = pow_sq(r2, p);
      g += rule.w[k] * u.y * (pw * inv + a / 3.0);
      if (want) {
        const Vec2 dg = Vec2{0.0, pw * inv + a / 3.0} + (u.y * pow_grad_factor(r2, p) * inv) * u;
        dga += (rule.w[k] * (1.0 - t)) * dg;
        dgb += (rule.w[k] * t) * dg;
      }
    }
    total += 2.0 * pi * c * g;
    if (want) {
      grad[i] += (2.0 * pi) * (g * Vec2{vb.y, -vb.x} + c * dga);
      grad[i + 1] += (2.0 * pi) * (g * Vec2{-va.y, va.x} + c * dgb);
    }
  }
  return total;
}

double weighted_perimeter_2d(const Density& dens, const PolyCurve& c) {
  return weighted_perimeter_2d_grad(dens, c.vertices(), {});
}

double weighted_mass_2d(const Density& dens, const PolyCurve& c) {
  if (!is_star_shaped(c.vertices())) {
    throw DomainError("weighted_mass_2d: curve is not star-shaped about its centroid");
  }
  return weighted_mass_2d_grad(dens, c.vertices(), {});
}

double unweighted_perimeter(const PolyCurve& c) {
  const auto v = c.vertices();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += norm(v[(i + 1) % v.size()] - v[i]);
  return total;
}

double unweighted_area(const PolyCurve& c) {
  const auto v = c.vertices();
  double area2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) area2 += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * area2;
}

Vec2 area_centroid(const PolyCurve& c) {
  const auto v = c.vertices();
  double area2 = 0.0;
  Vec2 acc{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    const double cr = cross(a, b);
    area2 += cr;
    acc += cr * (a + b);
  }
  return (1.0 / (3.0 * area2)) * acc;
}

KappaStats kappa_psi_stats_2d(const Density& dens, std::span<const Vec2> v) {
  const std::size_t n = v.size();
  bool polar = true;
  for (std::size_t i = 0; i < n && polar; ++i) {
    if (!(cross(v[i], v[(i + 1) % n]) > 0.0) || norm(v[i]) == 0.0) polar = false;
  }
  std::vector<double> k(n);
  if (polar) {
    // r(theta) about the origin with non-uniform three-point differences.
    std::vector<double> th(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
      th[i] = std::atan2(v[i].y, v[i].x);
      r[i] = norm(v[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
      double h1 = th[i] - th[im];
      double h2 = th[ip] - th[i];
      if (h1 <= 0.0) h1 += 2.0 * pi;
      if (h2 <= 0.0) h2 += 2.0 * pi;
      const double rd = -h2 / (h1 * (h1 + h2)) * r[im] + (h2 - h1) / (h1 * h2) * r[i] +
                        h1 / (h2 * (h1 + h2)) * r[ip];
      const double rdd =
          2.0 * (r[im] / (h1 * (h1 + h2)) - r[i] / (h1 * h2) + r[ip] / (h2 * (h1 + h2)));
      k[i] = kappa_psi(dens, r[i], rd, rdd);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
      const Vec2 nrm = circumnormal(a, b, c);
      const double r = norm(b);
      double value = circumcurvature(a, b, c);
      if (r > 0.0) value += dens.log_derivative(r) * dot(b, nrm) / r;
      k[i] = value;
    }
  }
  return stats_of(k);
}

EvolveReport evolve_2d(const Density& dens, double mass, const EvolveOptions& opts) {
  validate_options(mass, opts, 64);
  const double radius = symmetric_ball(dens, Dimension(2), mass).radius;
  const double offset = initial_offset(dens, radius, opts);
  const PolyCurve start = PolyCurve::circle({offset, 0.0}, radius, opts.vertices);
  const Curve2d prob(dens, start.size());
  DescentResult res = descend(prob, {start.vertices().begin(), start.vertices().end()}, mass, opts);

  EvolveReport rep;
  rep.dim = 2;
  rep.final_curve = PolyCurve(res.v);
  rep.weighted_perimeter = res.perimeter;
  rep.weighted_mass = res.mass;
  rep.unweighted_perimeter = unweighted_perimeter(rep.final_curve);
  rep.unweighted_area = unweighted_area(rep.final_curve);
  rep.iterations = res.iterations;
  rep.mass_residual = std::abs(res.mass - mass);
  rep.converged = res.converged && rep.mass_residual <= 1e-8 * mass;
  const KappaStats ks = kappa_psi_stats_2d(dens, res.v);
  rep.kappa_psi_mean = ks.mean;
  rep.kappa_psi_spread = ks.spread;
  rep.centroid = area_centroid(rep.final_curve);
  rep.center_offset = norm(rep.centroid);
  rep.radius = std::sqrt(rep.unweighted_area / pi);
  rep.min_radial_distance = min_distance_to_origin(res.v);
  rep.projected_gradient = res.projected_gradient;
  rep.perimeter_history = std::move(res.history);
  rep.mass_history = std::move(res.mass_history);
  return rep;
}

EvolveReport evolve_3d_axisym(const Density& dens, double mass, const EvolveOptions& opts) {
  validate_options(mass, opts, 16);
  const double radius = symmetric_ball(dens, Dimension(3), mass).radius;
  const double offset = initial_offset(dens, radius, opts);
  const int m = opts.vertices;
  std::vector<Vec2> profile(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) {
    const double th = pi * k / m;
    profile[k] = {offset + radius * std::cos(th), radius * std::sin(th)};
  }
  profile[m].y = 0.0;
  const Profile3d prob(dens, static_cast<std::size_t>(m));
  DescentResult res = descend(prob, std::move(profile), mass, opts);
  const std::vector<Vec2>& v = res.v;

  // Unweighted surface area (frusta), and volume / axial moment from the
  // fan triangles of the half-section with dV = 2 pi y dA.
  double area = 0.0, volume = 0.0, moment = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const Vec2 a = v[i], b = v[i + 1];
    area += pi * (a.y + b.y) * norm(b - a);
    const double tri = 0.5 * cross(a, b);
    volume += 2.0 * pi * tri * (a.y + b.y) / 3.0;
    moment += 2.0 * pi * tri / 12.0 * (a.x * a.y + b.x * b.y + (a.x + b.x) * (a.y + b.y));
  }

  std::vector<Vec2> section(v.begin(), v.end());
  for (std::size_t i = v.size() - 2; i >= 1; --i) section.push_back({v[i].x, -v[i].y});

  EvolveReport rep;
  rep.dim = 3;
  rep.final_curve = PolyCurve(section);
  rep.weighted_perimeter = res.perimeter;
  rep.weighted_mass = res.mass;
  rep.unweighted_perimeter = area;
  rep.unweighted_area = volume;
  rep.iterations = res.iterations;
  rep.mass_residual = std::abs(res.mass - mass);
  rep.converged = res.converged && rep.mass_residual <= 1e-8 * mass;
  const KappaStats ks = kappa_psi_stats_profile(dens, v);
  rep.kappa_psi_mean = ks.mean;
  rep.kappa_psi_spread = ks.spread;
  rep.centroid = {moment / volume, 0.0};
  rep.center_offset = std::abs(rep.centroid.x);
  rep.radius = std::cbrt(3.0 * volume / (4.0 * pi));
  rep.min_radial_distance = min_distance_to_origin(section);
  rep.projected_gradient = res.projected_gradient;
  rep.perimeter_history = std::move(res.history);
  rep.mass_history = std::move(res.mass_history);
  return rep;
}

double isoperimetric_quotient(const EvolveReport& report) {
  if (!(report.unweighted_area > 0.0)) {
    throw DomainError("isoperimetric_quotient: enclosed measure must be > 0");
  }
  if (report.dim == 3) {
    return report.unweighted_perimeter /
           std::cbrt(36.0 * pi * report.unweighted_area * report.unweighted_area);
  }
  return report.unweighted_perimeter / std::sqrt(4.0 * pi * report.unweighted_area);
}

void write_curve_csv(const PolyCurve& c, std::ostream& out) {
  out << "vertex_index,x,y\n";
  const auto v = c.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << i << ',' << detail::format_number(v[i].x) << ',' << detail::format_number(v[i].y)
        << '\n';
  }
}

void write_curve_csv(const PolyCurve& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_curve_csv(c, out);
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace isodense
