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

// isodense command-line front end. Talks to the library only through the C
// interface in isodense/isodense.h.
//
// Exit codes: 0 success, 1 usage / invalid parameters, 2 numeric failure,
// 3 I/O failure.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "isodense/isodense.h"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(isodense_status s) {
  switch (s) {
    case ISODENSE_ERR_DOMAIN:
    case ISODENSE_ERR_BRANCH:
    case ISODENSE_ERR_CONFIG:
    case ISODENSE_ERR_NULL:
      return kExitUsage;
    case ISODENSE_ERR_IO:
      return kExitIo;
    default:
      return kExitNumeric;
  }
}

void check(isodense_status s) {
  if (s != ISODENSE_OK) {
    throw CliError{exit_code_for(s),
                   std::string(isodense_status_name(s)) + ": " + isodense_last_error()};
  }
}

// 12 significant digits, locale independent.
std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, r.ptr);
}

// JSON numbers carry the same 12 digits as the CSV output.
double rounded(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = fmt(x);
  double y = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), y);
  return y;
}

struct DensityHandle {
  isodense_density* ptr = nullptr;
  DensityHandle(double p, double a) { check(isodense_density_create(p, a, &ptr)); }
  ~DensityHandle() { isodense_density_destroy(ptr); }
  DensityHandle(const DensityHandle&) = delete;
  DensityHandle& operator=(const DensityHandle&) = delete;
};

struct EvolveHandle {
  isodense_evolve_result* ptr = nullptr;
  ~EvolveHandle() { isodense_evolve_result_destroy(ptr); }
};

// Writes to the file at path, or stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kExitIo, "cannot open " + path + " for writing"};
  out << text;
  out.close();
  if (!out) throw CliError{kExitIo, "failed writing " + path};
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

struct Params {
  int dim = 1;
  double p = 2.0;
  double a = 0.0;
  double mass = 1.0;
  double a_min = 0.0;
  double a_max = 1.0;
  int steps = 101;
  int grid = 101;
  int vertices = 0;  // 0: library default
  int iters = 0;
  double tol = 0.0;
  std::string out;
  bool force_numeric = false;
  bool a_given = false;
};

isodense_evolve_options evolve_options(const Params& prm) {
  isodense_evolve_options o;
  isodense_evolve_options_default(&o);
  if (prm.vertices > 0) o.vertices = prm.vertices;
  if (prm.iters > 0) o.max_iters = prm.iters;
  if (prm.tol > 0.0) o.tol = prm.tol;
  return o;
}

void cmd_solve(const Params& prm) {
  const DensityHandle dens(prm.p, prm.a);
  ordered_json j;
  j["dim"] = prm.dim;
  j["p"] = prm.p;
  j["a"] = prm.a;
  j["mass"] = prm.mass;
  if (prm.dim == 1) {
    isodense_interval_solution s;
    check(isodense_solve_1d(dens.ptr, prm.mass,
                            prm.force_numeric ? ISODENSE_METHOD_GENERAL : ISODENSE_METHOD_AUTO, 0,
                            &s));
    j["branch"] = isodense_branch_name(s.branch);
    j["alpha"] = rounded(s.alpha);
    j["beta"] = rounded(s.beta);
    j["perimeter"] = rounded(s.perimeter);
    j["lagrange_multiplier"] = s.has_lagrange ? ordered_json(rounded(s.lagrange)) : ordered_json();
    j["mass_residual"] = rounded(s.mass_residual);
    print_json(j);
    return;
  }
  if (prm.force_numeric) {
    const isodense_evolve_options o = evolve_options(prm);
    isodense_sweep_point s;
    check(isodense_sweep_point_solve(prm.dim, prm.p, prm.a, prm.mass, 1, &o, &s));
    j["branch"] = isodense_branch_name(s.branch);
    j["R"] = rounded(s.first);
    j["r0"] = rounded(s.second);
    j["perimeter"] = rounded(s.perimeter);
    j["lagrange_multiplier"] = ordered_json();
    j["mass_residual"] = rounded(s.mass_residual);
    print_json(j);
    return;
  }
  isodense_ball_solution s;
  check(isodense_solve_ball(dens.ptr, prm.dim, prm.mass, &s));
  j["branch"] = isodense_branch_name(s.branch);
  j["R"] = rounded(s.radius);
  j["r0"] = rounded(s.center_offset);
  j["perimeter"] = rounded(s.perimeter);
  j["lagrange_multiplier"] = s.has_lagrange ? ordered_json(rounded(s.lagrange)) : ordered_json();
  j["mass_residual"] = rounded(std::abs(s.mass - prm.mass));
  if (prm.p != 2.0) {
    // Only the centred ball has a closed form here; say whether it can be
    // the minimiser.
    double a_crit = 0.0;
    const bool has_crit = isodense_critical_offset(prm.p, prm.dim, prm.mass, &a_crit) == ISODENSE_OK;
    j["centred_is_candidate"] = has_crit && prm.a >= a_crit;
  }
  print_json(j);
}

void cmd_sweep(const Params& prm) {
  if (prm.dim < 1 || prm.dim > 3) throw CliError{kExitUsage, "--dim must be 1, 2 or 3"};
  if (!(prm.a_min <= prm.a_max)) throw CliError{kExitUsage, "--a-min must be <= --a-max"};
  if (prm.steps < 2) throw CliError{kExitUsage, "--steps must be >= 2"};
  {
    // Validate (p, mass) once so errors surface before any work starts.
    const DensityHandle probe(prm.p, std::max(prm.a_min, 0.0));
    if (!(prm.mass > 0.0)) throw CliError{kExitUsage, "--mass must be > 0"};
  }
  const isodense_evolve_options opts = evolve_options(prm);
  const int n = prm.steps;
  std::vector<isodense_sweep_point> rows(static_cast<std::size_t>(n));
  std::vector<isodense_status> status(static_cast<std::size_t>(n), ISODENSE_OK);
  std::vector<std::string> errors(static_cast<std::size_t>(n));

  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ISODENSE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) threads = std::min(threads, static_cast<unsigned>(cap));
  }
  threads = std::min(threads, static_cast<unsigned>(n));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      const double a = (i == n - 1) ? prm.a_max
                                    : prm.a_min + (prm.a_max - prm.a_min) * i / (n - 1);
      status[i] = isodense_sweep_point_solve(prm.dim, prm.p, a, prm.mass, prm.force_numeric ? 1 : 0,
                                             &opts, &rows[i]);
      if (status[i] != ISODENSE_OK) errors[i] = isodense_last_error();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (int i = 0; i < n; ++i) {
    if (status[i] != ISODENSE_OK) {
      throw CliError{exit_code_for(status[i]), std::string(isodense_status_name(status[i])) +
                                                   " at a=" + fmt(rows[i].a) + ": " + errors[i]};
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const isodense_sweep_point& x, const isodense_sweep_point& y) {
                     return x.a < y.a;
                   });
  std::ostringstream csv;
  csv << (prm.dim == 1 ? "a,branch,alpha,beta,perimeter,mass_residual\n"
                       : "a,branch,R,r0,perimeter,mass_residual\n");
  for (const auto& r : rows) {
    csv << fmt(r.a) << ',' << isodense_branch_name(r.branch) << ',' << fmt(r.first) << ','
        << fmt(r.second) << ',' << fmt(r.perimeter) << ',' << fmt(r.mass_residual) << '\n';
  }
  emit(prm.out, csv.str());
}

void cmd_contour(const Params& prm) {
  if (prm.grid < 2) throw CliError{kExitUsage, "--grid must be >= 2"};
  if (!(prm.mass > 0.0)) throw CliError{kExitUsage, "--mass must be > 0"};
  const DensityHandle dens(prm.p, prm.a);
  // Both axes run to the half-line length carrying all the mass.
  double extent = 0.0;
  check(isodense_density_primitive_inverse(dens.ptr, prm.mass, &extent));
  const std::size_t cells = static_cast<std::size_t>(prm.grid) * prm.grid;
  std::vector<double> alpha(cells), beta(cells), perim(cells), mass(cells);
  check(isodense_contour_grid(dens.ptr, extent, extent, prm.grid, alpha.data(), beta.data(),
                              perim.data(), mass.data()));
  const double band = 0.01 * prm.mass;
  std::ostringstream csv;
  csv << "alpha_abs,beta,perimeter,mass,constraint_beta,on_constraint\n";
  for (std::size_t k = 0; k < cells; ++k) {
    double cb = 0.0;
    // The last row sits at the full extent, where rounding can push the
    // remaining mass a hair below zero.
    if (isodense_beta_on_constraint(dens.ptr, alpha[k], prm.mass, &cb) != ISODENSE_OK) cb = 0.0;
    csv << fmt(alpha[k]) << ',' << fmt(beta[k]) << ',' << fmt(perim[k]) << ',' << fmt(mass[k])
        << ',' << fmt(cb) << ',' << (std::abs(mass[k] - prm.mass) < band ? 1 : 0) << '\n';
  }
  emit(prm.out, csv.str());
}

void cmd_evolve(const Params& prm) {
  if (prm.dim != 2 && prm.dim != 3) throw CliError{kExitUsage, "evolve needs --dim 2 or 3"};
  const DensityHandle dens(prm.p, prm.a);
  const isodense_evolve_options opts = evolve_options(prm);
  EvolveHandle res;
  check(isodense_evolve(dens.ptr, prm.dim, prm.mass, &opts, &res.ptr));
  isodense_evolve_summary s;
  check(isodense_evolve_result_summary(res.ptr, &s));
  if (!prm.out.empty()) check(isodense_evolve_result_write_csv(res.ptr, prm.out.c_str()));
  ordered_json j;
  j["dim"] = s.dim;
  j["p"] = prm.p;
  j["a"] = prm.a;
  j["mass"] = prm.mass;
  j["weighted_perimeter"] = rounded(s.weighted_perimeter);
  j["weighted_mass"] = rounded(s.weighted_mass);
  j["unweighted_perimeter"] = rounded(s.unweighted_perimeter);
  j["unweighted_area"] = rounded(s.unweighted_area);
  j["isoperimetric_quotient"] = rounded(s.isoperimetric_quotient);
  j["iterations"] = s.iterations;
  j["converged"] = s.converged != 0;
  j["kappa_psi_mean"] = rounded(s.kappa_psi_mean);
  j["kappa_psi_spread"] = rounded(s.kappa_psi_spread);
  j["centroid"] = {rounded(s.centroid_x), rounded(s.centroid_y)};
  j["center_offset"] = rounded(s.center_offset);
  j["radius"] = rounded(s.radius);
  j["min_radial_distance"] = rounded(s.min_radial_distance);
  j["mass_residual"] = rounded(s.mass_residual);
  j["vertices"] = isodense_evolve_result_vertex_count(res.ptr);
  if (!prm.out.empty()) j["curve_csv"] = prm.out;
  print_json(j);
}

void cmd_acrit(const Params& prm) {
  double a_crit = 0.0;
  check(isodense_critical_offset(prm.p, prm.dim, prm.mass, &a_crit));
  ordered_json j;
  j["dim"] = prm.dim;
  j["p"] = prm.p;
  j["mass"] = prm.mass;
  j["a_crit"] = rounded(a_crit);
  if (prm.a_given) {
    const DensityHandle dens(prm.p, prm.a);
    double m_crit = 0.0;
    check(isodense_critical_mass(dens.ptr, prm.dim, &m_crit));
    j["a"] = prm.a;
    j["m_crit"] = rounded(m_crit);
  }
  print_json(j);
}

struct VerifyTally {
  int passed = 0;
  int failed = 0;
};

void on_check(const char* name, int passed, double value, double limit, void* user) {
  auto* tally = static_cast<VerifyTally*>(user);
  (passed ? tally->passed : tally->failed)++;
  std::cout << (passed ? "PASS  " : "FAIL  ") << name << "  value=" << fmt(value)
            << " limit=" << fmt(limit) << '\n';
}

int cmd_verify(const std::string& suite) {
  VerifyTally tally;
  int all = 0;
  check(isodense_verify(suite.c_str(), on_check, &tally, &all));
  std::cout << suite << ": " << tally.passed << " passed, " << tally.failed << " failed\n";
  return all ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isoperimetric regions under the density r^p + a"};
  app.require_subcommand(1);
  Params prm;
  std::string suite;

  auto add_common = [&](CLI::App* sub, bool with_dim) {
    if (with_dim) sub->add_option("--dim", prm.dim, "Dimension (1, 2 or 3)")->check(CLI::Range(1, 3));
    sub->add_option("--p", prm.p, "Density exponent p > 0");
    sub->add_option("--mass", prm.mass, "Weighted mass M0 > 0");
  };
  auto add_evolver = [&](CLI::App* sub) {
    sub->add_option("--vertices", prm.vertices, "Evolver vertices (2D) or profile segments (3D)");
    sub->add_option("--iters", prm.iters, "Evolver iteration cap");
    sub->add_option("--tol", prm.tol, "Relative perimeter decrease over 50 iterations");
  };

  CLI::App* solve = app.add_subcommand("solve", "Minimiser for one (dim, p, a, mass)");
  add_common(solve, true);
  solve->add_option("--a", prm.a, "Density offset a >= 0");
  solve->add_flag("--force-numeric", prm.force_numeric, "Bypass closed forms");
  add_evolver(solve);

  CLI::App* sweep = app.add_subcommand("sweep", "CSV of minimisers over a range of a");
  add_common(sweep, true);
  sweep->add_option("--a-min", prm.a_min, "First a");
  sweep->add_option("--a-max", prm.a_max, "Last a");
  sweep->add_option("--steps", prm.steps, "Number of a values (>= 2)");
  sweep->add_option("--out", prm.out, "Output CSV (default stdout)");
  sweep->add_flag("--force-numeric", prm.force_numeric, "Bypass closed forms");
  add_evolver(sweep);

  CLI::App* contour = app.add_subcommand("contour", "CSV grid of 1D perimeter and mass");
  add_common(contour, false);
  contour->add_option("--a", prm.a, "Density offset a >= 0");
  contour->add_option("--grid", prm.grid, "Points per axis (>= 2)");
  contour->add_option("--out", prm.out, "Output CSV (default stdout)");

  CLI::App* evolve = app.add_subcommand("evolve", "Run the curve / surface evolver");
  add_common(evolve, true);
  evolve->add_option("--a", prm.a, "Density offset a >= 0");
  evolve->add_option("--out", prm.out, "Curve CSV (vertex_index,x,y)");
  add_evolver(evolve);

  CLI::App* acrit = app.add_subcommand("acrit", "Critical offset (and critical mass with --a)");
  add_common(acrit, true);
  CLI::Option* a_opt = acrit->add_option("--a", prm.a, "Density offset for the critical mass");

  CLI::App* verify = app.add_subcommand("verify", "Run a named invariant suite");
  verify->add_option("suite", suite, "oracle1d | branch-continuity | reduction | "
                                     "radial-quadrature | evolver-p2")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  prm.a_given = a_opt->count() > 0;

  try {
    if (*solve) cmd_solve(prm);
    if (*sweep) cmd_sweep(prm);
    if (*contour) cmd_contour(prm);
    if (*evolve) cmd_evolve(prm);
    if (*acrit) cmd_acrit(prm);
    if (*verify) return cmd_verify(suite);
  } catch (const CliError& e) {
    std::cerr << "isodense: " << e.message << '\n';
    return e.code;
  }
  return 0;
}
