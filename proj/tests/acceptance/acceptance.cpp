// Copyright 2026 The lans-alpha Authors
//
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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here and never read from the environment.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "lans/adjoint.hpp"
#include "lans/cli.hpp"
#include "lans/config.hpp"
#include "lans/operator_checks.hpp"
#include "lans/random.hpp"
#include "lans/rate.hpp"
#include "lans/records.hpp"
#include "lans/studies.hpp"

using namespace lans;
namespace fs = std::filesystem;

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kDecayTol = 0.01;
constexpr double kUnifiedLdTol = 1e-12;
constexpr double kUnifiedMdTol = 1e-8;
constexpr double kLinearityTol = 1e-10;
constexpr double kGramianTol = 1e-6;
constexpr double kGradientTol = 1e-5;
constexpr double kTailRateTol = 0.25;
constexpr double kHalvingFactor = 2.0;
constexpr double kProbeFactor = 4.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RunConfig preset(const char* name) {
  RunConfig rc;
  apply_preset(rc, name);
  return rc;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lans");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

Table read_table(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw std::runtime_error("missing " + p.string());
  return read_csv(f);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

double snapshot_gap(const TrajectoryRecord& a, const TrajectoryRecord& b, bool relative) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const double d = norm_h(*a.points[i].snapshot - *b.points[i].snapshot);
    g = std::max(g, relative ? d / std::max(norm_h(*b.points[i].snapshot), 1e-300) : d);
  }
  return g;
}

Outcome identity_suite() {
  Engine e = make_engine(1, 1);
  double worst = 0.0;
  bool ok = true;
  for (const auto& c : check_bilinear_identities(make_lattice(32), 100, 0.1, e, kIdentityTol)) {
    worst = std::max(worst, c.worst_relative);
    ok = ok && c.pass();
  }
  return {ok, fmt("worst relative %.2e over 100 triples at n=32 (tol %.0e)", worst, kIdentityTol)};
}

Outcome operator_bounds() {
  bool ok = true;
  std::string d;
  std::uint64_t i = 0;
  for (double alpha : {0.05, 0.3, 0.9}) {
    Engine e = make_engine(2, i++);
    const auto r = verify_operator_bounds(make_lattice(32), alpha, 100, e);
    ok = ok && r.ok();
    d += fmt("a=%.2f: %.4f/%.4f/%.3f  ", alpha, r.max_smoothing_ratio, r.max_half_power_ratio, r.worst_commutator_ratio);
  }
  return {ok, d + "(limits 1 / 0.5 / 1)"};
}

Outcome taylor_green_decay() {
  RunConfig rc = preset("taylor-green");
  rc.n = 32;
  rc.dt = 1e-3;
  rc.horizon = 0.5;
  rc.noise.variant = "none";
  const auto cfg = make_solver_config(rc);
  const auto xi = taylor_green(cfg.lattice, 1.0);
  const double want = std::exp(-1.0);
  const auto nse = solve_nse(xi, cfg);
  const auto lans = solve_lans(xi, cfg, nullptr);
  const double e1 = std::abs(nse.points.back().norm_h / nse.points.front().norm_h - want) / want;
  const double e2 = std::abs(lans.points.back().norm_h / lans.points.front().norm_h - want) / want;
  return {e1 <= kDecayTol && e2 <= kDecayTol,
          fmt("relative error vs e^-2t at T=0.5: NSE %.2e, LANS %.2e (tol %.0e)", e1, e2, kDecayTol)};
}

Outcome unified_algebra() {
  RunConfig rc = preset("unified-default");
  double worst0 = 0.0, worst1 = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (double alpha : {0.4, 0.1}) {
      rc.alpha = alpha;
      auto cfg = make_solver_config(rc);
      cfg.keep_snapshots = true;
      const auto xi = make_initial(rc, cfg.lattice);
      const auto w = sample_wiener(cfg.noise->rank(), cfg.dt, cfg.steps(), stream_seed(seed, 0));
      const auto ua = solve_lans(xi, cfg, &w);
      const auto y0 = solve_unified(xi, cfg, nullptr, &w, nullptr);
      worst0 = std::max(worst0, snapshot_gap(y0, ua, true));
      auto md = cfg;
      md.scaling.delta = 1;
      const auto flow = reference_flow(xi, cfg);
      const auto y1 = solve_unified(xi, md, nullptr, &w, &flow);
      const auto rescaled = mdp_rescale(ua, solve_nse(xi, cfg), cfg.scaling, alpha);
      worst1 = std::max(worst1, snapshot_gap(y1, rescaled, true));
    }
  }
  return {worst0 <= kUnifiedLdTol && worst1 <= kUnifiedMdTol,
          fmt("delta=0 vs LANS %.2e (tol %.0e); delta=1 vs rescaled deviation %.2e (tol %.0e)", worst0, kUnifiedLdTol,
              worst1, kUnifiedMdTol)};
}

Control random_control(int rank, const SolverConfig& cfg, Engine& e) {
  std::normal_distribution<double> z;
  std::vector<double> v(static_cast<std::size_t>(rank * cfg.steps()));
  for (auto& x : v) x = z(e);
  return Control(rank, cfg.dt, cfg.steps(), v);
}

Outcome skeleton_linearity() {
  RunConfig rc = preset("unified-default");
  rc.horizon = 0.2;
  rc.delta = 1;
  auto cfg = make_solver_config(rc);
  cfg.keep_snapshots = true;
  const int rank = cfg.noise->rank();
  const auto xi = make_initial(rc, cfg.lattice);
  const auto flow = reference_flow(xi, cfg);
  Engine e = make_engine(5, 0);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto h = random_control(rank, cfg, e), g = random_control(rank, cfg, e);
    const double a = coef(e), b = coef(e);
    const auto lhs = solve_skeleton(xi, cfg, a * h + b * g, &flow);
    const auto yh = solve_skeleton(xi, cfg, h, &flow);
    const auto yg = solve_skeleton(xi, cfg, g, &flow);
    for (std::size_t i = 1; i < lhs.points.size(); ++i) {
      const auto rhs = a * *yh.points[i].snapshot + b * *yg.points[i].snapshot;
      worst = std::max(worst, norm_h(*lhs.points[i].snapshot - rhs) / std::max(norm_h(rhs), 1e-300));
    }
  }
  auto ld = cfg;
  ld.scaling.delta = 0;
  const auto zero = solve_skeleton(xi, ld, Control(rank, cfg.dt, cfg.steps()), nullptr);
  const double exact = snapshot_gap(zero, solve_nse(xi, ld), false);
  return {worst <= kLinearityTol && exact == 0.0,
          fmt("superposition %.2e over 10 pairs (tol %.0e); zero control vs NSE %.1e (must be 0)", worst, kLinearityTol,
              exact)};
}

Outcome rate_oracle() {
  Engine e = make_engine(6, 0);
  std::uniform_real_distribution<double> lam_d(1.0, 9.0), sig_d(0.5, 2.0), t_d(0.5, 2.0), b_d(0.1, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const double lam = lam_d(e), sigma = sig_d(e), b = b_d(e);
    SolverConfig c;
    c.lattice = make_lattice(8);
    c.dt = 0.01;
    c.horizon = std::round(t_d(e) / c.dt) * c.dt;
    c.alpha = 0.1;
    c.viscosity = lam;
    c.scaling.delta = 1;
    c.noise = NoiseOperator::from_modes(c.lattice, NoiseVariant::additive, {sigma}, {{{1, 0}, Phase::cosine}});
    const SpectralField xi(c.lattice);
    const auto flow = reference_flow(xi, c);
    RateProblem p(ObservableTarget{single_mode(c.lattice, {1, 0}, Phase::cosine), b});
    const double cost = rate_function(p, xi, c, &flow).cost;
    // discrete Gramian of the implicit scheme
    const double rho = 1.0 / (1.0 + c.dt * lam);
    double w = 0.0;
    for (int m = 1; m <= c.steps(); ++m) w += c.dt * sigma * sigma * std::pow(rho, 2 * m);
    worst = std::max(worst, std::abs(cost - b * b / (2 * w)) / (b * b / (2 * w)));
  }

  RunConfig rc = preset("unified-default");
  rc.n = 16;
  rc.horizon = 0.1;
  double grad_worst = 0.0;
  for (int probe = 0; probe < 20; ++probe) {
    rc.delta = probe % 2;
    const auto cfg = make_solver_config(rc);
    const int rank = cfg.noise->rank();
    const auto xi = make_initial(rc, cfg.lattice);
    const auto flow = reference_flow(xi, cfg);
    const ReferenceFlow* ref = rc.delta == 1 ? &flow : nullptr;
    const RateTarget target = ObservableTarget{random_field(cfg.lattice, e), 0.05};
    const auto h = random_control(rank, cfg, e), d = random_control(rank, cfg, e);
    const auto pv = skeleton_gradient(target, 100.0, h, xi, cfg, ref);
    double directional = 0.0;
    for (std::size_t i = 0; i < d.values().size(); ++i) directional += cfg.dt * pv.gradient.values()[i] * d.values()[i];
    const double eps = 1e-4;
    const double fd = (skeleton_gradient(target, 100.0, h + eps * d, xi, cfg, ref).value -
                       skeleton_gradient(target, 100.0, h + (-eps) * d, xi, cfg, ref).value) /
                      (2 * eps);
    grad_worst = std::max(grad_worst, std::abs(directional - fd) / std::max(std::abs(fd), 1e-300));
  }
  return {worst <= kGramianTol && grad_worst <= kGradientTol,
          fmt("rate vs b^2/(2W) %.2e over 5 toys (tol %.0e); adjoint vs central differences %.2e over 20 probes "
              "(tol %.0e)",
              worst, kGramianTol, grad_worst, kGradientTol)};
}

Outcome monte_carlo_trend(const fs::path& root) {
  const fs::path dir = root / "mc_tails";
  if (cli({"mc-tails", "--preset", "ou-toy", "--out-dir", dir.string()}) != 0) return {false, "mc-tails run failed"};
  const auto t = read_table(dir / "tails.csv");
  // Gaussian rate r^2 / (2 W), W the discrete Gramian of each of the two forced modes
  const RunConfig rc = preset("ou-toy");
  const double lam = 8.0, r = rc.tails.thresholds.front();
  const double rho = 1.0 / (1.0 + rc.dt * rc.viscosity * lam);
  const int steps = static_cast<int>(std::lround(rc.horizon / rc.dt));
  double w = 0.0;
  for (int m = 1; m <= steps; ++m) w += rc.dt * std::pow(rho, 2 * m);
  const double rate = r * r / (2 * w);
  bool monotone = true;
  double prev_gap = INFINITY;
  std::string d;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double got = t.number(i, 6);
    const double gap = std::abs(got - rate);
    monotone = monotone && std::isfinite(got) && gap < prev_gap;
    prev_gap = gap;
    d += fmt("a=%.3f: %.5f  ", t.number(i, 0), got);
  }
  const double last = t.number(t.rows.size() - 1, 6);
  const double rel = std::abs(last - rate) / rate;
  return {monotone && rel <= kTailRateTol,
          d + fmt("-> closed form %.5f; final relative gap %.3f (tol %.2f), monotone %s", rate, rel, kTailRateTol,
                  monotone ? "yes" : "no")};
}

Outcome convergence(const fs::path& root) {
  const fs::path dir = root / "converge";
  if (cli({"converge", "--preset", "unified-default", "--n", "16", "--out-dir", dir.string()}) != 0) {
    return {false, "converge run failed"};
  }
  const auto t = read_table(dir / "convergence.csv");
  bool ok = t.rows.size() == 4;
  std::string d = "ratios:";
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    const double ratio = t.number(i - 1, 2) / t.number(i, 2);
    ok = ok && ratio >= kHalvingFactor;
    d += fmt(" %.3f", ratio);
  }
  return {ok, d + fmt(" (each >= %.0f)", kHalvingFactor)};
}

Outcome weak_probe(const fs::path& root) {
  const fs::path dir = root / "weak_probe";
  if (cli({"weak-probe", "--preset", "unified-default", "--out-dir", dir.string()}) != 0) {
    return {false, "weak-probe run failed"};
  }
  const auto t = read_table(dir / "weak_probe.csv");
  bool decreasing = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i) decreasing = decreasing && t.number(i, 4) < t.number(i - 1, 4);
  const double first = t.number(0, 1), last = t.number(t.rows.size() - 1, 1);
  return {decreasing && last <= first / kProbeFactor,
          fmt("e(2)=%.3e e(32)=%.3e ratio %.2f (>= %.0f); d1 strictly decreasing %s", first, last, first / last,
              kProbeFactor, decreasing ? "yes" : "no")};
}

Outcome determinism(const fs::path& root) {
  struct Run {
    std::vector<std::string> args;
    const char* name;
  };
  const std::vector<Run> runs{
      {{"verify-identities", "--preset", "unified-default", "--trials", "20"}, "verify"},
      {{"simulate-unified", "--preset", "unified-default", "--delta", "1", "--T", "0.2"}, "unified"},
      {{"rate", "--preset", "ou-toy", "--delta", "0"}, "rate"},
      {{"mc-tails", "--preset", "ou-toy", "--samples", "5000"}, "tails"},
      {{"converge", "--preset", "unified-default", "--n", "16", "--samples", "16"}, "converge"},
      {{"weak-probe", "--preset", "unified-default"}, "probe"},
  };
  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const auto& run : runs) {
    const fs::path a = root / "det" / (std::string(run.name) + "_a");
    const fs::path b = root / "det" / (std::string(run.name) + "_b");
    auto args_a = run.args, args_b = run.args;
    args_a.insert(args_a.end(), {"--out-dir", a.string(), "--workers", "1"});
    args_b.insert(args_b.end(), {"--out-dir", b.string(), "--workers", "2"});
    if (cli(args_a) != 0 || cli(args_b) != 0) return {false, std::string(run.name) + " run failed"};
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
      if (!entry.is_regular_file()) continue;
      const auto rel = fs::relative(entry.path(), a);
      ++compared;
      if (!fs::exists(b / rel) || slurp(entry.path()) != slurp(b / rel)) differing.push_back(rel.string());
    }
  }
  // earlier acceptance runs must also reproduce
  const fs::path again = root / "det" / "weak_probe_again";
  if (cli({"weak-probe", "--preset", "unified-default", "--out-dir", again.string()}) != 0) return {false, "rerun failed"};
  ++compared;
  if (slurp(again / "weak_probe.csv") != slurp(root / "weak_probe" / "weak_probe.csv")) differing.push_back("weak_probe");
  std::string d = fmt("%zu files compared across worker counts", compared);
  for (const auto& f : differing) d += ", differs: " + f;
  return {differing.empty() && compared > runs.size(), d};
}

}  // namespace

int main() {
  const fs::path root = fs::absolute("acceptance_runs");
  fs::remove_all(root);
  fs::create_directories(root);

  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "identity suite", identity_suite},
      {2, "operator bounds", operator_bounds},
      {3, "Taylor-Green decay", taylor_green_decay},
      {4, "unified-system algebra", unified_algebra},
      {5, "skeleton linearity", skeleton_linearity},
      {6, "rate-function oracle", rate_oracle},
      {7, "Monte Carlo tail trend", [&] { return monte_carlo_trend(root); }},
      {8, "convergence in probability", [&] { return convergence(root); }},
      {9, "weak-continuity probe", [&] { return weak_probe(root); }},
      {10, "determinism", [&] { return determinism(root); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << ": " << o.detail
              << fmt(" [%.1f s]", secs) << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : fmt("%d criteria failed", failed)) << std::endl;
  return failed == 0 ? 0 : 1;
}
