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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "lans/energy.hpp"
#include "lans/field_io.hpp"
#include "lans/operator_checks.hpp"
#include "lans/random.hpp"
#include "lans/rate.hpp"
#include "lans/studies.hpp"
#include "lans/tails.hpp"

namespace lans::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double flag(bool b) { return b ? 1.0 : 0.0; }

void add_trajectory(CommandOutput& out, const TrajectoryRecord& rec, const std::string& name) {
  out.tables.push_back(trajectory_table(rec, name));
  for (const auto& p : rec.points) {
    if (!p.snapshot) continue;
    char file[96];
    std::snprintf(file, sizeof file, "snapshots/%s_step_%07d.csv", name.c_str(), p.step);
    std::ostringstream body;
    write_field_table(body, *p.snapshot);
    out.files.emplace_back(file, body.str());
  }
}

nlohmann::ordered_json energy_json(const EnergyReport& e) {
  nlohmann::ordered_json j;
  j["sup_norm_alpha_sq"] = e.sup_norm_alpha_sq;
  j["sup_norm_alpha_quartic"] = e.sup_norm_alpha_quartic;
  j["dissipation"] = e.dissipation;
  j["phi_integral"] = e.phi_integral;
  j["bound"] = e.bound;
  j["bound_warning"] = e.bound_warning;
  return j;
}

void abort_summary(CommandOutput& out, const NumericAbort& e, const std::string& name) {
  out.tables.push_back(trajectory_table(e.partial(), name));
  out.summary["status"] = "numeric-abort";
  out.summary["message"] = e.what();
  out.summary["abort_step"] = e.step();
  out.exit_code = 2;
}

int noise_rank(const SolverConfig& cfg) { return cfg.noise ? cfg.noise->rank() : 1; }

WienerPath run_wiener(const RunConfig& rc, const SolverConfig& cfg) {
  return sample_wiener(noise_rank(cfg), cfg.dt, cfg.steps(), stream_seed(rc.seed, 0));
}

SpectralField mode_field(const LatticePtr& lattice, const ModeSpec& m) { return single_mode(lattice, m.k, m.phase); }

}  // namespace

CommandOutput verify_identities(const RunConfig& rc, int) {
  CommandOutput out;
  const auto lattice = make_lattice(rc.n);
  bool all = true;

  Engine identity_engine = make_engine(rc.seed, 1);
  Table ids{"identities", {{"check", "label"}, {"worst_relative", "1"}, {"tolerance", "1"}, {"pass", "1"}}, {}};
  for (const auto& c : check_bilinear_identities(lattice, rc.verify.trials, rc.alpha, identity_engine)) {
    ids.add_row({c.name, c.worst_relative, c.tolerance, flag(c.pass())});
    all = all && c.pass();
  }
  out.tables.push_back(std::move(ids));

  Table bounds{"operator_bounds",
               {{"alpha", "L"}, {"max_smoothing_ratio", "1"}, {"max_half_power_ratio", "1"},
                {"worst_commutator_ratio", "1"}, {"trials", "1"}, {"pass", "1"}},
               {}};
  for (std::size_t i = 0; i < rc.verify.alphas.size(); ++i) {
    Engine engine = make_engine(rc.seed, 100 + i);
    const auto r = verify_operator_bounds(lattice, rc.verify.alphas[i], rc.verify.trials, engine);
    bounds.add_row({r.alpha, r.max_smoothing_ratio, r.max_half_power_ratio, r.worst_commutator_ratio,
                    static_cast<double>(r.trials), flag(r.ok())});
    all = all && r.ok();
  }
  out.tables.push_back(std::move(bounds));

  Engine estimate_engine = make_engine(rc.seed, 2);
  Table est{"estimates", {{"estimate", "label"}, {"calibrated_constant", "1"}, {"worst_ratio", "1"}, {"pass", "1"}}, {}};
  for (const auto& c : check_trilinear_estimates(make_lattice(rc.verify.calibration_n), rc.verify.calibration_trials,
                                                 lattice, rc.verify.check_trials, estimate_engine)) {
    est.add_row({c.name, c.calibrated_constant, c.worst_ratio, flag(c.pass())});
    all = all && c.pass();
  }
  out.tables.push_back(std::move(est));

  if (const auto g = make_noise(rc, lattice)) {
    Engine engine = make_engine(rc.seed, 3);
    const double c = g->lipschitz_constant();
    const double cg = g->growth_constant();
    double lip_h = 0.0, lip_v = 0.0, growth_h = 0.0, growth_v = 0.0, defect = 0.0;
    std::vector<double> coords(static_cast<std::size_t>(g->rank()));
    std::normal_distribution<double> normal;
    for (int t = 0; t < rc.verify.trials; ++t) {
      const SpectralField u = normal(engine) * random_field(lattice, engine);
      const SpectralField v = normal(engine) * random_field(lattice, engine);
      const auto d = hs_difference_norms(*g, u, v);
      const double du = norm_h(u - v);
      if (du > 0.0) {
        lip_h = std::max(lip_h, d.h / (c * du));
        lip_v = std::max(lip_v, d.v / (c * du));
      }
      const auto s = hs_norms(*g, u);
      growth_h = std::max(growth_h, s.h / (cg * (1.0 + norm_h(u))));
      growth_v = std::max(growth_v, s.v / (cg * (1.0 + norm_h(u))));
      for (auto& x : coords) x = normal(engine);
      defect = std::max(defect, invariant_defect(apply_g(*g, u, coords)));
    }
    Table cert{"noise_certificate", {{"quantity", "label"}, {"worst", "1"}, {"limit", "1"}, {"pass", "1"}}, {}};
    cert.add_row({"HS(K,H) Lipschitz ratio", lip_h, 1.0, flag(lip_h <= 1.0)});
    cert.add_row({"HS(K,V) Lipschitz ratio", lip_v, 1.0, flag(lip_v <= 1.0)});
    cert.add_row({"HS(K,H) growth ratio", growth_h, 1.0, flag(growth_h <= 1.0)});
    cert.add_row({"HS(K,V) growth ratio", growth_v, 1.0, flag(growth_v <= 1.0)});
    cert.add_row({"G(u)h invariant defect", defect, 1e-12, flag(defect <= 1e-12)});
    all = all && lip_h <= 1.0 && lip_v <= 1.0 && growth_h <= 1.0 && growth_v <= 1.0 && defect <= 1e-12;
    out.tables.push_back(std::move(cert));
    out.summary["lipschitz_constant"] = c;
    out.summary["growth_constant"] = cg;
  }
  out.summary["all_passed"] = all;
  return out;
}

CommandOutput simulate_nse(const RunConfig& rc, int) {
  CommandOutput out;
  const SolverConfig cfg = make_solver_config(rc);
  const SpectralField xi = make_initial(rc, cfg.lattice);
  try {
    const auto rec = solve_nse(xi, cfg);
    add_trajectory(out, rec, "trajectory");
    out.summary["energy"] = energy_json(energy_report(rec, cfg, nullptr, nullptr));
    out.summary["final_norm_h"] = rec.points.back().norm_h;
  } catch (const NumericAbort& e) {
    abort_summary(out, e, "trajectory");
  }
  return out;
}

CommandOutput simulate_lans(const RunConfig& rc, int) {
  CommandOutput out;
  const SolverConfig cfg = make_solver_config(rc);
  const SpectralField xi = make_initial(rc, cfg.lattice);
  const WienerPath w = run_wiener(rc, cfg);
  out.summary["wiener_seed"] = w.seed;
  try {
    const auto rec = solve_lans(xi, cfg, cfg.noise ? &w : nullptr);
    add_trajectory(out, rec, "trajectory");
    out.summary["energy"] = energy_json(energy_report(rec, cfg, nullptr, nullptr));
    out.summary["final_norm_h"] = rec.points.back().norm_h;
  } catch (const NumericAbort& e) {
    abort_summary(out, e, "trajectory");
  }
  return out;
}

CommandOutput simulate_unified(const RunConfig& rc, int) {
  CommandOutput out;
  const SolverConfig cfg = make_solver_config(rc);
  const SpectralField xi = make_initial(rc, cfg.lattice);
  const WienerPath w = run_wiener(rc, cfg);
  const Control h = make_control(rc, noise_rank(cfg));
  out.summary["wiener_seed"] = w.seed;
  out.summary["lambda_delta"] = cfg.scaling.lambda_delta(cfg.alpha);
  out.summary["control_cost"] = control_cost(h);
  try {
    const ReferenceFlow flow = reference_flow(xi, cfg);
    const auto rec = solve_unified(xi, cfg, &h, cfg.noise ? &w : nullptr, &flow);
    add_trajectory(out, rec, "trajectory");
    out.summary["energy"] = energy_json(energy_report(rec, cfg, &h, &flow));
  } catch (const NumericAbort& e) {
    abort_summary(out, e, "trajectory");
  }
  return out;
}

CommandOutput skeleton(const RunConfig& rc, int) {
  CommandOutput out;
  const SolverConfig cfg = make_solver_config(rc);
  const SpectralField xi = make_initial(rc, cfg.lattice);
  const Control h = make_control(rc, noise_rank(cfg));
  out.summary["control_cost"] = control_cost(h);
  try {
    const ReferenceFlow flow = reference_flow(xi, cfg);
    const auto rec = solve_skeleton(xi, cfg, h, &flow);
    add_trajectory(out, rec, "trajectory");
    out.summary["energy"] = energy_json(energy_report(rec, cfg, &h, &flow));
  } catch (const NumericAbort& e) {
    abort_summary(out, e, "trajectory");
  }
  return out;
}

CommandOutput rate(const RunConfig& rc, int workers) {
  CommandOutput out;
  const SolverConfig cfg = make_solver_config(rc);
  if (!cfg.noise) throw ConfigError("rate: the control enters through the noise operator; set noise.variant");
  const SpectralField xi = make_initial(rc, cfg.lattice);
  RateTarget target = ObservableTarget{mode_field(cfg.lattice, rc.rate.observable), rc.rate.level};
  if (rc.rate.target == "terminal") {
    SpectralField x = read_field_table(rc.rate.terminal_path);
    if (!(x.lattice() == *cfg.lattice)) throw ConfigError(rc.rate.terminal_path + ": field lattice differs from lattice.n");
    target = TerminalTarget{std::move(x)};
  }
  RateProblem problem(std::move(target));
  problem.beta_schedule = rc.rate.beta;
  problem.tolerance = rc.rate.tolerance;
  problem.max_iterations = rc.rate.max_iterations;
  problem.assembly_limit = rc.rate.assembly_limit;
  problem.workers = workers;

  ReferenceFlow flow;
  if (cfg.scaling.delta == 1) flow = reference_flow(xi, cfg);
  const RateResult r = rate_function(problem, xi, cfg, cfg.scaling.delta == 1 ? &flow : nullptr);

  Table stages{"rate_stages", {{"beta", "1"}, {"cost", "1"}, {"residual", "L/T"}, {"iterations", "1"}, {"converged", "1"}}, {}};
  for (const auto& s : r.stages) {
    stages.add_row({s.beta, s.cost, s.residual, static_cast<double>(s.iterations), flag(s.converged)});
  }
  out.tables.push_back(std::move(stages));
  std::ostringstream argmin;
  write_path_csv(argmin, r.argmin, r.argmin.values());
  out.files.emplace_back("argmin_control.csv", argmin.str());

  out.summary["delta"] = cfg.scaling.delta;
  out.summary["method"] = r.method;
  out.summary["cost"] = r.cost;
  out.summary["feasible"] = std::isfinite(r.cost);
  out.summary["converged"] = r.converged;
  out.summary["residual"] = r.residual;
  out.summary["gramian"] = r.gramian;
  out.summary["response_gap"] = r.response_gap;
  out.summary["upper_bound_only"] = cfg.scaling.delta == 0;
  out.summary["ldp_speed"] = ldp_speed(cfg.scaling, cfg.alpha);
  return out;
}

CommandOutput mc_tails(const RunConfig& rc, int workers) {
  CommandOutput out;
  const SolverConfig base = make_solver_config(rc);
  const SpectralField xi = make_initial(rc, base.lattice);
  TailEvent event;
  if (rc.tails.statistic == "sup-norm") {
    event.statistic = TailStatistic::sup_norm;
  } else if (rc.tails.statistic == "terminal-norm") {
    event.statistic = TailStatistic::terminal_norm;
  } else {
    event.statistic = TailStatistic::terminal_observable;
    event.observable = mode_field(base.lattice, rc.tails.observable);
  }
  ReferenceFlow flow;
  if (base.scaling.delta == 1) flow = reference_flow(xi, base);

  std::vector<double> lq(rc.tails.thresholds.size(), kNaN);
  if (rc.tails.compare_rate && base.noise) {
    SolverConfig linear = base;
    linear.scaling.delta = 1;
    const ReferenceFlow u = reference_flow(xi, linear);
    for (std::size_t i = 0; i < lq.size(); ++i) {
      RateProblem p(ObservableTarget{mode_field(base.lattice, rc.tails.observable), rc.tails.thresholds[i]});
      p.workers = workers;
      lq[i] = rate_function(p, xi, linear, &u).cost;
    }
  }

  Table t{"tails",
          {{"alpha", "L"}, {"threshold", "L/T"}, {"n_samples", "1"}, {"hits", "1"}, {"p_hat", "1"}, {"speed", "1"},
           {"rate", "1"}, {"ci_low", "1"}, {"ci_high", "1"}, {"zero_hit_upper", "1"}, {"lq_rate", "1"}, {"event", "label"}},
          {}};
  for (double alpha : rc.tails.alphas) {
    SolverConfig cfg = base;
    cfg.alpha = alpha;
    const TailSamples samples =
        sample_tail_statistic(event, rc.tails.samples, xi, cfg, cfg.scaling.delta == 1 ? &flow : nullptr, rc.seed, workers);
    const auto estimates = tail_sweep(samples, event, rc.tails.thresholds);
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      const auto& e = estimates[i];
      t.add_row({e.alpha, e.threshold, static_cast<double>(e.n_samples), static_cast<double>(e.hits), e.p_hat, e.speed,
                 e.rate.value_or(kNaN), e.ci_low, e.ci_high, e.zero_hit_upper.value_or(kNaN), lq[i], e.event});
    }
  }
  out.tables.push_back(std::move(t));
  out.summary["delta"] = base.scaling.delta;
  out.summary["samples_per_alpha"] = rc.tails.samples;
  return out;
}

CommandOutput converge(const RunConfig& rc, int workers) {
  CommandOutput out;
  const SolverConfig cfg = make_solver_config(rc);
  const SpectralField xi = make_initial(rc, cfg.lattice);
  const auto rows = convergence_study(rc.converge.alphas, rc.converge.samples, xi, cfg, rc.seed, workers);
  Table t{"convergence",
          {{"alpha", "L"}, {"n_samples", "1"}, {"mean", "L^2/T^2"}, {"stderr", "L^2/T^2"}, {"mean_sup", "L^2/T^2"},
           {"mean_dissipation", "1/T"}, {"ratio_to_previous", "1"}},
          {}};
  bool halving = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double ratio = i > 0 ? rows[i - 1].mean / rows[i].mean : kNaN;
    if (i > 0) halving = halving && ratio >= 2.0;
    t.add_row({rows[i].alpha, static_cast<double>(rows[i].n_samples), rows[i].mean, rows[i].stderr_, rows[i].mean_sup,
               rows[i].mean_dissipation, ratio});
  }
  out.tables.push_back(std::move(t));
  out.summary["decrease_factor_at_least_2"] = halving;
  return out;
}

CommandOutput weak_probe(const RunConfig& rc, int) {
  CommandOutput out;
  const SolverConfig cfg = make_solver_config(rc);
  if (!cfg.noise) throw ConfigError("weak-probe: the control enters through the noise operator; set noise.variant");
  const SpectralField xi = make_initial(rc, cfg.lattice);
  const int rank = cfg.noise->rank();
  std::vector<double> hbar = rc.probe.hbar;
  if (hbar.empty()) {
    hbar.assign(static_cast<std::size_t>(rank), 0.0);
    hbar[0] = 1.0;
  }
  int basis = rc.probe.basis_count;
  if (basis == 0) {
    const int nmax = rc.probe.n_list.empty() ? 0 : *std::max_element(rc.probe.n_list.begin(), rc.probe.n_list.end());
    basis = rank * (2 * nmax + 2);
  }
  ReferenceFlow flow;
  if (cfg.scaling.delta == 1) flow = reference_flow(xi, cfg);
  const auto rows = weak_continuity_probe(rc.probe.n_list, hbar, basis, xi, cfg, cfg.scaling.delta == 1 ? &flow : nullptr);
  Table t{"weak_probe",
          {{"n", "1"}, {"error", "L/T"}, {"sup_part", "L/T"}, {"dissipation_part", "1/T^(1/2)"},
           {"weak_distance", "1"}, {"control_cost", "1"}},
          {}};
  bool e_decreasing = true, d_decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    t.add_row({static_cast<double>(r.n), r.error, r.sup_part, r.dissipation_part, r.weak_distance, r.cost});
    if (i > 0) {
      e_decreasing = e_decreasing && r.error < rows[i - 1].error;
      d_decreasing = d_decreasing && r.weak_distance < rows[i - 1].weak_distance;
    }
  }
  out.tables.push_back(std::move(t));
  out.summary["basis_count"] = basis;
  out.summary["error_decreasing"] = e_decreasing;
  out.summary["weak_distance_decreasing"] = d_decreasing;
  if (rows.size() >= 2) out.summary["first_over_last_error"] = rows.front().error / rows.back().error;
  return out;
}

CommandOutput mdp_check(const RunConfig& rc, int) {
  CommandOutput out;
  SolverConfig cfg = make_solver_config(rc);
  if (!(cfg.alpha > 0.0)) throw ConfigError("mdp-check needs model.alpha in (0, 1]");
  cfg.keep_snapshots = true;
  const SpectralField xi = make_initial(rc, cfg.lattice);
  const WienerPath w = run_wiener(rc, cfg);
  const WienerPath* noise = cfg.noise ? &w : nullptr;
  try {
    const auto ua = solve_lans(xi, cfg, noise);
    const auto u = solve_nse(xi, cfg);
    const auto rescaled = mdp_rescale(ua, u, cfg.scaling, cfg.alpha);
    SolverConfig moderate = cfg;
    moderate.scaling.delta = 1;
    const ReferenceFlow flow = reference_flow(xi, cfg);
    const auto y = solve_unified(xi, moderate, nullptr, noise, &flow);
    double gap = 0.0;
    for (std::size_t i = 0; i < y.points.size(); ++i) {
      const double scale = std::max(norm_h(*rescaled.points[i].snapshot), 1e-300);
      gap = std::max(gap, norm_h(*rescaled.points[i].snapshot - *y.points[i].snapshot) / scale);
    }
    TrajectoryRecord plain = rescaled;
    for (auto& p : plain.points) p.snapshot.reset();
    add_trajectory(out, plain, "rescaled");
    out.summary["max_relative_gap_to_moderate_system"] = gap;
  } catch (const NumericAbort& e) {
    abort_summary(out, e, "rescaled");
    return out;
  }
  ScalingLaw large = cfg.scaling, moderate = cfg.scaling;
  large.delta = 0;
  moderate.delta = 1;
  out.summary["lambda"] = cfg.scaling.lambda(cfg.alpha);
  out.summary["ldp_speed"] = ldp_speed(large, cfg.alpha);
  out.summary["mdp_speed"] = ldp_speed(moderate, cfg.alpha);
  return out;
}

}  // namespace lans::cli
