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

#include "lans/studies.hpp"

#include <cmath>
#include <numbers>

#include "lans/random.hpp"
#include "lans/worker_pool.hpp"

namespace lans {

std::vector<ConvergenceRow> convergence_study(const std::vector<double>& alpha_grid, int n_samples,
                                              const SpectralField& xi, const SolverConfig& cfg,
                                              std::uint64_t master_seed, int workers) {
  if (alpha_grid.empty()) throw std::invalid_argument("alpha grid is empty");
  for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i] < alpha_grid[i - 1])) throw std::invalid_argument("alpha grid must be decreasing");
  }
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const ReferenceFlow flow = reference_flow(xi, cfg);
  const int steps = cfg.steps();
  const int rank = cfg.noise ? cfg.noise->rank() : 1;

  std::vector<ConvergenceRow> rows;
  for (double alpha : alpha_grid) {
    SolverConfig c = cfg;
    c.alpha = alpha;
    c.keep_snapshots = false;
    c.record_stride = steps;
    std::vector<double> sup(static_cast<std::size_t>(n_samples)), diss(sup.size());
    parallel_for_index(sup.size(), workers, [&](std::size_t i) {
      const WienerPath w = sample_wiener(rank, c.dt, steps, stream_seed(master_seed, i));
      double s = 0.0, d = 0.0;
      solve_lans(xi, c, &w, [&](int n, const SpectralField& ua) {
        const SpectralField e = ua - flow.states[n];
        const double h = norm_h(e);
        s = std::max(s, h * h);
        if (n > 0) d += c.dt * std::pow(norm_v(e), 2);
      });
      sup[i] = s;
      diss[i] = d;
    });
    ConvergenceRow row;
    row.alpha = alpha;
    row.n_samples = n_samples;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < sup.size(); ++i) {
      const double v = sup[i] + diss[i];
      sum += v;
      sum2 += v * v;
      row.mean_sup += sup[i] / n_samples;
      row.mean_dissipation += diss[i] / n_samples;
    }
    row.mean = sum / n_samples;
    row.stderr_ = n_samples > 1 ? std::sqrt(std::max(0.0, sum2 / n_samples - row.mean * row.mean) / (n_samples - 1)) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ProbeRow> weak_continuity_probe(const std::vector<int>& n_list, const std::vector<double>& hbar,
                                            int basis_count, const SpectralField& xi, const SolverConfig& cfg,
                                            const ReferenceFlow* reference) {
  if (!cfg.noise) throw std::invalid_argument("the probe needs a noise operator to carry the control");
  const int rank = cfg.noise->rank();
  if (static_cast<int>(hbar.size()) != rank) throw std::invalid_argument("probe direction must have J entries");
  const int steps = cfg.steps();
  SolverConfig quiet = cfg;
  quiet.keep_snapshots = false;
  quiet.record_stride = steps;

  const Control zero(rank, cfg.dt, steps);
  std::vector<SpectralField> base;
  solve_skeleton(xi, quiet, zero, reference, [&](int, const SpectralField& y) { base.push_back(y); });

  std::vector<ProbeRow> rows;
  for (int n : n_list) {
    if (n < 0) throw std::invalid_argument("oscillation indices must be >= 0");
    const double omega = 2.0 * std::numbers::pi * n / cfg.horizon;
    const Control h = Control::from_function(rank, cfg.dt, steps,
                                             [&](double t, int j) { return std::sin(omega * t) * hbar[j]; });
    double sup = 0.0, diss = 0.0;
    solve_skeleton(xi, quiet, h, reference, [&](int k, const SpectralField& y) {
      const SpectralField e = y - base[k];
      sup = std::max(sup, norm_h(e));
      if (k > 0) diss += cfg.dt * std::pow(norm_v(e), 2);
    });
    ProbeRow row;
    row.n = n;
    row.sup_part = sup;
    row.dissipation_part = std::sqrt(diss);
    row.error = sup + row.dissipation_part;
    row.weak_distance = weak_distance(h, zero, basis_count);
    row.cost = control_cost(h);
    rows.push_back(row);
  }
  return rows;
}

TrajectoryRecord mdp_rescale(const TrajectoryRecord& u_alpha, const TrajectoryRecord& u, const ScalingLaw& scaling,
                             double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  scaling.validate();
  if (u_alpha.points.size() != u.points.size()) throw std::invalid_argument("trajectory grid mismatch");
  const double factor = 1.0 / (std::sqrt(alpha) * scaling.lambda(alpha));
  TrajectoryRecord out;
  out.alpha = u_alpha.alpha;
  double dissipation = 0.0;
  for (std::size_t i = 0; i < u.points.size(); ++i) {
    const auto& a = u_alpha.points[i];
    const auto& b = u.points[i];
    if (a.step != b.step || a.time != b.time) throw std::invalid_argument("trajectory grid mismatch");
    if (!a.snapshot || !b.snapshot) throw std::invalid_argument("mdp_rescale needs field snapshots");
    const SpectralField y = factor * (*a.snapshot - *b.snapshot);
    if (i > 0) dissipation += (a.time - u.points[i - 1].time) * std::pow(norm_v(y), 2);
    out.points.push_back(measure(y, out.alpha, a.step, a.time, dissipation, true));
  }
  return out;
}

}  // namespace lans
