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

#include "lans/tails.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lans/format.hpp"
#include "lans/random.hpp"
#include "lans/worker_pool.hpp"

namespace lans {

std::string TailEvent::describe() const {
  switch (statistic) {
    case TailStatistic::sup_norm:
      return "sup_t |y(t)| > " + format_double(threshold);
    case TailStatistic::terminal_norm:
      return "|y(T)| > " + format_double(threshold);
    case TailStatistic::terminal_observable:
      return "(y(T), g) > " + format_double(threshold);
  }
  return {};
}

WilsonInterval wilson_interval(int hits, int n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * static_cast<double>(n)));
  return {hits == 0 ? 0.0 : std::max(0.0, centre - half), hits == n ? 1.0 : std::min(1.0, centre + half)};
}

TailSamples sample_tail_statistic(const TailEvent& event, int n_samples, const SpectralField& xi,
                                  const SolverConfig& cfg, const ReferenceFlow* reference, std::uint64_t master_seed,
                                  int workers) {
  if (n_samples <= 0) throw std::invalid_argument("n_samples must be >= 1");
  if (event.statistic == TailStatistic::terminal_observable && !event.observable) {
    throw std::invalid_argument("observable event needs the functional g");
  }
  cfg.validate();
  SolverConfig quiet = cfg;
  quiet.keep_snapshots = false;
  quiet.record_stride = cfg.steps();
  const int steps = cfg.steps();
  const int rank = cfg.noise ? cfg.noise->rank() : 1;

  TailSamples out;
  out.alpha = cfg.alpha;
  out.delta = cfg.scaling.delta;
  out.speed = ldp_speed(cfg.scaling, cfg.alpha);
  out.master_seed = master_seed;
  out.values.resize(static_cast<std::size_t>(n_samples));
  parallel_for_index(out.values.size(), workers, [&](std::size_t i) {
    const WienerPath w = sample_wiener(rank, cfg.dt, steps, stream_seed(master_seed, i));
    double sup = 0.0;
    SpectralField last(cfg.lattice);
    solve_unified(xi, quiet, nullptr, &w, reference, [&](int n, const SpectralField& y) {
      sup = std::max(sup, norm_h(y));
      if (n == steps) last = y;
    });
    switch (event.statistic) {
      case TailStatistic::sup_norm: out.values[i] = sup; break;
      case TailStatistic::terminal_norm: out.values[i] = norm_h(last); break;
      case TailStatistic::terminal_observable: out.values[i] = inner_h(last, *event.observable); break;
    }
  });
  return out;
}

TailEstimate estimate_tail(const TailSamples& samples, const TailEvent& event) {
  TailEstimate e;
  e.alpha = samples.alpha;
  e.event = event.describe();
  e.threshold = event.threshold;
  e.n_samples = static_cast<int>(samples.values.size());
  e.hits = static_cast<int>(
      std::count_if(samples.values.begin(), samples.values.end(), [&](double v) { return v > event.threshold; }));
  e.p_hat = e.n_samples > 0 ? static_cast<double>(e.hits) / e.n_samples : 0.0;
  e.speed = samples.speed;
  const auto ci = wilson_interval(e.hits, e.n_samples);
  e.ci_low = ci.low;
  e.ci_high = ci.high;
  if (e.hits > 0) {
    e.rate = -std::log(e.p_hat) / e.speed;
  } else {
    e.zero_hit_upper = wilson_interval(0, e.n_samples, 1.6448536269514722).high;
  }
  return e;
}

std::vector<TailEstimate> tail_sweep(const TailSamples& samples, const TailEvent& event,
                                     const std::vector<double>& thresholds) {
  std::vector<TailEstimate> out;
  for (double r : thresholds) {
    TailEvent e = event;
    e.threshold = r;
    out.push_back(estimate_tail(samples, e));
  }
  return out;
}

TailEstimate mc_tail(const TailEvent& event, int n_samples, const SpectralField& xi, const SolverConfig& cfg,
                     const ReferenceFlow* reference, std::uint64_t master_seed, int workers) {
  return estimate_tail(sample_tail_statistic(event, n_samples, xi, cfg, reference, master_seed, workers), event);
}

}  // namespace lans
