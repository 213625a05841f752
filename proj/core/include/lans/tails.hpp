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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lans/solver.hpp"

namespace lans {

enum class TailStatistic { sup_norm, terminal_norm, terminal_observable };

/// Exceedance event {statistic > threshold}. sup_norm is sup_t |y(t)| over
/// every time step; terminal_observable needs the functional g.
struct TailEvent {
  TailStatistic statistic = TailStatistic::sup_norm;
  double threshold = 0.0;
  std::optional<SpectralField> observable;

  std::string describe() const;
};

/// Per-sample values of the event statistic for one alpha. Sample i is driven
/// by the Wiener path seeded with stream_seed(master_seed, i).
struct TailSamples {
  double alpha = 0.0;
  int delta = 0;
  double speed = 0.0;
  std::uint64_t master_seed = 0;
  std::vector<double> values;
};

struct TailEstimate {
  double alpha = 0.0;
  std::string event;
  double threshold = 0.0;
  int n_samples = 0;
  int hits = 0;
  double p_hat = 0.0;
  double speed = 0.0;                 // alpha^-1 lambda_delta(alpha)^2
  std::optional<double> rate;         // -log(p_hat) / speed, only when hits > 0
  double ci_low = 0.0;                // Wilson 95% interval on p_hat
  double ci_high = 0.0;
  std::optional<double> zero_hit_upper;  // one-sided 95% Wilson bound when hits = 0
};

/// Runs n_samples independent solve_unified trajectories (h = 0).
/// Throws std::invalid_argument when n_samples = 0.
TailSamples sample_tail_statistic(const TailEvent& event, int n_samples, const SpectralField& xi,
                                  const SolverConfig& cfg, const ReferenceFlow* reference, std::uint64_t master_seed,
                                  int workers);

TailEstimate estimate_tail(const TailSamples& samples, const TailEvent& event);

/// One sample set, many thresholds: p_hat is non-increasing in the threshold.
std::vector<TailEstimate> tail_sweep(const TailSamples& samples, const TailEvent& event,
                                     const std::vector<double>& thresholds);

TailEstimate mc_tail(const TailEvent& event, int n_samples, const SpectralField& xi, const SolverConfig& cfg,
                     const ReferenceFlow* reference, std::uint64_t master_seed, int workers);

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};
WilsonInterval wilson_interval(int hits, int n, double z = 1.959963984540054);

}  // namespace lans
