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
#include <vector>

#include "lans/solver.hpp"

namespace lans {

struct ConvergenceRow {
  double alpha = 0.0;
  int n_samples = 0;
  double mean = 0.0;    // E[sup_t |u^alpha - u|^2 + int ||u^alpha - u||_V^2]
  double stderr_ = 0.0;
  double mean_sup = 0.0;
  double mean_dissipation = 0.0;
};

/// For each alpha (strictly decreasing), n_samples LANS-alpha paths from xi
/// against the NSE solution from xi; sample i uses the Wiener path seeded by
/// stream_seed(master_seed, i) for every alpha.
std::vector<ConvergenceRow> convergence_study(const std::vector<double>& alpha_grid, int n_samples,
                                              const SpectralField& xi, const SolverConfig& cfg,
                                              std::uint64_t master_seed, int workers);

struct ProbeRow {
  int n = 0;
  double error = 0.0;  // sup_t |y_{h_n} - y_0| + (int ||y_{h_n} - y_0||_V^2)^{1/2}
  double sup_part = 0.0;
  double dissipation_part = 0.0;
  double weak_distance = 0.0;
  double cost = 0.0;
};

/// Skeleton responses to h_n(t) = sin(2 pi n t / T) hbar, compared with h = 0.
/// n = 0 is accepted and gives h = 0.
std::vector<ProbeRow> weak_continuity_probe(const std::vector<int>& n_list, const std::vector<double>& hbar,
                                            int basis_count, const SpectralField& xi, const SolverConfig& cfg,
                                            const ReferenceFlow* reference);

/// (u^alpha(t) - u(t)) / (sqrt(alpha) lambda(alpha)) on every record. Both
/// records need snapshots at identical times. Dissipation is re-accumulated
/// with the right-endpoint rule over record intervals.
TrajectoryRecord mdp_rescale(const TrajectoryRecord& u_alpha, const TrajectoryRecord& u, const ScalingLaw& scaling,
                             double alpha);

}  // namespace lans
