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

#include "lans/paths.hpp"
#include "lans/solver.hpp"

namespace lans {

/// A-priori functionals of a trajectory. The bound uses unit constants
///   (1 + |A^{1/2} y(0)|^2 + sqrt(M T) (1 + delta sup_t |A^{1/2} u|^2)) exp(int_0^T Phi_delta dt),
///   Phi_delta = 1 + ||h||_K + delta^2 (|A u|^2 + |u|^2) + |B(u,u)|^2 + |A u|^2 |A^{1/2} u|^2,
/// with M = int ||h||_K^2, so the warning flag is a trend indicator only.
struct EnergyReport {
  double sup_norm_alpha_sq = 0.0;       // sup_t ||y||_alpha^2
  double sup_norm_alpha_quartic = 0.0;  // sup_t ||y||_alpha^4
  double dissipation = 0.0;             // int_0^T ||y||_V^2 dt
  double phi_integral = 0.0;
  double bound = 0.0;
  bool bound_warning = false;           // sup_norm_alpha_sq > warn_multiple * bound
};

/// control and reference may be null (h = 0, u = 0 respectively).
EnergyReport energy_report(const TrajectoryRecord& traj, const SolverConfig& cfg, const Control* control,
                           const ReferenceFlow* reference, double warn_multiple = 1.0);

}  // namespace lans
