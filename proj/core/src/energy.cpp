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

#include "lans/energy.hpp"

#include <algorithm>
#include <cmath>

#include "lans/bilinear.hpp"

namespace lans {

EnergyReport energy_report(const TrajectoryRecord& traj, const SolverConfig& cfg, const Control* control,
                           const ReferenceFlow* reference, double warn_multiple) {
  EnergyReport r;
  for (const auto& p : traj.points) {
    const double a2 = p.norm_alpha * p.norm_alpha;
    r.sup_norm_alpha_sq = std::max(r.sup_norm_alpha_sq, a2);
    r.sup_norm_alpha_quartic = std::max(r.sup_norm_alpha_quartic, a2 * a2);
  }
  if (!traj.points.empty()) r.dissipation = traj.points.back().dissipation;

  const int steps = cfg.steps();
  const double delta = cfg.scaling.delta;
  double sup_u_v2 = 0.0;
  for (int n = 0; n < steps; ++n) {
    double phi = 1.0;
    if (control != nullptr) {
      double k2 = 0.0;
      for (double h : control->at(n)) k2 += h * h;
      phi += std::sqrt(k2);
    }
    if (reference != nullptr) {
      const SpectralField& u = reference->states.at(n);
      const double uh = norm_h(u), uv = norm_v(u), ua = norm_a(u), bu = norm_h(bilinear_b(u, u));
      phi += delta * delta * (ua * ua + uh * uh) + bu * bu + ua * ua * uv * uv;
      sup_u_v2 = std::max(sup_u_v2, uv * uv);
    }
    r.phi_integral += cfg.dt * phi;
  }
  const double m = control != nullptr ? 2.0 * control_cost(*control) : 0.0;
  const double y0v = traj.points.empty() ? 0.0 : traj.points.front().norm_v;
  r.bound = (1.0 + y0v * y0v + std::sqrt(m * cfg.horizon) * (1.0 + delta * sup_u_v2)) * std::exp(r.phi_integral);
  r.bound_warning = r.sup_norm_alpha_sq > warn_multiple * r.bound;
  return r;
}

}  // namespace lans
