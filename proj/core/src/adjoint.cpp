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

#include "lans/adjoint.hpp"

#include <cmath>

#include "lans/bilinear.hpp"

namespace lans {

namespace {

// Reverse sweep through the skeleton steps. Given the terminal adjoint p_N,
// returns the Euclidean sensitivities d/dh_{n,j} of the terminal term.
std::vector<double> backward_sweep(const SolverConfig& cfg, const std::vector<SpectralField>& states,
                                   const ReferenceFlow* reference, const Control* h, SpectralField p) {
  const NoiseOperator& g = *cfg.noise;
  const int steps = cfg.steps();
  const int rank = g.rank();
  const int delta = cfg.scaling.delta;
  const double dt_nu = cfg.dt * cfg.viscosity;
  const bool state_gain = delta == 0 && g.variant() == NoiseVariant::multiplicative;

  std::vector<double> out(static_cast<std::size_t>(steps) * rank, 0.0);
  for (int n = steps - 1; n >= 0; --n) {
    const SpectralField q = apply_heat_resolvent(p, dt_nu);
    const SpectralField& lin = delta == 1 ? reference->states[n] : states[n];
    std::vector<double> proj(rank);
    for (int j = 0; j < rank; ++j) {
      proj[j] = inner_h(g.output(j), q);
      out[static_cast<std::size_t>(n) * rank + j] = cfg.dt * g.gain(lin, j) * proj[j];
    }
    SpectralField next = axpy(q, -cfg.dt, bilinear_btilde(lin, q) - 2.0 * bilinear_b(lin, q));
    if (state_gain && h != nullptr) {
      for (int j = 0; j < rank; ++j) {
        next = axpy(next, cfg.dt * g.sigma(j) * h->at(n)[j] * proj[j], g.probe(j));
      }
    }
    if (!std::isfinite(norm_h(next))) {
      throw NumericAbort("non-finite adjoint state at step " + std::to_string(n), {}, n);
    }
    p = std::move(next);
  }
  return out;
}

void require_noise(const SolverConfig& cfg) {
  if (!cfg.noise) throw std::invalid_argument("the skeleton needs a noise operator to carry the control");
}

}  // namespace

PenaltyValue skeleton_gradient(const RateTarget& target, double beta, const Control& h, const SpectralField& xi,
                               const SolverConfig& cfg, const ReferenceFlow* reference) {
  require_noise(cfg);
  if (!(beta >= 0.0)) throw std::invalid_argument("penalty weight must be >= 0");
  SolverConfig quiet = cfg;
  quiet.keep_snapshots = false;
  quiet.record_stride = cfg.steps();
  std::vector<SpectralField> states;
  states.reserve(static_cast<std::size_t>(cfg.steps()) + 1);
  solve_skeleton(xi, quiet, h, reference, [&](int, const SpectralField& y) { states.push_back(y); });
  const SpectralField& yT = states.back();

  PenaltyValue out;
  out.cost = control_cost(h);
  SpectralField seed(cfg.lattice);
  if (const auto* t = std::get_if<TerminalTarget>(&target)) {
    const SpectralField diff = yT - t->x;
    out.residual = norm_h(diff);
    seed = beta * diff;
  } else {
    const auto& o = std::get<ObservableTarget>(target);
    const double r = inner_h(yT, o.g) - o.level;
    out.residual = std::abs(r);
    seed = (beta * r) * o.g;
  }
  out.value = out.cost + 0.5 * beta * out.residual * out.residual;
  if (!std::isfinite(out.value)) throw NumericAbort("non-finite penalty value", {}, cfg.steps());

  const std::vector<double> sens = backward_sweep(cfg, states, reference, &h, std::move(seed));
  std::vector<double> grad(sens.size());
  const auto hv = h.values();
  for (std::size_t i = 0; i < sens.size(); ++i) grad[i] = hv[i] + sens[i] / cfg.dt;
  out.gradient = Control(h.rank(), h.dt(), h.steps(), std::move(grad));
  return out;
}

std::vector<double> observable_response_adjoint(const SpectralField& g, const SolverConfig& cfg,
                                                const ReferenceFlow& reference) {
  require_noise(cfg);
  if (cfg.scaling.delta != 1) throw std::invalid_argument("observable responses are linear only for delta = 1");
  return backward_sweep(cfg, {}, &reference, nullptr, g);
}

}  // namespace lans
