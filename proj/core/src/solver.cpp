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

#include "lans/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lans/bilinear.hpp"

namespace lans {

void ScalingLaw::validate() const {
  if (!(kappa > 0.0 && kappa < 0.5)) throw std::invalid_argument("kappa must lie in (0, 1/2)");
  if (delta != 0 && delta != 1) throw std::invalid_argument("delta must be 0 or 1");
}

double ScalingLaw::lambda(double alpha) const { return std::pow(alpha, -kappa); }

double ScalingLaw::lambda_delta(double alpha) const {
  return delta == 0 ? 1.0 : std::sqrt(alpha) * lambda(alpha);
}

double ldp_speed(const ScalingLaw& scaling, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  scaling.validate();
  const double ld = scaling.lambda_delta(alpha);
  return ld * ld / alpha;
}

int SolverConfig::steps() const {
  validate();
  const double ratio = horizon / dt;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio) {
    throw std::invalid_argument("T must be a positive integer multiple of dt");
  }
  return static_cast<int>(n);
}

void SolverConfig::validate() const {
  if (!lattice) throw std::invalid_argument("solver config has no lattice");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("T must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(viscosity > 0.0)) throw std::invalid_argument("viscosity must be positive");
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  scaling.validate();
  if (noise && !(*noise->lattice() == *lattice)) throw std::invalid_argument("noise lives on a different lattice");
}

TrajectoryPoint measure(const SpectralField& y, double alpha, int step, double time, double dissipation,
                        bool keep_snapshot) {
  TrajectoryPoint p;
  p.step = step;
  p.time = time;
  p.norm_h = norm_h(y);
  p.norm_v = norm_v(y);
  p.norm_a = norm_a(y);
  p.norm_alpha = norm_alpha(y, alpha);
  p.dissipation = dissipation;
  if (keep_snapshot) p.snapshot = y;
  return p;
}

namespace {

// Bookkeeping shared by all integrators: records, dissipation, blowup sentinel.
class Recorder {
 public:
  Recorder(const SolverConfig& cfg, const SpectralField& y0, double scale, const StepObserver& observer)
      : cfg_(cfg), steps_(cfg.steps()), limit_(1e6 * std::max({scale, norm_h(y0), 1.0})), observer_(observer) {
    record_.alpha = cfg.alpha;
    record_.points.push_back(measure(y0, cfg.alpha, 0, 0.0, 0.0, cfg.keep_snapshots));
    if (observer_) observer_(0, y0);
  }

  int steps() const { return steps_; }

  void push(int n, const SpectralField& y) {
    const double h = norm_h(y);
    if (!std::isfinite(h) || h > limit_) {
      std::ostringstream msg;
      msg << "numeric abort at step " << n << " (t=" << n * cfg_.dt << "): |y| = " << h;
      throw NumericAbort(msg.str(), record_, n);
    }
    const double v = norm_v(y);
    dissipation_ += cfg_.dt * v * v;
    if (n % cfg_.record_stride == 0 || n == steps_) {
      record_.points.push_back(measure(y, cfg_.alpha, n, n * cfg_.dt, dissipation_, cfg_.keep_snapshots));
    }
    if (observer_) observer_(n, y);
  }

  TrajectoryRecord finish() { return std::move(record_); }

 private:
  const SolverConfig& cfg_;
  int steps_;
  double limit_;
  const StepObserver& observer_;
  TrajectoryRecord record_;
  double dissipation_ = 0.0;
};

void check_field(const SpectralField& xi, const SolverConfig& cfg) {
  cfg.validate();
  if (!(xi.lattice() == *cfg.lattice)) throw std::invalid_argument("initial field lives on a different lattice");
  if (!std::isfinite(norm_v(xi))) throw std::invalid_argument("initial field is not finite");
}

void check_grid(const TimeGrid& grid, const SolverConfig& cfg, int steps, const char* what) {
  const int rank = cfg.noise ? cfg.noise->rank() : grid.rank();
  if (grid.rank() != rank || grid.steps() != steps || std::abs(grid.dt() - cfg.dt) > 1e-12 * cfg.dt) {
    throw std::invalid_argument(std::string(what) + " does not match the solver grid or noise rank");
  }
}

const ReferenceFlow& require_reference(const ReferenceFlow* reference, const SolverConfig& cfg, int steps) {
  if (reference == nullptr) throw std::invalid_argument("delta = 1 needs the NSE reference trajectory u");
  if (static_cast<int>(reference->states.size()) != steps + 1 ||
      std::abs(reference->dt - cfg.dt) > 1e-12 * cfg.dt) {
    throw std::invalid_argument("reference trajectory does not match the solver grid");
  }
  return *reference;
}

}  // namespace

TrajectoryRecord solve_nse(const SpectralField& xi, const SolverConfig& cfg, const StepObserver& observer) {
  check_field(xi, cfg);
  Recorder rec(cfg, xi, norm_h(xi), observer);
  const double dt_nu = cfg.dt * cfg.viscosity;
  SpectralField u = xi;
  for (int n = 0; n < rec.steps(); ++n) {
    u = apply_heat_resolvent(axpy(u, -cfg.dt, bilinear_b(u, u)), dt_nu);
    rec.push(n + 1, u);
  }
  return rec.finish();
}

ReferenceFlow reference_flow(const SpectralField& xi, const SolverConfig& cfg) {
  ReferenceFlow flow;
  flow.dt = cfg.dt;
  SolverConfig quiet = cfg;
  quiet.keep_snapshots = false;
  quiet.record_stride = cfg.steps();
  solve_nse(xi, quiet, [&](int, const SpectralField& u) { flow.states.push_back(u); });
  return flow;
}

TrajectoryRecord solve_lans(const SpectralField& xi, const SolverConfig& cfg, const WienerPath* wiener,
                            const StepObserver& observer) {
  check_field(xi, cfg);
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("LANS-alpha needs alpha in (0, 1]");
  Recorder rec(cfg, xi, norm_h(xi), observer);
  const bool noisy = cfg.noise && wiener != nullptr;
  if (noisy) check_grid(*wiener, cfg, rec.steps(), "wiener path");
  const double dt_nu = cfg.dt * cfg.viscosity;
  const double gain = std::sqrt(cfg.alpha);
  SpectralField u = xi;
  for (int n = 0; n < rec.steps(); ++n) {
    const SpectralField v = apply_j_alpha_inverse(u, cfg.alpha);
    SpectralField rhs = axpy(u, -cfg.dt, btilde_alpha(u, v, cfg.alpha));
    if (noisy) rhs = axpy(rhs, gain, apply_g_alpha(*cfg.noise, u, wiener->step(n), cfg.alpha));
    u = apply_heat_resolvent(rhs, dt_nu);
    rec.push(n + 1, u);
  }
  return rec.finish();
}

TrajectoryRecord solve_unified(const SpectralField& xi, const SolverConfig& cfg, const Control* control,
                               const WienerPath* wiener, const ReferenceFlow* reference,
                               const StepObserver& observer) {
  check_field(xi, cfg);
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("the stochastic controlled system needs alpha in (0, 1]");
  const int delta = cfg.scaling.delta;
  const int steps = cfg.steps();
  const ReferenceFlow* flow = delta == 1 ? &require_reference(reference, cfg, steps) : nullptr;
  const bool controlled = cfg.noise && control != nullptr;
  const bool noisy = cfg.noise && wiener != nullptr;
  if (controlled) check_grid(*control, cfg, steps, "control");
  if (noisy) check_grid(*wiener, cfg, steps, "wiener path");

  const double alpha = cfg.alpha;
  const double ld = cfg.scaling.lambda_delta(alpha);
  const double noise_gain = std::sqrt(alpha) / ld;
  const double dt_nu = cfg.dt * cfg.viscosity;

  SpectralField y = delta == 1 ? SpectralField(cfg.lattice) : xi;
  Recorder rec(cfg, y, norm_h(xi), observer);
  for (int n = 0; n < steps; ++n) {
    const SpectralField z = apply_j_alpha_inverse(y, alpha);
    SpectralField drift = ld * btilde_alpha(y, z, alpha);
    SpectralField psi = y;
    if (delta == 1) {
      const SpectralField& u = flow->states[n];
      const SpectralField w = apply_j_alpha_inverse(u, alpha);
      drift = drift + btilde_alpha(u, z, alpha) + btilde_alpha(y, w, alpha);
      drift = axpy(drift, 1.0 / ld, btilde_alpha(u, w, alpha) - bilinear_b(u, u));
      psi = axpy(u, ld, y);
    }
    SpectralField rhs = axpy(y, -cfg.dt, drift);
    if (controlled) rhs = axpy(rhs, cfg.dt, apply_g_alpha(*cfg.noise, psi, control->at(n), alpha));
    if (noisy) rhs = axpy(rhs, noise_gain, apply_g_alpha(*cfg.noise, psi, wiener->step(n), alpha));
    y = apply_heat_resolvent(rhs, dt_nu);
    rec.push(n + 1, y);
  }
  return rec.finish();
}

TrajectoryRecord solve_skeleton(const SpectralField& xi, const SolverConfig& cfg, const Control& control,
                                const ReferenceFlow* reference, const StepObserver& observer) {
  check_field(xi, cfg);
  const int delta = cfg.scaling.delta;
  const int steps = cfg.steps();
  const ReferenceFlow* flow = delta == 1 ? &require_reference(reference, cfg, steps) : nullptr;
  check_grid(control, cfg, steps, "control");
  const double dt_nu = cfg.dt * cfg.viscosity;

  SpectralField y = delta == 1 ? SpectralField(cfg.lattice) : xi;
  Recorder rec(cfg, y, norm_h(xi), observer);
  for (int n = 0; n < steps; ++n) {
    SpectralField rhs = y;
    if (delta == 0) {
      rhs = axpy(rhs, -cfg.dt, bilinear_b(y, y));
      if (cfg.noise) rhs = axpy(rhs, cfg.dt, apply_g(*cfg.noise, y, control.at(n)));
    } else {
      const SpectralField& u = flow->states[n];
      rhs = axpy(rhs, -cfg.dt, bilinear_b(u, y) + bilinear_b(y, u));
      if (cfg.noise) rhs = axpy(rhs, cfg.dt, apply_g(*cfg.noise, u, control.at(n)));
    }
    y = apply_heat_resolvent(rhs, dt_nu);
    rec.push(n + 1, y);
  }
  return rec.finish();
}

}  // namespace lans
