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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lans/noise.hpp"
#include "lans/paths.hpp"
#include "lans/scaling.hpp"
#include "lans/spectral_field.hpp"

namespace lans {

struct SolverConfig {
  LatticePtr lattice;
  double dt = 1e-3;
  double horizon = 1.0;
  double alpha = 0.0;
  ScalingLaw scaling;
  std::optional<NoiseOperator> noise;
  double viscosity = 1.0;
  int record_stride = 1;
  bool keep_snapshots = false;

  /// Number of steps N with N dt = T. Throws std::invalid_argument when T is
  /// not an integer multiple of dt (relative slack 1e-9) or inputs are invalid.
  int steps() const;
  void validate() const;
};

struct TrajectoryPoint {
  int step = 0;
  double time = 0.0;
  double norm_h = 0.0;
  double norm_v = 0.0;
  double norm_a = 0.0;
  double norm_alpha = 0.0;
  double dissipation = 0.0;  // int_0^t ||y||_V^2 ds, right-endpoint rule
  std::optional<SpectralField> snapshot;
};

struct TrajectoryRecord {
  double alpha = 0.0;
  std::vector<TrajectoryPoint> points;
};

/// States u_0 .. u_N of the deterministic NSE on the solver grid.
struct ReferenceFlow {
  double dt = 0.0;
  std::vector<SpectralField> states;
};

/// Called with (n, y_n) for every n = 0 .. N.
using StepObserver = std::function<void(int, const SpectralField&)>;

/// Raised when the state becomes non-finite or exceeds 1e6 times its
/// initial scale. Carries the trajectory up to the last finite record.
class NumericAbort : public std::runtime_error {
 public:
  NumericAbort(const std::string& what, TrajectoryRecord partial, int step)
      : std::runtime_error(what), partial_(std::move(partial)), step_(step) {}
  const TrajectoryRecord& partial() const { return partial_; }
  int step() const { return step_; }

 private:
  TrajectoryRecord partial_;
  int step_;
};

/// u_{n+1} = (I + dt nu A)^{-1} (u_n - dt B(u_n, u_n)).
TrajectoryRecord solve_nse(const SpectralField& xi, const SolverConfig& cfg, const StepObserver& observer = {});

/// Runs solve_nse and keeps every state.
ReferenceFlow reference_flow(const SpectralField& xi, const SolverConfig& cfg);

/// u_{n+1} = (I + dt nu A)^{-1} [u_n - dt Btilde_alpha(u_n, v_n) + sqrt(alpha) G_alpha(u_n) dW_n],
/// v_n = (I + alpha^2 A) u_n. Without wiener (or without noise) the noise term is dropped.
TrajectoryRecord solve_lans(const SpectralField& xi, const SolverConfig& cfg, const WienerPath* wiener,
                            const StepObserver& observer = {});

/// Stochastic controlled system for y^{alpha,delta}, delta = cfg.scaling.delta,
/// started from (1 - delta) xi. For delta = 1, reference must hold the NSE
/// states started from xi on the same grid. Null control means h = 0; null
/// wiener means no noise term.
TrajectoryRecord solve_unified(const SpectralField& xi, const SolverConfig& cfg, const Control* control,
                               const WienerPath* wiener, const ReferenceFlow* reference,
                               const StepObserver& observer = {});

/// Deterministic controlled skeleton, delta = cfg.scaling.delta:
/// y_{n+1} = (I + dt nu A)^{-1} [y_n - dt((1-delta) B(y,y) + delta (B(u,y) + B(y,u)))
///                                + dt G(delta u + (1-delta) y) h_n],  y_0 = (1 - delta) xi.
TrajectoryRecord solve_skeleton(const SpectralField& xi, const SolverConfig& cfg, const Control& control,
                                const ReferenceFlow* reference, const StepObserver& observer = {});

/// Scalars of a single state as they appear in a TrajectoryPoint.
TrajectoryPoint measure(const SpectralField& y, double alpha, int step, double time, double dissipation,
                        bool keep_snapshot);

}  // namespace lans
