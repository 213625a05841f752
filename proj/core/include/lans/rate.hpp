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

#include <limits>
#include <string>
#include <vector>

#include "lans/adjoint.hpp"

namespace lans {

struct RateProblem {
  explicit RateProblem(RateTarget t) : target(std::move(t)) {}

  RateTarget target;
  std::vector<double> beta_schedule{1e1, 1e2, 1e3, 1e4};
  double tolerance = 1e-6;
  int max_iterations = 400;  // per penalty stage
  /// Largest N * J for which delta = 1 responses are assembled by forward
  /// solves of unit controls; above it the adjoint sweep is used alone.
  int assembly_limit = 4096;
  int workers = 1;

  void validate() const;
};

struct RateStage {
  double beta = 0.0;
  double cost = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct RateResult {
  double cost = std::numeric_limits<double>::infinity();
  Control argmin;
  double residual = 0.0;
  bool converged = false;
  std::string method;  // "gramian", "normal-equations" or "penalty"
  /// Observable problems with delta = 1: the discrete Gramian sum_{n,j} r_{n,j}^2 / dt
  /// and the largest relative gap between assembled and adjoint responses
  /// (NaN when only one of them was computed).
  double gramian = std::numeric_limits<double>::quiet_NaN();
  double response_gap = std::numeric_limits<double>::quiet_NaN();
  std::vector<RateStage> stages;
};

/// I_delta(target) = inf { (1/2) int ||h||^2 : skeleton output hits the target },
/// delta = cfg.scaling.delta. delta = 1 is solved exactly (linear-quadratic);
/// delta = 0 by the penalty schedule, reporting the Richardson-extrapolated
/// cost (an upper-bound estimate, the problem being nonconvex). A target that
/// cannot be reached gives cost = +inf and converged = false.
RateResult rate_function(const RateProblem& problem, const SpectralField& xi, const SolverConfig& cfg,
                         const ReferenceFlow* reference);

/// Sensitivities of (y(T), g) to unit controls, delta = 1, by forward solves.
std::vector<double> observable_response_assembled(const SpectralField& g, const SolverConfig& cfg,
                                                  const ReferenceFlow& reference, int workers);

}  // namespace lans
