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

#include <variant>
#include <vector>

#include "lans/paths.hpp"
#include "lans/solver.hpp"

namespace lans {

/// Hit the whole terminal field: y(T) = x.
struct TerminalTarget {
  SpectralField x;
};

/// Hit a linear observable: (y(T), g) = level.
struct ObservableTarget {
  SpectralField g;
  double level = 0.0;
};

using RateTarget = std::variant<TerminalTarget, ObservableTarget>;

struct PenaltyValue {
  double value = 0.0;     // (1/2) int ||h||^2 + (beta/2) residual^2
  double cost = 0.0;      // (1/2) int ||h||^2
  double residual = 0.0;  // |y(T) - x| or |(y(T), g) - level|
  Control gradient;       // L^2(0,T;K) gradient, i.e. Euclidean gradient / dt
};

/// Value and gradient of the penalised objective through the discrete
/// skeleton (delta = cfg.scaling.delta), by reverse accumulation over the
/// stored forward states. The gradient of the pure cost term at h is h.
/// Throws NumericAbort on non-finite values.
PenaltyValue skeleton_gradient(const RateTarget& target, double beta, const Control& h, const SpectralField& xi,
                               const SolverConfig& cfg, const ReferenceFlow* reference);

/// Sensitivities r_{n,j} of (y(T), g) to a unit value of h_j on step n, for
/// the delta = 1 skeleton (linear in h), from one backward sweep.
std::vector<double> observable_response_adjoint(const SpectralField& g, const SolverConfig& cfg,
                                                const ReferenceFlow& reference);

}  // namespace lans
