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

#include <string>
#include <vector>

#include "lans/random.hpp"

namespace lans {

/// Lattice maxima of the two smoothing ratios controlled by J_alpha, plus a
/// sampled check of <phi - J_alpha phi, w> <= (alpha/2) |phi| |A^{1/2} w|.
struct OperatorBoundsReport {
  double alpha = 0.0;
  double max_smoothing_ratio = 0.0;  // max_k alpha^2 l / (1 + alpha^2 l), must be <= 1
  double max_half_power_ratio = 0.0; // max_k alpha sqrt(l) / (1 + alpha^2 l), must be <= 1/2
  double worst_commutator_ratio = 0.0;  // max over samples of lhs / rhs, must be <= 1
  int trials = 0;

  bool ok() const {
    return max_smoothing_ratio <= 1.0 && max_half_power_ratio <= 0.5 && worst_commutator_ratio <= 1.0;
  }
};

OperatorBoundsReport verify_operator_bounds(const LatticePtr& lattice, double alpha, int trials, Engine& engine);

/// One exact identity of the bilinear forms, evaluated on random fields.
struct IdentityCheck {
  std::string name;
  double worst_relative = 0.0;
  double tolerance = 0.0;
  bool pass() const { return worst_relative <= tolerance; }
};

/// Cancellation, skew-symmetry and Btilde/B relations, the J_alpha-weighted
/// cancellation of Btilde_alpha, Leray idempotency and Parseval.
std::vector<IdentityCheck> check_bilinear_identities(const LatticePtr& lattice, int trials, double alpha,
                                                     Engine& engine, double tolerance = 1e-10);

/// Functional-form check of a trilinear estimate |<X(u,v),w>| <= c * rhs(u,v,w).
/// The constant is unknown a priori: it is calibrated as the largest observed
/// ratio on a coarse lattice and then must hold with 2c on a finer one.
struct EstimateCheck {
  std::string name;
  double calibrated_constant = 0.0;
  double worst_ratio = 0.0;  // on the check lattice
  bool pass() const { return worst_ratio <= 2.0 * calibrated_constant; }
};

std::vector<EstimateCheck> check_trilinear_estimates(const LatticePtr& calibration_lattice, int calibration_trials,
                                                     const LatticePtr& check_lattice, int check_trials,
                                                     Engine& engine);

}  // namespace lans
