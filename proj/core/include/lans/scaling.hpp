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

namespace lans {

/// lambda(alpha) = alpha^-kappa with kappa in (0, 1/2), and the regime flag
/// delta: 0 for large deviations, 1 for moderate deviations.
struct ScalingLaw {
  double kappa = 0.25;
  int delta = 0;

  /// Throws std::invalid_argument outside kappa in (0, 1/2), delta in {0, 1}.
  void validate() const;

  double lambda(double alpha) const;
  /// 1 when delta = 0, sqrt(alpha) lambda(alpha) when delta = 1.
  double lambda_delta(double alpha) const;
};

/// alpha^-1 lambda_delta(alpha)^2: 1/alpha for delta = 0, lambda^2 for delta = 1.
double ldp_speed(const ScalingLaw& scaling, double alpha);

}  // namespace lans
