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

#include <array>
#include <vector>

#include "lans/spectral_field.hpp"

namespace lans {

/// B(u, v) = Pi(u . grad v), formed pseudo-spectrally: both factors are
/// evaluated on the physical grid, multiplied, transformed back, truncated
/// to the retained modes and Leray-projected.
SpectralField bilinear_b(const SpectralField& u, const SpectralField& v);

/// Btilde(u, v) = Pi(u . grad v + sum_j v_j grad u_j).
SpectralField bilinear_btilde(const SpectralField& u, const SpectralField& v);

/// Btilde_alpha(u, v) = J_alpha Btilde(u, v).
SpectralField btilde_alpha(const SpectralField& u, const SpectralField& v, double alpha);

/// Pi(sum_j q_j grad y_j); note Btilde(y, q) = B(y, q) + gradient_contraction(y, q).
/// Appears in the transpose of the linearised advection operator.
SpectralField gradient_contraction(const SpectralField& y, const SpectralField& q);

/// Velocity samples on the lattice's physical grid, row-major in (x1, x2),
/// with x_i = 2 pi j / grid_size().
std::vector<std::array<double, 2>> to_physical(const SpectralField& u);

/// sqrt(mean over grid points of |u(x)|^2); equals norm_h by Parseval.
double physical_l2_norm(const SpectralField& u);

}  // namespace lans
