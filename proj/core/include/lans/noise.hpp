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

#include <span>
#include <vector>

#include "lans/spectral_field.hpp"

namespace lans {

enum class NoiseVariant { additive, multiplicative };

/// Placement of a single-wavevector unit field (see single_mode).
struct ModeSpec {
  Wavevector k;
  Phase phase = Phase::cosine;
};

/// Finite-rank noise coefficient G acting on coordinates h in R^J:
///
///   additive:        G(u) h = sum_j sigma_j h_j phi_j
///   multiplicative:  G(u) h = sum_j sigma_j ((u, psi_j) + c_j) h_j phi_j
///
/// Output directions phi_j are fixed smooth fields, so G is globally
/// Lipschitz and of linear growth into both H and V with the constructive
/// constant returned by lipschitz_constant().
class NoiseOperator {
 public:
  static NoiseOperator additive(std::vector<double> sigma, std::vector<SpectralField> outputs);
  static NoiseOperator multiplicative(std::vector<double> sigma, std::vector<SpectralField> outputs,
                                      std::vector<SpectralField> probes, std::vector<double> offsets);
  /// Builds the output (and probe) fields from single-mode placements.
  static NoiseOperator from_modes(const LatticePtr& lattice, NoiseVariant variant, std::vector<double> sigma,
                                  const std::vector<ModeSpec>& outputs, const std::vector<ModeSpec>& probes = {},
                                  std::vector<double> offsets = {});

  NoiseVariant variant() const { return variant_; }
  int rank() const { return static_cast<int>(sigma_.size()); }
  double sigma(int j) const { return sigma_[j]; }
  const SpectralField& output(int j) const { return outputs_[j]; }
  const SpectralField& probe(int j) const { return probes_[j]; }
  double offset(int j) const { return offsets_[j]; }
  const LatticePtr& lattice() const { return outputs_.front().lattice_ptr(); }

  /// sigma_j times the state-dependent factor ((u, psi_j) + c_j), or sigma_j.
  double gain(const SpectralField& u, int j) const;

  /// C = sum_j sigma_j max(1, ||phi_j||_V): Lipschitz constant of G into
  /// HS(K,H) and HS(K,V).
  double lipschitz_constant() const;
  /// Linear-growth constant, C * max(1, max_j |c_j|).
  double growth_constant() const;

 private:
  NoiseOperator() = default;
  void validate() const;

  NoiseVariant variant_ = NoiseVariant::additive;
  std::vector<double> sigma_;
  std::vector<SpectralField> outputs_;
  std::vector<SpectralField> probes_;
  std::vector<double> offsets_;
};

/// G(u) coords. Throws std::invalid_argument on rank mismatch.
SpectralField apply_g(const NoiseOperator& g, const SpectralField& u, std::span<const double> coords);

/// J_alpha G(u) coords.
SpectralField apply_g_alpha(const NoiseOperator& g, const SpectralField& u, std::span<const double> coords,
                            double alpha);

/// Hilbert-Schmidt norms of G(u) as an operator K -> H and K -> V.
struct HsNorms {
  double h = 0.0;
  double v = 0.0;
};
HsNorms hs_norms(const NoiseOperator& g, const SpectralField& u);

/// Hilbert-Schmidt norms of G(u) - G(v).
HsNorms hs_difference_norms(const NoiseOperator& g, const SpectralField& u, const SpectralField& v);

}  // namespace lans
