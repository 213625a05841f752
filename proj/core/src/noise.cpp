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

#include "lans/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lans {

NoiseOperator NoiseOperator::additive(std::vector<double> sigma, std::vector<SpectralField> outputs) {
  NoiseOperator g;
  g.variant_ = NoiseVariant::additive;
  g.sigma_ = std::move(sigma);
  g.outputs_ = std::move(outputs);
  g.validate();
  return g;
}

NoiseOperator NoiseOperator::multiplicative(std::vector<double> sigma, std::vector<SpectralField> outputs,
                                            std::vector<SpectralField> probes, std::vector<double> offsets) {
  NoiseOperator g;
  g.variant_ = NoiseVariant::multiplicative;
  g.sigma_ = std::move(sigma);
  g.outputs_ = std::move(outputs);
  g.probes_ = std::move(probes);
  g.offsets_ = std::move(offsets);
  g.validate();
  return g;
}

NoiseOperator NoiseOperator::from_modes(const LatticePtr& lattice, NoiseVariant variant, std::vector<double> sigma,
                                        const std::vector<ModeSpec>& outputs, const std::vector<ModeSpec>& probes,
                                        std::vector<double> offsets) {
  std::vector<SpectralField> phi;
  for (const auto& m : outputs) phi.push_back(single_mode(lattice, m.k, m.phase));
  if (variant == NoiseVariant::additive) return additive(std::move(sigma), std::move(phi));
  std::vector<SpectralField> psi;
  for (const auto& m : probes) psi.push_back(single_mode(lattice, m.k, m.phase));
  return multiplicative(std::move(sigma), std::move(phi), std::move(psi), std::move(offsets));
}

void NoiseOperator::validate() const {
  if (sigma_.empty()) throw std::invalid_argument("noise rank must be >= 1");
  if (outputs_.size() != sigma_.size()) throw std::invalid_argument("need one output field per noise coordinate");
  for (double s : sigma_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("noise amplitudes must be positive");
  }
  for (const auto& phi : outputs_) {
    require_same_lattice(phi, outputs_.front());
    if (std::abs(norm_h(phi) - 1.0) > 1e-12) throw std::invalid_argument("noise outputs must have unit H-norm");
    if (invariant_defect(phi) > 1e-12) throw std::invalid_argument("noise outputs must be real and divergence-free");
  }
  if (variant_ == NoiseVariant::multiplicative) {
    if (probes_.size() != sigma_.size() || offsets_.size() != sigma_.size()) {
      throw std::invalid_argument("multiplicative noise needs one probe and one offset per coordinate");
    }
    for (const auto& psi : probes_) {
      require_same_lattice(psi, outputs_.front());
      if (std::abs(norm_h(psi) - 1.0) > 1e-12) throw std::invalid_argument("noise probes must have unit H-norm");
    }
  }
}

double NoiseOperator::gain(const SpectralField& u, int j) const {
  if (variant_ == NoiseVariant::additive) return sigma_[j];
  return sigma_[j] * (inner_h(u, probes_[j]) + offsets_[j]);
}

double NoiseOperator::lipschitz_constant() const {
  double c = 0.0;
  for (int j = 0; j < rank(); ++j) c += sigma_[j] * std::max(1.0, norm_v(outputs_[j]));
  return c;
}

double NoiseOperator::growth_constant() const {
  double cmax = 1.0;
  for (double c : offsets_) cmax = std::max(cmax, std::abs(c));
  return lipschitz_constant() * cmax;
}

SpectralField apply_g(const NoiseOperator& g, const SpectralField& u, std::span<const double> coords) {
  if (static_cast<int>(coords.size()) != g.rank()) {
    throw std::invalid_argument("noise coordinates: expected " + std::to_string(g.rank()) + ", got " +
                                std::to_string(coords.size()));
  }
  require_same_lattice(u, g.output(0));
  std::vector<Vec2c> out(u.size(), Vec2c{});
  for (int j = 0; j < g.rank(); ++j) {
    const double s = g.gain(u, j) * coords[j];
    if (s == 0.0) continue;
    const auto phi = g.output(j).coeffs();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i][0] += s * phi[i][0];
      out[i][1] += s * phi[i][1];
    }
  }
  return SpectralField(u.lattice_ptr(), std::move(out));
}

SpectralField apply_g_alpha(const NoiseOperator& g, const SpectralField& u, std::span<const double> coords,
                            double alpha) {
  return apply_j_alpha(apply_g(g, u, coords), alpha);
}

HsNorms hs_norms(const NoiseOperator& g, const SpectralField& u) {
  double h2 = 0.0, v2 = 0.0;
  for (int j = 0; j < g.rank(); ++j) {
    const double s = g.gain(u, j);
    h2 += s * s * std::pow(norm_h(g.output(j)), 2);
    v2 += s * s * std::pow(norm_v(g.output(j)), 2);
  }
  return {std::sqrt(h2), std::sqrt(v2)};
}

HsNorms hs_difference_norms(const NoiseOperator& g, const SpectralField& u, const SpectralField& v) {
  double h2 = 0.0, v2 = 0.0;
  for (int j = 0; j < g.rank(); ++j) {
    const double s = g.gain(u, j) - g.gain(v, j);
    h2 += s * s * std::pow(norm_h(g.output(j)), 2);
    v2 += s * s * std::pow(norm_v(g.output(j)), 2);
  }
  return {std::sqrt(h2), std::sqrt(v2)};
}

}  // namespace lans
