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

#include "lans/random.hpp"

#include <cmath>

namespace lans {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

SpectralField random_field(const LatticePtr& lattice, Engine& engine, double decay, bool normalize) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorSpectrum f(lattice);
  for (std::size_t i = 0; i < lattice->mode_count(); ++i) {
    const auto& m = lattice->mode(i);
    // Draw on one half-plane, mirror onto the other.
    const bool upper = m.k.k1 > 0 || (m.k.k1 == 0 && m.k.k2 > 0);
    if (!upper) continue;
    const double sd = std::pow(m.eigenvalue, -0.5 * decay);
    Vec2c c;
    for (auto& comp : c) {
      const double re = normal(engine);
      const double im = normal(engine);
      comp = Complex(re, im) * sd;
    }
    f.coeffs[i] = c;
    f.coeffs[m.conjugate] = {std::conj(c[0]), std::conj(c[1])};
  }
  auto u = project_leray(f);
  if (!normalize) return u;
  const double nrm = norm_h(u);
  return nrm > 0.0 ? (1.0 / nrm) * u : u;
}

}  // namespace lans
