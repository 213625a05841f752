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

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace lans {

/// Integer wavevector on the 2D torus [0, 2pi]^2.
struct Wavevector {
  int k1 = 0;
  int k2 = 0;

  friend bool operator==(const Wavevector&, const Wavevector&) = default;
};

/// Retained Fourier mode: a wavevector inside the dealiasing mask,
/// together with its Stokes eigenvalue |k|^2.
struct Mode {
  Wavevector k;
  double eigenvalue = 0.0;
  std::size_t conjugate = 0;  // position of -k in the retained list
};

/// Truncated wavevector lattice for an n x n pseudo-spectral discretisation.
///
/// Only wavevectors with max(|k1|, |k2|) <= n/3 (two-thirds rule) are
/// retained and k = (0, 0) is always excluded, so every stored coefficient
/// has eigenvalue >= 1. Products are formed on a physical grid of size
/// `grid_size()`, chosen so that quadratic products of retained modes never
/// alias back into the retained set.
class TorusLattice {
 public:
  /// Throws std::invalid_argument unless n is even and n >= 4.
  explicit TorusLattice(int n);

  int n() const { return n_; }
  int max_wavenumber() const { return kmax_; }
  int grid_size() const { return grid_; }

  std::size_t mode_count() const { return modes_.size(); }
  const Mode& mode(std::size_t i) const { return modes_[i]; }
  const std::vector<Mode>& modes() const { return modes_; }

  /// Position of k in the retained list, if retained.
  std::optional<std::size_t> index_of(Wavevector k) const;

  /// Two-thirds rule: true iff max(|k1|,|k2|) <= n/3. Holds for k = 0 too;
  /// zero-mean is enforced separately.
  bool dealias_mask(Wavevector k) const;

  /// |k|^2. Defined for any k inside the n x n lattice.
  double eigenvalue(Wavevector k) const;

  friend bool operator==(const TorusLattice& a, const TorusLattice& b) { return a.n_ == b.n_; }

 private:
  int n_;
  int kmax_;
  int grid_;
  std::vector<Mode> modes_;
  std::vector<long> lookup_;  // (2*kmax+1)^2 table, -1 when not retained
};

using LatticePtr = std::shared_ptr<const TorusLattice>;

/// Shared, cached lattice instance for a given n.
LatticePtr make_lattice(int n);

}  // namespace lans
