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

#include "lans/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lans {

TorusLattice::TorusLattice(int n) : n_(n) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("lattice size must be even and >= 4, got " + std::to_string(n));
  }
  kmax_ = n / 3;
  // Retained |k| <= K; products reach 2K and alias to 2K - M, which stays
  // outside the retained band as long as M > 3K.
  grid_ = (n > 3 * kmax_) ? n : n + 2;

  const int width = 2 * kmax_ + 1;
  lookup_.assign(static_cast<std::size_t>(width * width), -1);
  for (int k1 = -kmax_; k1 <= kmax_; ++k1) {
    for (int k2 = -kmax_; k2 <= kmax_; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      lookup_[static_cast<std::size_t>((k1 + kmax_) * width + (k2 + kmax_))] =
          static_cast<long>(modes_.size());
      modes_.push_back(Mode{{k1, k2}, static_cast<double>(k1 * k1 + k2 * k2), 0});
    }
  }
  for (auto& m : modes_) m.conjugate = *index_of({-m.k.k1, -m.k.k2});
}

std::optional<std::size_t> TorusLattice::index_of(Wavevector k) const {
  if (std::abs(k.k1) > kmax_ || std::abs(k.k2) > kmax_) return std::nullopt;
  const int width = 2 * kmax_ + 1;
  const long pos = lookup_[static_cast<std::size_t>((k.k1 + kmax_) * width + (k.k2 + kmax_))];
  if (pos < 0) return std::nullopt;
  return static_cast<std::size_t>(pos);
}

bool TorusLattice::dealias_mask(Wavevector k) const {
  // 3*max|k| <= n is the exact integer form of max|k| <= n/3.
  return 3 * std::max(std::abs(k.k1), std::abs(k.k2)) <= n_;
}

double TorusLattice::eigenvalue(Wavevector k) const {
  if (std::abs(k.k1) > n_ / 2 || std::abs(k.k2) > n_ / 2) {
    throw std::out_of_range("wavevector outside lattice");
  }
  return static_cast<double>(k.k1 * k.k1 + k.k2 * k.k2);
}

LatticePtr make_lattice(int n) {
  static std::mutex mutex;
  static std::map<int, LatticePtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto lattice = std::make_shared<const TorusLattice>(n);
  cache.emplace(n, lattice);
  return lattice;
}

}  // namespace lans
