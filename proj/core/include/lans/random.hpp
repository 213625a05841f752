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

#include <cstdint>
#include <random>

#include "lans/spectral_field.hpp"

namespace lans {

using Engine = std::mt19937_64;

/// SplitMix64 finaliser; used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the independent stream for one work item (trajectory, trial...).
/// Depends only on (master, index), never on scheduling.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

inline Engine make_engine(std::uint64_t master, std::uint64_t index) {
  return Engine(stream_seed(master, index));
}

/// Random admissible field: i.i.d. complex Gaussians with standard deviation
/// |k|^-decay on each retained mode, symmetrised, Leray-projected.
/// With normalize = true the result has unit H-norm.
SpectralField random_field(const LatticePtr& lattice, Engine& engine, double decay = 2.0,
                           bool normalize = true);

}  // namespace lans
