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

#include <iosfwd>
#include <string>

#include "lans/spectral_field.hpp"

namespace lans {

/// Text table, one row per retained wavevector:
///   k1,k2,re_u1,im_u1,re_u2,im_u2
/// preceded by a header that records the lattice size n. Values are written
/// with 17 significant digits, so a read-back is bit-exact.
void write_field_table(std::ostream& out, const SpectralField& u);
void write_field_table(const std::string& path, const SpectralField& u);

/// Parses a field table. Throws std::runtime_error on malformed input, on
/// wavevectors outside the retained set and on coefficients that break the
/// Hermitian/divergence-free invariants beyond 1e-12.
SpectralField read_field_table(std::istream& in);
SpectralField read_field_table(const std::string& path);

}  // namespace lans
