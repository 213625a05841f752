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
#include <complex>
#include <span>
#include <vector>

#include "lans/lattice.hpp"

namespace lans {

using Complex = std::complex<double>;
using Vec2c = std::array<Complex, 2>;

/// Unconstrained spectral vector field on the retained modes of a lattice.
/// Input to the Leray projection; no divergence-free requirement.
struct VectorSpectrum {
  LatticePtr lattice;
  std::vector<Vec2c> coeffs;  // one entry per retained mode

  explicit VectorSpectrum(LatticePtr l)
      : lattice(std::move(l)), coeffs(lattice->mode_count(), Vec2c{}) {}
};

/// Truncated Fourier representation of a real, zero-mean, divergence-free
/// velocity field. Coefficients live on the retained modes only, so the
/// dealiasing and zero-mean invariants hold by construction.
///
/// Values are immutable once built; every operation returns a new field.
class SpectralField {
 public:
  explicit SpectralField(LatticePtr lattice);
  SpectralField(LatticePtr lattice, std::vector<Vec2c> coeffs);

  const TorusLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }

  std::span<const Vec2c> coeffs() const { return coeffs_; }
  const Vec2c& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient at k, zero when k is not retained.
  Vec2c at(Wavevector k) const;

  bool same_lattice(const SpectralField& other) const { return *lattice_ == *other.lattice_; }

  friend SpectralField operator+(const SpectralField& a, const SpectralField& b);
  friend SpectralField operator-(const SpectralField& a, const SpectralField& b);
  friend SpectralField operator*(double s, const SpectralField& a);
  friend SpectralField operator-(const SpectralField& a);

 private:
  LatticePtr lattice_;
  std::vector<Vec2c> coeffs_;
};

/// a + s * b, the workhorse of the time steppers.
SpectralField axpy(const SpectralField& a, double s, const SpectralField& b);

/// Throws std::invalid_argument when the fields live on different lattices.
void require_same_lattice(const SpectralField& a, const SpectralField& b);

// --- projections and diagonal operators -----------------------------------

/// Helmholtz-Leray projection: f(k) - k (k . f(k)) / |k|^2 on every
/// retained mode.
SpectralField project_leray(const VectorSpectrum& f);

/// A^s u, with A the Stokes operator (eigenvalue |k|^2).
SpectralField apply_stokes(const SpectralField& u, double s);

/// J_alpha u = (I + alpha^2 A)^{-1} u.
SpectralField apply_j_alpha(const SpectralField& u, double alpha);

/// J_alpha^{-1} u = (I + alpha^2 A) u.
SpectralField apply_j_alpha_inverse(const SpectralField& u, double alpha);

/// (I + dt * nu * A)^{-1} u: the implicit Stokes step.
SpectralField apply_heat_resolvent(const SpectralField& u, double dt_nu);

// --- inner products and norms ----------------------------------------------
//
// All norms use the normalised measure dx / (2 pi)^2 on the torus, so that
// (u, v) = sum_k u(k) . conj(v(k)).

double inner_h(const SpectralField& u, const SpectralField& v);
double norm_h(const SpectralField& u);
/// |A^{1/2} u|, which equals |grad u| on the torus.
double norm_v(const SpectralField& u);
/// |A u|.
double norm_a(const SpectralField& u);
/// sqrt(|u|^2 + alpha^2 |A u|^2).
double norm_alpha(const SpectralField& u, double alpha);
/// |A^s u| for any real s.
double norm_stokes_power(const SpectralField& u, double s);

/// Largest violation of the SpectralField invariants (Hermitian symmetry,
/// incompressibility relative to |k||u(k)|), measured against the field's
/// own scale. Zero for an exactly admissible field.
double invariant_defect(const SpectralField& u);

/// Unit-norm real field supported on a single wavevector pair +-k:
/// sqrt(2) * (k_perp / |k|) * cos(k.x) or sin(k.x).
enum class Phase { cosine, sine };
SpectralField single_mode(const LatticePtr& lattice, Wavevector k, Phase phase);

}  // namespace lans
