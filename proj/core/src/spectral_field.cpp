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

#include "lans/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lans {

SpectralField::SpectralField(LatticePtr lattice)
    : lattice_(std::move(lattice)), coeffs_(lattice_->mode_count(), Vec2c{}) {}

SpectralField::SpectralField(LatticePtr lattice, std::vector<Vec2c> coeffs)
    : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != lattice_->mode_count()) {
    throw std::invalid_argument("coefficient count does not match lattice");
  }
}

Vec2c SpectralField::at(Wavevector k) const {
  auto i = lattice_->index_of(k);
  return i ? coeffs_[*i] : Vec2c{};
}

void require_same_lattice(const SpectralField& a, const SpectralField& b) {
  if (!a.same_lattice(b)) {
    throw std::invalid_argument("lattice mismatch: n=" + std::to_string(a.lattice().n()) +
                                " vs n=" + std::to_string(b.lattice().n()));
  }
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) { return axpy(a, 1.0, b); }

SpectralField operator-(const SpectralField& a, const SpectralField& b) { return axpy(a, -1.0, b); }

SpectralField operator*(double s, const SpectralField& a) {
  std::vector<Vec2c> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {s * a.coeffs_[i][0], s * a.coeffs_[i][1]};
  return SpectralField(a.lattice_, std::move(out));
}

SpectralField operator-(const SpectralField& a) { return -1.0 * a; }

SpectralField axpy(const SpectralField& a, double s, const SpectralField& b) {
  require_same_lattice(a, b);
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<Vec2c> out(ca.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = {ca[i][0] + s * cb[i][0], ca[i][1] + s * cb[i][1]};
  }
  return SpectralField(a.lattice_ptr(), std::move(out));
}

SpectralField project_leray(const VectorSpectrum& f) {
  const auto& lat = *f.lattice;
  std::vector<Vec2c> out(lat.mode_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& m = lat.mode(i);
    const double k1 = m.k.k1, k2 = m.k.k2;
    const Complex kf = (k1 * f.coeffs[i][0] + k2 * f.coeffs[i][1]) / m.eigenvalue;
    out[i] = {f.coeffs[i][0] - k1 * kf, f.coeffs[i][1] - k2 * kf};
  }
  return SpectralField(f.lattice, std::move(out));
}

namespace {

template <class Fn>
SpectralField scale_by_eigenvalue(const SpectralField& u, Fn&& factor) {
  const auto& lat = u.lattice();
  const auto c = u.coeffs();
  std::vector<Vec2c> out(c.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f = factor(lat.mode(i).eigenvalue);
    out[i] = {f * c[i][0], f * c[i][1]};
  }
  return SpectralField(u.lattice_ptr(), std::move(out));
}

template <class Fn>
double weighted_sum(const SpectralField& u, Fn&& weight) {
  const auto& lat = u.lattice();
  const auto c = u.coeffs();
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    acc += weight(lat.mode(i).eigenvalue) * (std::norm(c[i][0]) + std::norm(c[i][1]));
  }
  return acc;
}

}  // namespace

SpectralField apply_stokes(const SpectralField& u, double s) {
  if (s == 0.0) return u;
  return scale_by_eigenvalue(u, [s](double lam) { return std::pow(lam, s); });
}

SpectralField apply_j_alpha(const SpectralField& u, double alpha) {
  const double a2 = alpha * alpha;
  return scale_by_eigenvalue(u, [a2](double lam) { return 1.0 / (1.0 + a2 * lam); });
}

SpectralField apply_j_alpha_inverse(const SpectralField& u, double alpha) {
  const double a2 = alpha * alpha;
  return scale_by_eigenvalue(u, [a2](double lam) { return 1.0 + a2 * lam; });
}

SpectralField apply_heat_resolvent(const SpectralField& u, double dt_nu) {
  return scale_by_eigenvalue(u, [dt_nu](double lam) { return 1.0 / (1.0 + dt_nu * lam); });
}

double inner_h(const SpectralField& u, const SpectralField& v) {
  require_same_lattice(u, v);
  const auto a = u.coeffs();
  const auto b = v.coeffs();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += (a[i][0] * std::conj(b[i][0])).real() + (a[i][1] * std::conj(b[i][1])).real();
  }
  return acc;
}

double norm_h(const SpectralField& u) {
  return std::sqrt(weighted_sum(u, [](double) { return 1.0; }));
}

double norm_v(const SpectralField& u) {
  return std::sqrt(weighted_sum(u, [](double lam) { return lam; }));
}

double norm_a(const SpectralField& u) {
  return std::sqrt(weighted_sum(u, [](double lam) { return lam * lam; }));
}

double norm_alpha(const SpectralField& u, double alpha) {
  const double a2 = alpha * alpha;
  return std::sqrt(weighted_sum(u, [a2](double lam) { return 1.0 + a2 * lam * lam; }));
}

double norm_stokes_power(const SpectralField& u, double s) {
  return std::sqrt(weighted_sum(u, [s](double lam) { return std::pow(lam, 2.0 * s); }));
}

double invariant_defect(const SpectralField& u) {
  const auto& lat = u.lattice();
  const auto c = u.coeffs();
  double scale = 0.0;
  for (const auto& v : c) scale = std::max({scale, std::abs(v[0]), std::abs(v[1])});
  if (scale == 0.0) return 0.0;
  double defect = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& m = lat.mode(i);
    const auto& cc = c[m.conjugate];
    defect = std::max(defect, std::abs(c[i][0] - std::conj(cc[0])));
    defect = std::max(defect, std::abs(c[i][1] - std::conj(cc[1])));
    const Complex div = static_cast<double>(m.k.k1) * c[i][0] + static_cast<double>(m.k.k2) * c[i][1];
    defect = std::max(defect, std::abs(div) / std::sqrt(m.eigenvalue));
  }
  return defect / scale;
}

SpectralField single_mode(const LatticePtr& lattice, Wavevector k, Phase phase) {
  auto pos = lattice->index_of(k);
  if (!pos) {
    throw std::invalid_argument("mode (" + std::to_string(k.k1) + "," + std::to_string(k.k2) +
                                ") is not retained on lattice n=" + std::to_string(lattice->n()));
  }
  const double kn = std::sqrt(lattice->eigenvalue(k));
  // sqrt(2) cos(k.x) -> coefficient sqrt(2)/2 at +-k; the sine picks up -i / +i.
  const double amp = std::sqrt(2.0) / 2.0;
  const Complex plus = phase == Phase::cosine ? Complex(amp, 0.0) : Complex(0.0, -amp);
  const double d1 = -k.k2 / kn;
  const double d2 = k.k1 / kn;
  std::vector<Vec2c> coeffs(lattice->mode_count(), Vec2c{});
  const auto neg = lattice->mode(*pos).conjugate;
  coeffs[*pos] = {d1 * plus, d2 * plus};
  coeffs[neg] = {d1 * std::conj(plus), d2 * std::conj(plus)};
  return SpectralField(lattice, std::move(coeffs));
}

}  // namespace lans
