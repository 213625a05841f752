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

#include "lans/bilinear.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <span>

namespace lans {
namespace {

// FFTW's planner is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

/// Per-thread physical-grid workspace for one lattice size. Two real fields
/// travel through each complex transform as re + i im.
class PhysicalTransform {
 public:
  explicit PhysicalTransform(const TorusLattice& lattice)
      : grid_(lattice.grid_size()),
        points_(static_cast<std::size_t>(grid_) * static_cast<std::size_t>(grid_)),
        buffer_(fftw_alloc_complex(points_)) {
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_2d(grid_, grid_, buffer_.get(), buffer_.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_2d(grid_, grid_, buffer_.get(), buffer_.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
    slots_.reserve(lattice.mode_count());
    for (const auto& m : lattice.modes()) {
      const int i1 = (m.k.k1 % grid_ + grid_) % grid_;
      const int i2 = (m.k.k2 % grid_ + grid_) % grid_;
      slots_.push_back(static_cast<std::size_t>(i1) * static_cast<std::size_t>(grid_) +
                       static_cast<std::size_t>(i2));
      conjugates_.push_back(m.conjugate);
    }
  }

  ~PhysicalTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  PhysicalTransform(const PhysicalTransform&) = delete;
  PhysicalTransform& operator=(const PhysicalTransform&) = delete;

  std::size_t points() const { return points_; }

  void to_physical(std::span<const Complex> a_hat, std::span<const Complex> b_hat, std::span<double> a,
                   std::span<double> b) {
    auto* buf = buffer_.get();
    for (std::size_t x = 0; x < points_; ++x) buf[x][0] = buf[x][1] = 0.0;
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const Complex c = a_hat[i] + Complex(0.0, 1.0) * b_hat[i];
      buf[slots_[i]][0] = c.real();
      buf[slots_[i]][1] = c.imag();
    }
    fftw_execute(backward_);
    for (std::size_t x = 0; x < points_; ++x) {
      a[x] = buf[x][0];
      b[x] = buf[x][1];
    }
  }

  void to_spectral(std::span<const double> a, std::span<const double> b, std::span<Complex> a_hat,
                   std::span<Complex> b_hat) {
    auto* buf = buffer_.get();
    for (std::size_t x = 0; x < points_; ++x) {
      buf[x][0] = a[x];
      buf[x][1] = b[x];
    }
    fftw_execute(forward_);
    const double scale = 1.0 / static_cast<double>(points_);
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const Complex f(buf[slots_[i]][0] * scale, buf[slots_[i]][1] * scale);
      const auto& g = buf[slots_[conjugates_[i]]];
      const Complex fc(g[0] * scale, -g[1] * scale);
      a_hat[i] = 0.5 * (f + fc);
      b_hat[i] = Complex(0.0, -0.5) * (f - fc);
    }
  }

 private:
  int grid_;
  std::size_t points_;
  FftwBuffer buffer_;
  fftw_plan forward_{};
  fftw_plan backward_{};
  std::vector<std::size_t> slots_;
  std::vector<std::size_t> conjugates_;
};

PhysicalTransform& transform_for(const TorusLattice& lattice) {
  thread_local std::map<int, std::unique_ptr<PhysicalTransform>> cache;
  auto& slot = cache[lattice.n()];
  if (!slot) slot = std::make_unique<PhysicalTransform>(lattice);
  return *slot;
}

/// Physical-space samples of a field and, on demand, its gradient.
struct PhysicalField {
  std::array<std::vector<double>, 2> value;
  // grad[j][l] = d_l u_j
  std::array<std::array<std::vector<double>, 2>, 2> grad;
};

std::vector<Complex> component(const SpectralField& u, int j) {
  std::vector<Complex> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[i][j];
  return out;
}

std::vector<Complex> derivative(const SpectralField& u, int j, int l) {
  const auto& lat = u.lattice();
  std::vector<Complex> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double k = l == 0 ? lat.mode(i).k.k1 : lat.mode(i).k.k2;
    out[i] = Complex(0.0, k) * u[i][j];
  }
  return out;
}

PhysicalField sample(const SpectralField& u, bool values, bool gradient) {
  auto& tr = transform_for(u.lattice());
  PhysicalField p;
  const auto np = tr.points();
  if (values) {
    p.value[0].resize(np);
    p.value[1].resize(np);
    tr.to_physical(component(u, 0), component(u, 1), p.value[0], p.value[1]);
  }
  if (gradient) {
    for (int j = 0; j < 2; ++j) {
      p.grad[j][0].resize(np);
      p.grad[j][1].resize(np);
      tr.to_physical(derivative(u, j, 0), derivative(u, j, 1), p.grad[j][0], p.grad[j][1]);
    }
  }
  return p;
}

SpectralField project_physical(const TorusLattice& lattice, const LatticePtr& ptr, std::span<const double> w1,
                               std::span<const double> w2) {
  auto& tr = transform_for(lattice);
  std::vector<Complex> c1(lattice.mode_count()), c2(lattice.mode_count());
  tr.to_spectral(w1, w2, c1, c2);
  VectorSpectrum f(ptr);
  for (std::size_t i = 0; i < c1.size(); ++i) f.coeffs[i] = {c1[i], c2[i]};
  return project_leray(f);
}

}  // namespace

SpectralField bilinear_b(const SpectralField& u, const SpectralField& v) {
  require_same_lattice(u, v);
  const auto pu = sample(u, true, false);
  const auto pv = sample(v, false, true);
  const auto np = pu.value[0].size();
  std::vector<double> w1(np), w2(np);
  for (std::size_t x = 0; x < np; ++x) {
    const double a1 = pu.value[0][x], a2 = pu.value[1][x];
    w1[x] = a1 * pv.grad[0][0][x] + a2 * pv.grad[0][1][x];
    w2[x] = a1 * pv.grad[1][0][x] + a2 * pv.grad[1][1][x];
  }
  return project_physical(u.lattice(), u.lattice_ptr(), w1, w2);
}

SpectralField bilinear_btilde(const SpectralField& u, const SpectralField& v) {
  require_same_lattice(u, v);
  const auto pu = sample(u, true, true);
  const auto pv = sample(v, true, true);
  const auto np = pu.value[0].size();
  std::vector<double> w1(np), w2(np);
  for (std::size_t x = 0; x < np; ++x) {
    const double a1 = pu.value[0][x], a2 = pu.value[1][x];
    const double b1 = pv.value[0][x], b2 = pv.value[1][x];
    w1[x] = a1 * pv.grad[0][0][x] + a2 * pv.grad[0][1][x] + b1 * pu.grad[0][0][x] + b2 * pu.grad[1][0][x];
    w2[x] = a1 * pv.grad[1][0][x] + a2 * pv.grad[1][1][x] + b1 * pu.grad[0][1][x] + b2 * pu.grad[1][1][x];
  }
  return project_physical(u.lattice(), u.lattice_ptr(), w1, w2);
}

SpectralField btilde_alpha(const SpectralField& u, const SpectralField& v, double alpha) {
  return apply_j_alpha(bilinear_btilde(u, v), alpha);
}

SpectralField gradient_contraction(const SpectralField& y, const SpectralField& q) {
  require_same_lattice(y, q);
  const auto py = sample(y, false, true);
  const auto pq = sample(q, true, false);
  const auto np = pq.value[0].size();
  std::vector<double> w1(np), w2(np);
  for (std::size_t x = 0; x < np; ++x) {
    const double b1 = pq.value[0][x], b2 = pq.value[1][x];
    w1[x] = b1 * py.grad[0][0][x] + b2 * py.grad[1][0][x];
    w2[x] = b1 * py.grad[0][1][x] + b2 * py.grad[1][1][x];
  }
  return project_physical(y.lattice(), y.lattice_ptr(), w1, w2);
}

std::vector<std::array<double, 2>> to_physical(const SpectralField& u) {
  const auto p = sample(u, true, false);
  std::vector<std::array<double, 2>> out(p.value[0].size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = {p.value[0][x], p.value[1][x]};
  return out;
}

double physical_l2_norm(const SpectralField& u) {
  const auto pts = to_physical(u);
  double acc = 0.0;
  for (const auto& p : pts) acc += p[0] * p[0] + p[1] * p[1];
  return std::sqrt(acc / static_cast<double>(pts.size()));
}

}  // namespace lans
