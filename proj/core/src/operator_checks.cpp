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

#include "lans/operator_checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "lans/bilinear.hpp"

namespace lans {

OperatorBoundsReport verify_operator_bounds(const LatticePtr& lattice, double alpha, int trials, Engine& engine) {
  OperatorBoundsReport r;
  r.alpha = alpha;
  r.trials = trials;
  const double a2 = alpha * alpha;
  for (const auto& m : lattice->modes()) {
    const double denom = 1.0 + a2 * m.eigenvalue;
    r.max_smoothing_ratio = std::max(r.max_smoothing_ratio, a2 * m.eigenvalue / denom);
    r.max_half_power_ratio = std::max(r.max_half_power_ratio, alpha * std::sqrt(m.eigenvalue) / denom);
  }
  for (int t = 0; t < trials; ++t) {
    const auto phi = random_field(lattice, engine, 1.0);
    const auto w = random_field(lattice, engine, 2.0);
    const double lhs = std::abs(inner_h(phi - apply_j_alpha(phi, alpha), w));
    const double rhs = 0.5 * alpha * norm_h(phi) * norm_v(w);
    r.worst_commutator_ratio = std::max(r.worst_commutator_ratio, lhs / rhs);
  }
  return r;
}

std::vector<IdentityCheck> check_bilinear_identities(const LatticePtr& lattice, int trials, double alpha,
                                                     Engine& engine, double tolerance) {
  std::vector<IdentityCheck> out = {
      {"B(u,v).v = 0", 0.0, tolerance},
      {"Btilde(u,v).u = 0", 0.0, tolerance},
      {"B(u,v).w = -B(u,w).v", 0.0, tolerance},
      {"Btilde(u,v).w = B(u,v).w - B(w,v).u", 0.0, tolerance},
      {"Btilde(u,u) = B(u,u)", 0.0, tolerance},
      {"J_alpha Btilde(u,v).(u + alpha^2 Au) = 0", 0.0, tolerance},
      {"Leray idempotent", 0.0, 1e-14},
      {"Parseval", 0.0, 1e-12},
  };
  auto update = [&](std::size_t i, double v) { out[i].worst_relative = std::max(out[i].worst_relative, v); };

  for (int t = 0; t < trials; ++t) {
    const auto u = random_field(lattice, engine);
    const auto v = random_field(lattice, engine);
    const auto w = random_field(lattice, engine);

    const auto buv = bilinear_b(u, v);
    const auto buw = bilinear_b(u, w);
    const auto bwv = bilinear_b(w, v);
    const auto btuv = bilinear_btilde(u, v);

    update(0, std::abs(inner_h(buv, v)) / (norm_h(buv) * norm_h(v)));
    update(1, std::abs(inner_h(btuv, u)) / (norm_h(btuv) * norm_h(u)));
    {
      const double lhs = inner_h(buv, w), rhs = -inner_h(buw, v);
      update(2, std::abs(lhs - rhs) / (norm_h(buv) * norm_h(w) + norm_h(buw) * norm_h(v)));
    }
    {
      const double lhs = inner_h(btuv, w);
      const double rhs = inner_h(buv, w) - inner_h(bwv, u);
      const double scale = norm_h(btuv) * norm_h(w) + norm_h(buv) * norm_h(w) + norm_h(bwv) * norm_h(u);
      update(3, std::abs(lhs - rhs) / scale);
    }
    {
      const auto buu = bilinear_b(u, u);
      update(4, norm_h(bilinear_btilde(u, u) - buu) / norm_h(buu));
    }
    {
      const auto smoothed = apply_j_alpha(btuv, alpha);
      const auto weight = apply_j_alpha_inverse(u, alpha);
      update(5, std::abs(inner_h(smoothed, weight)) / (norm_h(smoothed) * norm_h(weight)));
    }
    {
      VectorSpectrum f(lattice);
      for (std::size_t i = 0; i < f.coeffs.size(); ++i) f.coeffs[i] = u[i];
      update(6, norm_h(project_leray(f) - u) / norm_h(u));
    }
    update(7, std::abs(physical_l2_norm(u) - norm_h(u)) / norm_h(u));
  }
  return out;
}

namespace {

struct Norms {
  double h, v, a;
};

Norms norms_of(const SpectralField& f) { return {norm_h(f), norm_v(f), norm_a(f)}; }

using RatioFn = std::function<double(const SpectralField&, const SpectralField&, const SpectralField&)>;

struct Estimate {
  std::string name;
  RatioFn ratio;
};

std::vector<Estimate> estimates() {
  auto b = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    return std::abs(inner_h(bilinear_b(u, v), w));
  };
  auto bt = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    return std::abs(inner_h(bilinear_btilde(u, v), w));
  };
  // Right-hand sides without their constants; u, v, w roles follow the
  // function spaces named in each entry (V, D(A), H).
  auto vvv = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    const auto nu = norms_of(u);
    return std::sqrt(nu.h * nu.v) * norm_v(v) * norm_v(w);
  };
  auto dvh = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    const auto nu = norms_of(u);
    return std::sqrt(nu.v * nu.a) * norm_v(v) * norm_h(w);
  };
  auto vdh = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    const auto nv = norms_of(v);
    return norm_v(u) * std::sqrt(nv.v * nv.a) * norm_h(w);
  };
  auto vdh_refined = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    const auto nu = norms_of(u);
    const auto nv = norms_of(v);
    return std::sqrt(nu.h * nu.v) * std::sqrt(nv.v * nv.a) * norm_h(w);
  };
  auto vhd_extended = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    const auto nu = norms_of(u);
    const auto nw = norms_of(w);
    return (std::sqrt(nu.h * nu.v) * std::sqrt(nw.v * nw.a) + nw.a * nu.v) * norm_h(v);
  };
  auto vhd = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    return norm_v(u) * norm_h(v) * norm_a(w);
  };
  auto dhv = [](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
    return norm_a(u) * norm_h(v) * norm_v(w);
  };
  auto ratio = [](auto lhs, auto rhs) {
    return [lhs, rhs](const SpectralField& u, const SpectralField& v, const SpectralField& w) {
      return lhs(u, v, w) / rhs(u, v, w);
    };
  };
  return {
      {"B on V x V x V", ratio(b, vvv)},
      {"Btilde on V x V x V", ratio(bt, vvv)},
      {"B on D(A) x V x H", ratio(b, dvh)},
      {"Btilde on D(A) x V x H", ratio(bt, dvh)},
      {"B on V x D(A) x H", ratio(b, vdh)},
      {"B on V x D(A) x H (interpolated)", ratio(b, vdh_refined)},
      {"Btilde on V x H x D(A) (two-term)", ratio(bt, vhd_extended)},
      {"Btilde on V x H x D(A)", ratio(bt, vhd)},
      {"Btilde on D(A) x H x V", ratio(bt, dhv)},
  };
}

double worst_ratio(const Estimate& e, const LatticePtr& lattice, int trials, Engine& engine) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto u = random_field(lattice, engine);
    const auto v = random_field(lattice, engine);
    const auto w = random_field(lattice, engine);
    worst = std::max(worst, e.ratio(u, v, w));
  }
  return worst;
}

}  // namespace

std::vector<EstimateCheck> check_trilinear_estimates(const LatticePtr& calibration_lattice, int calibration_trials,
                                                     const LatticePtr& check_lattice, int check_trials,
                                                     Engine& engine) {
  std::vector<EstimateCheck> out;
  for (const auto& e : estimates()) {
    EstimateCheck c;
    c.name = e.name;
    c.calibrated_constant = worst_ratio(e, calibration_lattice, calibration_trials, engine);
    c.worst_ratio = worst_ratio(e, check_lattice, check_trials, engine);
    out.push_back(c);
  }
  return out;
}

}  // namespace lans
