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

// Independent reference computations: direct triad sums, closed-form
// Gaussian quantities and brute-force quadrature.
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lans/bilinear.hpp"
#include "lans/paths.hpp"
#include "lans/random.hpp"
#include "lans/rate.hpp"
#include "lans/tails.hpp"

using namespace lans;

namespace {

using Triad = Vec2c (*)(const Vec2c& up, Wavevector p, const Vec2c& vq, Wavevector q);

// (u . grad) v contribution of the pair (p, q).
Vec2c advect(const Vec2c& up, Wavevector, const Vec2c& vq, Wavevector q) {
  const Complex i(0, 1);
  const Complex s = up[0] * (i * double(q.k1)) + up[1] * (i * double(q.k2));
  return {s * vq[0], s * vq[1]};
}

// sum_j v_j grad u_j contribution of the pair (p, q).
Vec2c transpose_term(const Vec2c& up, Wavevector p, const Vec2c& vq, Wavevector) {
  const Complex i(0, 1);
  const Complex s = vq[0] * up[0] + vq[1] * up[1];
  return {s * (i * double(p.k1)), s * (i * double(p.k2))};
}

SpectralField triad_sum(const SpectralField& u, const SpectralField& v, std::initializer_list<Triad> terms) {
  const auto& lat = u.lattice();
  std::vector<Vec2c> out(lat.mode_count(), Vec2c{});
  for (std::size_t a = 0; a < lat.mode_count(); ++a) {
    for (std::size_t b = 0; b < lat.mode_count(); ++b) {
      const Wavevector p = lat.mode(a).k, q = lat.mode(b).k;
      const auto idx = lat.index_of({p.k1 + q.k1, p.k2 + q.k2});
      if (!idx) continue;
      for (Triad t : terms) {
        const Vec2c c = t(u[a], p, v[b], q);
        out[*idx][0] += c[0];
        out[*idx][1] += c[1];
      }
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Wavevector k = lat.mode(i).k;
    const Complex kf = double(k.k1) * out[i][0] + double(k.k2) * out[i][1];
    const double k2 = lat.mode(i).eigenvalue;
    out[i][0] -= double(k.k1) * kf / k2;
    out[i][1] -= double(k.k2) * kf / k2;
  }
  return SpectralField(u.lattice_ptr(), out);
}

// Discrete Gramian of y_{n+1} = (1 + dt nu lam)^-1 (y_n + dt sigma h_n) read
// through a unit observable: r_n = dt sigma rho^(N - n), W = sum r_n^2 / dt.
double discrete_gramian(double nu_lam, double sigma, double dt, int steps) {
  const double rho = 1.0 / (1.0 + dt * nu_lam);
  double w = 0.0;
  for (int m = 1; m <= steps; ++m) w += dt * sigma * sigma * std::pow(rho, 2 * m);
  return w;
}

double continuous_gramian(double lam, double sigma, double horizon) {
  return sigma * sigma * (1.0 - std::exp(-2.0 * lam * horizon)) / (2.0 * lam);
}

SolverConfig rank_one_toy(double lam, double sigma, double dt, double horizon, int delta) {
  SolverConfig c;
  c.lattice = make_lattice(8);
  c.dt = dt;
  c.horizon = horizon;
  c.alpha = 0.1;
  c.viscosity = lam;  // forced mode has |k|^2 = 1
  c.scaling.delta = delta;
  c.noise = NoiseOperator::from_modes(c.lattice, NoiseVariant::additive, {sigma}, {{{1, 0}, Phase::cosine}});
  return c;
}

}  // namespace

TEST_CASE("pseudo-spectral B equals the direct triad sum") {
  for (int n : {6, 10}) {
    Engine e = make_engine(100, static_cast<std::uint64_t>(n));
    for (int t = 0; t < 3; ++t) {
      const auto u = random_field(make_lattice(n), e, 0.5);
      const auto v = random_field(make_lattice(n), e, 0.5);
      const auto want_b = triad_sum(u, v, {advect});
      const auto want_bt = triad_sum(u, v, {advect, transpose_term});
      CHECK(norm_h(bilinear_b(u, v) - want_b) <= 1e-13 * std::max(1.0, norm_h(want_b)));
      CHECK(norm_h(bilinear_btilde(u, v) - want_bt) <= 1e-13 * std::max(1.0, norm_h(want_bt)));
    }
  }
}

TEST_CASE("rank-one rate equals the Gramian closed form") {
  Engine e = make_engine(200, 0);
  std::uniform_real_distribution<double> lam_d(1.0, 9.0), sig_d(0.5, 2.0), t_d(0.5, 2.0), b_d(0.1, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double lam = lam_d(e), sigma = sig_d(e), b = b_d(e);
    const double dt = 0.01;
    const double horizon = std::round(t_d(e) / dt) * dt;
    const auto c = rank_one_toy(lam, sigma, dt, horizon, 1);
    const SpectralField xi(c.lattice);
    const auto flow = reference_flow(xi, c);
    RateProblem p(ObservableTarget{single_mode(c.lattice, {1, 0}, Phase::cosine), b});
    const auto r = rate_function(p, xi, c, &flow);
    const double w = discrete_gramian(lam, sigma, dt, c.steps());
    CHECK(r.gramian == doctest::Approx(w).epsilon(1e-12));
    CHECK(r.cost == doctest::Approx(b * b / (2.0 * w)).epsilon(1e-10));
  }
}

TEST_CASE("discrete Gramian converges to the continuous one at first order") {
  const double lam = 4.0, sigma = 1.3, horizon = 1.0;
  const double exact = continuous_gramian(lam, sigma, horizon);
  double prev = 0.0;
  for (int steps : {100, 200, 400, 800}) {
    const double err = std::abs(discrete_gramian(lam, sigma, horizon / steps, steps) - exact);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("terminal-norm tail of the two-mode OU toy is the Gaussian closed form") {
  // y(T) is isotropic Gaussian on the cos/sin pair, so P(|y| > r) = exp(-r^2 / (2 s^2))
  // with s^2 = alpha W_d / (1 + alpha^2 lam)^2.
  SolverConfig c;
  c.lattice = make_lattice(8);
  c.dt = 0.01;
  c.horizon = 0.5;
  c.alpha = 0.1;
  c.noise = NoiseOperator::from_modes(c.lattice, NoiseVariant::additive, {1.0, 1.0},
                                      {{{2, 2}, Phase::cosine}, {{2, 2}, Phase::sine}});
  const double lam = 8.0;
  const double s2 = c.alpha * discrete_gramian(lam, 1.0, c.dt, c.steps()) / std::pow(1 + c.alpha * c.alpha * lam, 2);
  const SpectralField xi(c.lattice);
  const int n = 20000;
  const auto samples = sample_tail_statistic({TailStatistic::terminal_norm, 0.0, std::nullopt}, n, xi, c, nullptr, 5, 1);
  for (double r : {0.05, 0.095, 0.15}) {
    const double p = std::exp(-r * r / (2 * s2));
    const auto est = estimate_tail(samples, {TailStatistic::terminal_norm, r, std::nullopt});
    INFO("r = " << r << ", p = " << p << ", p_hat = " << est.p_hat);
    CHECK(std::abs(est.p_hat - p) <= 4.0 * std::sqrt(p * (1 - p) / n));
  }
}

TEST_CASE("weak distance coefficients equal brute-force quadrature") {
  const int rank = 2, steps = 50;
  const double dt = 0.02;
  const auto h = Control::from_function(rank, dt, steps, [](double t, int j) { return std::exp(-t) * (j + 1) + t * t; });
  const Control zero(rank, dt, steps);
  const int basis = 12;
  double want = 0.0;
  for (int k = 1; k <= basis; ++k) {
    const int m = (k - 1) / rank + 1, j = (k - 1) % rank;
    // composite Simpson on each cell, 64 panels
    double coeff = 0.0;
    for (int n = 0; n < steps; ++n) {
      const int panels = 64;
      const double a = n * dt, w = dt / panels;
      double s = 0.0;
      for (int q = 0; q <= panels; ++q) {
        const double t = a + q * w;
        const double f = std::sqrt(2.0) * std::sin(m * std::numbers::pi * t);
        s += (q == 0 || q == panels ? 1.0 : (q % 2 ? 4.0 : 2.0)) * f;
      }
      coeff += h.at(n)[j] * s * w / 3.0;
    }
    want += std::ldexp(std::abs(coeff), -k);
  }
  CHECK(weak_distance(h, zero, basis) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("Wilson interval agrees with the score-test inversion") {
  // endpoints solve (p_hat - p)^2 = z^2 p (1 - p) / n
  for (auto [hits, n] : {std::pair{3, 50}, std::pair{40, 41}, std::pair{500, 1000}}) {
    const auto w = wilson_interval(hits, n);
    const double ph = double(hits) / n, z = 1.959963984540054;
    for (double p : {w.low, w.high}) CHECK((ph - p) * (ph - p) == doctest::Approx(z * z * p * (1 - p) / n).epsilon(1e-9));
  }
}
