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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lans/noise.hpp"
#include "lans/paths.hpp"
#include "lans/random.hpp"

using namespace lans;

namespace {

NoiseOperator two_mode_additive(const LatticePtr& lat) {
  return NoiseOperator::from_modes(lat, NoiseVariant::additive, {0.5, 2.0},
                                   {{{1, 0}, Phase::cosine}, {{1, 2}, Phase::sine}});
}

NoiseOperator two_mode_multiplicative(const LatticePtr& lat) {
  return NoiseOperator::from_modes(lat, NoiseVariant::multiplicative, {0.5, 2.0},
                                   {{{1, 0}, Phase::cosine}, {{1, 2}, Phase::sine}},
                                   {{{0, 1}, Phase::cosine}, {{1, 1}, Phase::sine}}, {1.0, -0.5});
}

}  // namespace

TEST_CASE("additive noise is a fixed linear combination of its directions") {
  const auto lat = make_lattice(8);
  const auto g = two_mode_additive(lat);
  CHECK(g.rank() == 2);
  Engine e = make_engine(1, 0);
  const auto u = random_field(lat, e);
  const std::vector<double> h{1.5, -0.25};
  const auto got = apply_g(g, u, h);
  const auto want = (0.5 * 1.5) * g.output(0) + (2.0 * -0.25) * g.output(1);
  CHECK(norm_h(got - want) <= 1e-15);
  CHECK(g.gain(u, 1) == 2.0);
  const auto hs = hs_norms(g, u);
  CHECK(hs.h == doctest::Approx(std::sqrt(0.25 + 4.0)));
  CHECK(hs.v == doctest::Approx(std::sqrt(0.25 * 1.0 + 4.0 * 5.0)));
  CHECK(hs_difference_norms(g, u, random_field(lat, e)).h == 0.0);
  CHECK(norm_h(apply_g_alpha(g, u, h, 0.4) - apply_j_alpha(got, 0.4)) <= 1e-15);
}

TEST_CASE("multiplicative gains follow the probe functionals") {
  const auto lat = make_lattice(8);
  const auto g = two_mode_multiplicative(lat);
  const auto u = 3.0 * g.probe(0) + 0.5 * g.probe(1);
  CHECK(g.gain(u, 0) == doctest::Approx(0.5 * (3.0 + 1.0)));
  CHECK(g.gain(u, 1) == doctest::Approx(2.0 * (0.5 - 0.5)));
}

TEST_CASE("noise constants bound the sampled Lipschitz and growth ratios") {
  const auto lat = make_lattice(8);
  const auto g = two_mode_multiplicative(lat);
  // sigma_j max(1, |phi_j|_V): 0.5 * 1 + 2 * sqrt(5)
  CHECK(g.lipschitz_constant() == doctest::Approx(0.5 + 2.0 * std::sqrt(5.0)));
  CHECK(g.growth_constant() == doctest::Approx(g.lipschitz_constant()));
  Engine e = make_engine(2, 0);
  std::normal_distribution<double> z;
  for (int t = 0; t < 50; ++t) {
    const auto u = (5.0 * z(e)) * random_field(lat, e);
    const auto v = (5.0 * z(e)) * random_field(lat, e);
    const auto d = hs_difference_norms(g, u, v);
    CHECK(d.h <= g.lipschitz_constant() * norm_h(u - v) * (1 + 1e-12));
    CHECK(d.v <= g.lipschitz_constant() * norm_h(u - v) * (1 + 1e-12));
    CHECK(hs_norms(g, u).v <= g.growth_constant() * (1.0 + norm_h(u)));
  }
}

TEST_CASE("noise construction validates its inputs") {
  const auto lat = make_lattice(8);
  CHECK_THROWS_AS(NoiseOperator::from_modes(lat, NoiseVariant::additive, {1.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(NoiseOperator::from_modes(lat, NoiseVariant::additive, {-1.0}, {{{1, 0}, Phase::cosine}}),
                  std::invalid_argument);
  CHECK_THROWS(NoiseOperator::from_modes(lat, NoiseVariant::additive, {1.0}, {{{5, 0}, Phase::cosine}}));
  CHECK_THROWS_AS(NoiseOperator::from_modes(lat, NoiseVariant::multiplicative, {1.0}, {{{1, 0}, Phase::cosine}}),
                  std::invalid_argument);
  const auto g = two_mode_additive(lat);
  const std::vector<double> wrong{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(apply_g(g, SpectralField(lat), wrong), std::invalid_argument);
}

TEST_CASE("Wiener paths are reproducible and have N(0, dt) increments") {
  const auto a = sample_wiener(3, 0.01, 20000, 42);
  const auto b = sample_wiener(3, 0.01, 20000, 42);
  CHECK(a.increments == b.increments);
  CHECK(a.increments != sample_wiener(3, 0.01, 20000, 43).increments);
  CHECK(a.increments.size() == 60000u);
  double mean = 0.0, second = 0.0;
  for (double x : a.increments) {
    mean += x;
    second += x * x;
  }
  mean /= 60000.0;
  second /= 60000.0;
  // standard errors: sqrt(dt / N) and dt sqrt(2 / N)
  CHECK(std::abs(mean) < 5.0 * std::sqrt(0.01 / 60000.0));
  CHECK(std::abs(second - 0.01) < 5.0 * 0.01 * std::sqrt(2.0 / 60000.0));
  CHECK(a.step(2)[1] == a.increments[7]);
}

TEST_CASE("time grids validate their shape") {
  CHECK_THROWS_AS(sample_wiener(1, 0.0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_wiener(1, 0.1, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_wiener(0, 0.1, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(Control(2, 0.1, 3, std::vector<double>(5)), std::invalid_argument);
  CHECK(Control(2, 0.1, 10).same_grid(Control(2, 0.1, 10)));
  CHECK_FALSE(Control(2, 0.1, 10).same_grid(Control(1, 0.1, 10)));
}

TEST_CASE("controls sample at midpoints and price by the L2 cost") {
  const auto h = Control::from_function(2, 0.25, 4, [](double t, int j) { return j == 0 ? t : 1.0; });
  CHECK(h.at(0)[0] == 0.125);
  CHECK(h.at(3)[0] == 0.875);
  CHECK(h.horizon() == 1.0);
  const double want = 0.5 * 0.25 * (0.125 * 0.125 + 0.375 * 0.375 + 0.625 * 0.625 + 0.875 * 0.875 + 4.0);
  CHECK(control_cost(h) == doctest::Approx(want));
  const auto s = 2.0 * h + h;
  CHECK(s.at(1)[1] == 3.0);
  CHECK(control_cost(s) == doctest::Approx(9.0 * want));
}

TEST_CASE("weak distance is a symmetric, vanishing-on-diagonal pseudometric") {
  const auto h = Control::from_function(2, 0.01, 100, [](double t, int j) { return std::cos(3 * t + j); });
  const auto g = Control::from_function(2, 0.01, 100, [](double t, int) { return t * t; });
  const Control zero(2, 0.01, 100);
  CHECK(weak_distance(h, h, 40) == 0.0);
  CHECK(weak_distance(h, g, 40) == doctest::Approx(weak_distance(g, h, 40)));
  CHECK(weak_distance(h, g, 40) <= weak_distance(h, zero, 40) + weak_distance(zero, g, 40) + 1e-15);
  CHECK(weak_distance(h, g, 0) == 0.0);
  CHECK_THROWS_AS(weak_distance(h, Control(2, 0.01, 50), 4), std::invalid_argument);
}

TEST_CASE("fast oscillations are weakly small but not strongly small") {
  double previous = 1.0;
  for (int n : {2, 4, 8, 16}) {
    const auto hn = Control::from_function(1, 1e-3, 1000, [n](double t, int) { return std::sin(2 * std::numbers::pi * n * t); });
    const double d = weak_distance(hn, Control(1, 1e-3, 1000), 4 * n + 4);
    CHECK(d < previous);
    previous = d;
    CHECK(control_cost(hn) == doctest::Approx(0.25).epsilon(1e-3));
  }
}

TEST_CASE("control CSV round-trips exactly") {
  const auto h = Control::from_function(3, 0.1, 7, [](double t, int j) { return std::exp(t) / (j + 3.0); });
  std::stringstream s;
  write_path_csv(s, h, h.values());
  const auto back = read_control_csv(s, 0.1);
  CHECK(back.same_grid(h));
  CHECK(std::equal(back.values().begin(), back.values().end(), h.values().begin()));
  std::stringstream bad("step,j,value\n0,5,1.0\n");
  CHECK_THROWS(read_control_csv(bad, 0.1));
}
