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
#include <stdexcept>

#include "lans/adjoint.hpp"
#include "lans/random.hpp"
#include "lans/rate.hpp"
#include "lans/studies.hpp"
#include "lans/tails.hpp"

using namespace lans;

namespace {

// Rank-one Ornstein-Uhlenbeck toy: zero start, one forced mode, so the
// nonlinearity never acts.
SolverConfig ou_config(double alpha = 0.1, int delta = 0) {
  SolverConfig c;
  c.lattice = make_lattice(8);
  c.dt = 0.02;
  c.horizon = 0.5;
  c.alpha = alpha;
  c.scaling.delta = delta;
  c.noise = NoiseOperator::from_modes(c.lattice, NoiseVariant::additive, {1.0}, {{{1, 0}, Phase::cosine}});
  return c;
}

SolverConfig nonlinear_config(int delta) {
  SolverConfig c;
  c.lattice = make_lattice(8);
  c.dt = 0.02;
  c.horizon = 0.2;
  c.alpha = 0.1;
  c.scaling.delta = delta;
  c.noise = NoiseOperator::from_modes(c.lattice, NoiseVariant::multiplicative, {0.5, 0.8},
                                      {{{1, 0}, Phase::cosine}, {{1, 1}, Phase::sine}},
                                      {{{0, 1}, Phase::cosine}, {{1, 0}, Phase::cosine}}, {1.0, 0.5});
  return c;
}

}  // namespace

TEST_CASE("Wilson interval matches tabulated values") {
  const auto w = wilson_interval(5, 10);
  CHECK(w.low == doctest::Approx(0.2366).epsilon(1e-3));
  CHECK(w.high == doctest::Approx(0.7634).epsilon(1e-3));
  const auto z = wilson_interval(0, 100);
  CHECK(z.low == 0.0);
  CHECK(z.high > 0.0);
  CHECK(wilson_interval(100, 100).high == doctest::Approx(1.0));
}

TEST_CASE("tail estimates report rates only when the event was seen") {
  auto c = ou_config(0.1);
  const SpectralField xi(c.lattice);
  TailEvent ev{TailStatistic::terminal_norm, 0.0, std::nullopt};
  const auto s = sample_tail_statistic(ev, 200, xi, c, nullptr, 9, 1);
  CHECK(s.values.size() == 200u);
  CHECK(s.speed == doctest::Approx(10.0));
  ev.threshold = 1e9;
  const auto none = estimate_tail(s, ev);
  CHECK(none.hits == 0);
  CHECK_FALSE(none.rate.has_value());
  REQUIRE(none.zero_hit_upper.has_value());
  CHECK(*none.zero_hit_upper > 0.0);
  ev.threshold = 0.01;
  const auto some = estimate_tail(s, ev);
  CHECK(some.hits > 0);
  REQUIRE(some.rate.has_value());
  CHECK(*some.rate == doctest::Approx(-std::log(some.p_hat) / some.speed));
  CHECK(some.ci_low <= some.p_hat);
  CHECK(some.p_hat <= some.ci_high);
  const auto sweep = tail_sweep(s, ev, {0.01, 0.05, 0.2});
  CHECK(sweep.size() == 3u);
  CHECK(sweep[0].hits >= sweep[1].hits);
  CHECK(sweep[1].hits >= sweep[2].hits);
}

TEST_CASE("tail samples do not depend on the number of workers") {
  auto c = ou_config(0.1);
  const SpectralField xi(c.lattice);
  TailEvent ev{TailStatistic::sup_norm, 0.1, std::nullopt};
  const auto a = sample_tail_statistic(ev, 40, xi, c, nullptr, 21, 1);
  const auto b = sample_tail_statistic(ev, 40, xi, c, nullptr, 21, 3);
  CHECK(a.values == b.values);
  CHECK_THROWS_AS(sample_tail_statistic(ev, 0, xi, c, nullptr, 21, 1), std::invalid_argument);
  ev.statistic = TailStatistic::terminal_observable;
  CHECK_THROWS_AS(sample_tail_statistic(ev, 4, xi, c, nullptr, 21, 1), std::invalid_argument);
}

TEST_CASE("rate problem validation") {
  RateProblem p(ObservableTarget{SpectralField(make_lattice(8)), 1.0});
  p.beta_schedule = {};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.beta_schedule = {10.0, 5.0};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.beta_schedule = {10.0};
  p.tolerance = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("unreachable observable targets cost infinity") {
  auto c = ou_config(0.1, 1);
  const SpectralField xi(c.lattice);
  const auto flow = reference_flow(xi, c);
  RateProblem p(ObservableTarget{single_mode(c.lattice, {2, 1}, Phase::sine), 0.3});
  const auto r = rate_function(p, xi, c, &flow);
  CHECK(std::isinf(r.cost));
  CHECK_FALSE(r.converged);
}

TEST_CASE("zero level costs nothing") {
  auto c = ou_config(0.1, 1);
  const SpectralField xi(c.lattice);
  const auto flow = reference_flow(xi, c);
  RateProblem p(ObservableTarget{single_mode(c.lattice, {1, 0}, Phase::cosine), 0.0});
  CHECK(rate_function(p, xi, c, &flow).cost == doctest::Approx(0.0));
}

TEST_CASE("assembled and adjoint responses agree on a nonlinear reference") {
  auto c = nonlinear_config(1);
  Engine e = make_engine(3, 0);
  const auto xi = random_field(c.lattice, e);
  const auto flow = reference_flow(xi, c);
  const auto g = random_field(c.lattice, e);
  const auto a = observable_response_assembled(g, c, flow, 2);
  const auto b = observable_response_adjoint(g, c, flow);
  REQUIRE(a.size() == b.size());
  double scale = 0.0, gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(a[i]));
    gap = std::max(gap, std::abs(a[i] - b[i]));
  }
  CHECK(gap <= 1e-12 * scale);
}

TEST_CASE("penalty gradients match central differences") {
  for (int delta : {0, 1}) {
    auto c = nonlinear_config(delta);
    Engine e = make_engine(4, delta);
    const auto xi = random_field(c.lattice, e);
    const auto flow = reference_flow(xi, c);
    const RateTarget target = ObservableTarget{random_field(c.lattice, e), 0.2};
    std::normal_distribution<double> z;
    std::vector<double> hv(static_cast<std::size_t>(2 * c.steps())), dv(hv.size());
    for (auto& x : hv) x = z(e);
    for (auto& x : dv) x = z(e);
    const Control h(2, c.dt, c.steps(), hv), d(2, c.dt, c.steps(), dv);
    const auto pv = skeleton_gradient(target, 50.0, h, xi, c, delta == 1 ? &flow : nullptr);
    double directional = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) directional += c.dt * pv.gradient.values()[i] * dv[i];
    const double eps = 1e-5;
    const double up = skeleton_gradient(target, 50.0, h + eps * d, xi, c, delta == 1 ? &flow : nullptr).value;
    const double dn = skeleton_gradient(target, 50.0, h + (-eps) * d, xi, c, delta == 1 ? &flow : nullptr).value;
    INFO("delta = " << delta);
    CHECK(directional == doctest::Approx((up - dn) / (2 * eps)).epsilon(1e-6));
    CHECK(pv.cost == doctest::Approx(control_cost(h)));
  }
}

TEST_CASE("penalty method reaches the linear answer when the skeleton is linear") {
  auto c = ou_config(0.1, 0);
  const SpectralField xi(c.lattice);
  RateProblem p(ObservableTarget{single_mode(c.lattice, {1, 0}, Phase::cosine), 0.2});
  const auto r0 = rate_function(p, xi, c, nullptr);
  c.scaling.delta = 1;
  const auto flow = reference_flow(xi, c);
  const auto r1 = rate_function(p, xi, c, &flow);
  CHECK(r0.method == "penalty");
  CHECK(r1.method == "gramian");
  CHECK(r0.stages.size() == 4u);
  CHECK(r0.cost == doctest::Approx(r1.cost).epsilon(1e-3));
}

TEST_CASE("convergence study rejects bad grids") {
  auto c = ou_config();
  const SpectralField xi(c.lattice);
  CHECK_THROWS_AS(convergence_study({0.1, 0.2}, 4, xi, c, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study({}, 4, xi, c, 1, 1), std::invalid_argument);
}

TEST_CASE("convergence study is worker-independent") {
  auto c = nonlinear_config(0);
  Engine e = make_engine(8, 0);
  const auto xi = random_field(c.lattice, e);
  const auto a = convergence_study({0.4, 0.2}, 6, xi, c, 3, 1);
  const auto b = convergence_study({0.4, 0.2}, 6, xi, c, 3, 2);
  REQUIRE(a.size() == 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean == b[i].mean);
    CHECK(a[i].mean == doctest::Approx(a[i].mean_sup + a[i].mean_dissipation));
  }
}

TEST_CASE("weak probe rows are consistent") {
  auto c = nonlinear_config(0);
  Engine e = make_engine(9, 0);
  const auto xi = random_field(c.lattice, e);
  const auto rows = weak_continuity_probe({0, 1, 2}, {1.0, 0.0}, 12, xi, c, nullptr);
  REQUIRE(rows.size() == 3u);
  CHECK(rows[0].error == 0.0);
  CHECK(rows[0].cost == 0.0);
  for (const auto& r : rows) CHECK(r.error == doctest::Approx(r.sup_part + r.dissipation_part));
  CHECK_THROWS_AS(weak_continuity_probe({1}, {1.0}, 4, xi, c, nullptr), std::invalid_argument);
}
