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

#include "lans/rate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "lans/worker_pool.hpp"

namespace lans {

void RateProblem::validate() const {
  if (beta_schedule.empty()) throw std::invalid_argument("beta schedule is empty");
  for (std::size_t i = 0; i < beta_schedule.size(); ++i) {
    if (!(beta_schedule[i] > 0.0)) throw std::invalid_argument("beta values must be positive");
    if (i > 0 && !(beta_schedule[i] > beta_schedule[i - 1])) {
      throw std::invalid_argument("beta schedule must be increasing");
    }
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

namespace {

SolverConfig quiet_config(const SolverConfig& cfg) {
  SolverConfig q = cfg;
  q.keep_snapshots = false;
  q.record_stride = cfg.steps();
  return q;
}

SpectralField terminal_state(const SpectralField& xi, const SolverConfig& quiet, const Control& h,
                             const ReferenceFlow* reference) {
  SpectralField last(quiet.lattice);
  solve_skeleton(xi, quiet, h, reference, [&](int, const SpectralField& y) { last = y; });
  return last;
}

Control unit_control(const SolverConfig& cfg, std::size_t index) {
  const int rank = cfg.noise->rank();
  std::vector<double> v(static_cast<std::size_t>(cfg.steps()) * rank, 0.0);
  v[index] = 1.0;
  return Control(rank, cfg.dt, cfg.steps(), std::move(v));
}

double l2_norm(const Control& h) { return std::sqrt(2.0 * control_cost(h)); }

// Flattened real coordinates of a field; the Euclidean product equals (., .)_H.
Eigen::VectorXd flatten(const SpectralField& u) {
  Eigen::VectorXd x(4 * static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (int c = 0; c < 2; ++c) {
      x(4 * i + 2 * c) = u[i][c].real();
      x(4 * i + 2 * c + 1) = u[i][c].imag();
    }
  }
  return x;
}

RateResult solve_observable_exact(const RateProblem& problem, const ObservableTarget& target,
                                  const SpectralField& xi, const SolverConfig& cfg,
                                  const ReferenceFlow& reference) {
  const SolverConfig quiet = quiet_config(cfg);
  const int steps = cfg.steps();
  const int rank = cfg.noise->rank();
  const std::size_t count = static_cast<std::size_t>(steps) * rank;

  std::vector<double> r = observable_response_adjoint(target.g, quiet, reference);
  RateResult out;
  out.method = "gramian";
  if (count <= static_cast<std::size_t>(problem.assembly_limit)) {
    const std::vector<double> assembled = observable_response_assembled(target.g, quiet, reference, problem.workers);
    const double scale = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    double gap = 0.0;
    for (std::size_t i = 0; i < count; ++i) gap = std::max(gap, std::abs(assembled[i] - r[i]));
    out.response_gap = scale > 0.0 ? gap / scale : gap;
    r = assembled;
  }

  const Control zero(rank, cfg.dt, steps);
  const double offset = inner_h(terminal_state(xi, quiet, zero, &reference), target.g);
  const double b = target.level - offset;
  out.gramian = std::inner_product(r.begin(), r.end(), r.begin(), 0.0) / cfg.dt;

  if (out.gramian == 0.0) {
    out.argmin = zero;
    out.converged = b == 0.0;
    out.cost = b == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    out.residual = std::abs(b);
    return out;
  }
  std::vector<double> h(count);
  const double mu = b / (cfg.dt * out.gramian);
  for (std::size_t i = 0; i < count; ++i) h[i] = mu * r[i];
  out.argmin = Control(rank, cfg.dt, steps, std::move(h));
  out.cost = b * b / (2.0 * out.gramian);
  out.residual = std::abs(inner_h(terminal_state(xi, quiet, out.argmin, &reference), target.g) - target.level);
  out.converged = out.residual <= problem.tolerance * std::max(1.0, std::abs(target.level));
  return out;
}

RateResult solve_terminal_exact(const RateProblem& problem, const TerminalTarget& target, const SpectralField& xi,
                                const SolverConfig& cfg, const ReferenceFlow& reference) {
  const SolverConfig quiet = quiet_config(cfg);
  const int steps = cfg.steps();
  const int rank = cfg.noise->rank();
  const std::size_t count = static_cast<std::size_t>(steps) * rank;
  const Control zero(rank, cfg.dt, steps);
  const Eigen::VectorXd offset = flatten(terminal_state(xi, quiet, zero, &reference));
  const Eigen::VectorXd goal = flatten(target.x) - offset;

  Eigen::MatrixXd response(goal.size(), static_cast<Eigen::Index>(count));
  parallel_for_index(count, problem.workers, [&](std::size_t i) {
    response.col(static_cast<Eigen::Index>(i)) = flatten(terminal_state(xi, quiet, unit_control(cfg, i), &reference)) - offset;
  });
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(response);
  const Eigen::VectorXd h = cod.solve(goal);

  RateResult out;
  out.method = "normal-equations";
  out.argmin = Control(rank, cfg.dt, steps, std::vector<double>(h.data(), h.data() + h.size()));
  out.residual = norm_h(terminal_state(xi, quiet, out.argmin, &reference) - target.x);
  out.converged = out.residual <= problem.tolerance * std::max(1.0, norm_h(target.x));
  out.cost = out.converged ? control_cost(out.argmin) : std::numeric_limits<double>::infinity();
  return out;
}

// L-BFGS with Armijo backtracking on the Euclidean coordinates of h.
struct StageOutcome {
  Control h;
  PenaltyValue value;
  int iterations = 0;
  bool converged = false;
};

StageOutcome minimise_stage(const RateProblem& problem, double beta, Control h, const SpectralField& xi,
                            const SolverConfig& cfg, const ReferenceFlow* reference) {
  constexpr std::size_t memory = 10;
  constexpr double armijo = 1e-4;
  const double dt = cfg.dt;
  auto evaluate = [&](const Control& c) { return skeleton_gradient(problem.target, beta, c, xi, cfg, reference); };
  auto euclid = [&](const Control& g) {
    std::vector<double> v(g.values().begin(), g.values().end());
    for (auto& x : v) x *= dt;
    return v;
  };
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  };

  StageOutcome st;
  st.value = evaluate(h);
  std::vector<double> x(h.values().begin(), h.values().end());
  std::vector<double> g = euclid(st.value.gradient);
  std::deque<std::pair<std::vector<double>, std::vector<double>>> pairs;

  for (int it = 0; it < problem.max_iterations; ++it) {
    const double gnorm = l2_norm(st.value.gradient);
    const double hnorm = l2_norm(Control(h.rank(), dt, h.steps(), x));
    if (gnorm <= problem.tolerance * std::max(1.0, hnorm)) {
      st.converged = true;
      break;
    }
    // two-loop recursion
    std::vector<double> d = g;
    std::vector<double> alphas(pairs.size());
    for (std::size_t k = pairs.size(); k-- > 0;) {
      const auto& [s, y] = pairs[k];
      alphas[k] = dot(s, d) / dot(y, s);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= alphas[k] * y[i];
    }
    double gamma = 1.0 / dt;
    if (!pairs.empty()) gamma = dot(pairs.back().first, pairs.back().second) / dot(pairs.back().second, pairs.back().second);
    for (auto& v : d) v *= gamma;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& [s, y] = pairs[k];
      const double b = dot(y, d) / dot(y, s);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i] * (alphas[k] - b);
    }
    for (auto& v : d) v = -v;
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      pairs.clear();
      d = g;
      for (auto& v : d) v = -v / dt;
      slope = dot(g, d);
    }

    double step = 1.0;
    std::vector<double> trial(x.size());
    PenaltyValue next;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * d[i];
      next = evaluate(Control(h.rank(), dt, h.steps(), trial));
      if (next.value <= st.value.value + armijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    st.iterations = it + 1;
    if (!accepted) break;

    std::vector<double> gn = euclid(next.gradient);
    std::vector<double> s(x.size()), y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s[i] = trial[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    if (dot(s, y) > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      pairs.emplace_back(std::move(s), std::move(y));
      if (pairs.size() > memory) pairs.pop_front();
    }
    x = trial;
    g = std::move(gn);
    st.value = std::move(next);
  }
  st.h = Control(h.rank(), dt, h.steps(), std::move(x));
  return st;
}

RateResult solve_penalty(const RateProblem& problem, const SpectralField& xi, const SolverConfig& cfg,
                         const ReferenceFlow* reference) {
  RateResult out;
  out.method = "penalty";
  Control h(cfg.noise->rank(), cfg.dt, cfg.steps());
  bool all_converged = true;
  for (double beta : problem.beta_schedule) {
    StageOutcome st = minimise_stage(problem, beta, std::move(h), xi, cfg, reference);
    out.stages.push_back({beta, st.value.cost, st.value.residual, st.iterations, st.converged});
    all_converged = all_converged && st.converged;
    h = std::move(st.h);
  }
  out.argmin = h;
  const auto& last = out.stages.back();
  out.residual = last.residual;
  double ratio = 0.0;
  double extrapolated = last.cost;
  if (out.stages.size() >= 2) {
    const auto& prev = out.stages[out.stages.size() - 2];
    ratio = prev.residual > 0.0 ? last.residual / prev.residual : 0.0;
    extrapolated = last.cost + (last.cost - prev.cost) * prev.beta / (last.beta - prev.beta);
  }
  const bool stalled = last.residual > problem.tolerance && ratio > 0.5;
  out.converged = all_converged && !stalled;
  out.cost = stalled ? std::numeric_limits<double>::infinity() : std::max(0.0, extrapolated);
  return out;
}

}  // namespace

std::vector<double> observable_response_assembled(const SpectralField& g, const SolverConfig& cfg,
                                                  const ReferenceFlow& reference, int workers) {
  if (!cfg.noise) throw std::invalid_argument("the skeleton needs a noise operator to carry the control");
  if (cfg.scaling.delta != 1) throw std::invalid_argument("observable responses are linear only for delta = 1");
  const SolverConfig quiet = quiet_config(cfg);
  const std::size_t count = static_cast<std::size_t>(cfg.steps()) * cfg.noise->rank();
  const SpectralField zero_xi(cfg.lattice);
  std::vector<double> r(count);
  parallel_for_index(count, workers, [&](std::size_t i) {
    r[i] = inner_h(terminal_state(zero_xi, quiet, unit_control(cfg, i), &reference), g);
  });
  return r;
}

RateResult rate_function(const RateProblem& problem, const SpectralField& xi, const SolverConfig& cfg,
                         const ReferenceFlow* reference) {
  problem.validate();
  cfg.validate();
  if (!cfg.noise) throw std::invalid_argument("the rate function needs a noise operator");
  if (cfg.scaling.delta == 1) {
    if (reference == nullptr) throw std::invalid_argument("delta = 1 needs the NSE reference trajectory u");
    if (const auto* o = std::get_if<ObservableTarget>(&problem.target)) {
      return solve_observable_exact(problem, *o, xi, cfg, *reference);
    }
    const std::size_t count = static_cast<std::size_t>(cfg.steps()) * cfg.noise->rank();
    if (count <= static_cast<std::size_t>(problem.assembly_limit)) {
      return solve_terminal_exact(problem, std::get<TerminalTarget>(problem.target), xi, cfg, *reference);
    }
  }
  return solve_penalty(problem, xi, cfg, reference);
}

}  // namespace lans
