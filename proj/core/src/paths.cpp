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

#include "lans/paths.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lans/format.hpp"

namespace lans {

TimeGrid::TimeGrid(int rank, double dt, int steps) : rank_(rank), dt_(dt), steps_(steps) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
}

bool TimeGrid::same_grid(const TimeGrid& other) const {
  return rank_ == other.rank_ && steps_ == other.steps_ && dt_ == other.dt_;
}

WienerPath sample_wiener(int rank, double dt, int steps, std::uint64_t seed) {
  WienerPath w;
  static_cast<TimeGrid&>(w) = TimeGrid(rank, dt, steps);
  w.seed = seed;
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(dt));
  w.increments.resize(static_cast<std::size_t>(rank) * static_cast<std::size_t>(steps));
  for (auto& x : w.increments) x = normal(engine);
  return w;
}

Control::Control(int rank, double dt, int steps)
    : TimeGrid(rank, dt, steps), values_(static_cast<std::size_t>(rank) * static_cast<std::size_t>(steps), 0.0) {}

Control::Control(int rank, double dt, int steps, std::vector<double> values)
    : TimeGrid(rank, dt, steps), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(rank) * static_cast<std::size_t>(steps)) {
    throw std::invalid_argument("control values: expected rank * steps entries");
  }
}

Control Control::from_function(int rank, double dt, int steps, const std::function<double(double, int)>& f) {
  Control h(rank, dt, steps);
  for (int n = 0; n < steps; ++n) {
    const double t = (n + 0.5) * dt;
    for (int j = 0; j < rank; ++j) h.values_[static_cast<std::size_t>(n) * rank + j] = f(t, j);
  }
  return h;
}

Control operator+(const Control& a, const Control& b) {
  if (!a.same_grid(b)) throw std::invalid_argument("control grid mismatch");
  Control out = a;
  for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] += b.values_[i];
  return out;
}

Control operator*(double s, const Control& a) {
  Control out = a;
  for (auto& v : out.values_) v *= s;
  return out;
}

double control_cost(const Control& h) {
  double acc = 0.0;
  for (double v : h.values()) acc += v * v;
  return 0.5 * h.dt() * acc;
}

double weak_distance(const Control& h, const Control& g, int basis_count) {
  if (!h.same_grid(g)) throw std::invalid_argument("control grid mismatch");
  if (basis_count < 0) throw std::invalid_argument("basis_count must be >= 0");
  const int rank = h.rank();
  const int steps = h.steps();
  const double dt = h.dt();
  const double horizon = h.horizon();
  const double norm = std::sqrt(2.0 / horizon);
  const double eps = std::numeric_limits<double>::epsilon();
  const double gamma = 2.0 * (steps + 8) * eps;

  double distance = 0.0;
  double weight = 1.0;
  for (int k = 1; k <= basis_count; ++k) {
    weight *= 0.5;
    const int m = (k - 1) / rank + 1;
    const int j = (k - 1) % rank;
    const double mu = m * std::numbers::pi / horizon;
    const double cell = norm * (2.0 / mu) * std::sin(0.5 * mu * dt);
    double coeff = 0.0;
    double magnitude = 0.0;
    for (int n = 0; n < steps; ++n) {
      const double diff = h.at(n)[j] - g.at(n)[j];
      const double basis = cell * std::sin(mu * (n + 0.5) * dt);
      coeff += diff * basis;
      magnitude += std::abs(diff * basis);
    }
    if (std::abs(coeff) <= gamma * magnitude) continue;
    distance += weight * std::abs(coeff);
  }
  return distance;
}

void write_path_csv(std::ostream& out, const TimeGrid& grid, std::span<const double> values) {
  out << "# dt=" << format_double(grid.dt()) << " steps=" << grid.steps() << " rank=" << grid.rank() << "\n";
  out << "step,j,value\n";
  for (int n = 0; n < grid.steps(); ++n) {
    for (int j = 0; j < grid.rank(); ++j) {
      out << n << ',' << j << ',' << format_double(values[static_cast<std::size_t>(n) * grid.rank() + j]) << '\n';
    }
  }
}

Control read_control_csv(std::istream& in, double dt) {
  std::string line;
  int lineno = 0;
  int max_step = -1, max_j = -1;
  struct Row {
    int n, j;
    double v;
  };
  std::vector<Row> rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "step,j,value") {
        throw std::runtime_error("control csv line " + std::to_string(lineno) + ": expected header step,j,value");
      }
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
      throw std::runtime_error("control csv line " + std::to_string(lineno) + ": expected 3 columns");
    }
    Row r{std::stoi(a), std::stoi(b), parse_double(c)};
    if (r.n < 0 || r.j < 0) throw std::runtime_error("control csv line " + std::to_string(lineno) + ": negative index");
    max_step = std::max(max_step, r.n);
    max_j = std::max(max_j, r.j);
    rows.push_back(r);
  }
  if (rows.empty()) throw std::runtime_error("control csv has no rows");
  const std::size_t cells = static_cast<std::size_t>(max_j + 1) * (max_step + 1);
  if (rows.size() != cells) {
    throw std::runtime_error("control csv must list every (step, j) once: expected " + std::to_string(cells) +
                             " rows, got " + std::to_string(rows.size()));
  }
  std::vector<double> values(cells, 0.0);
  std::vector<bool> seen(cells, false);
  for (const auto& r : rows) {
    const std::size_t i = static_cast<std::size_t>(r.n) * (max_j + 1) + r.j;
    if (seen[i]) throw std::runtime_error("control csv repeats step " + std::to_string(r.n) + ", j " + std::to_string(r.j));
    seen[i] = true;
    values[i] = r.v;
  }
  return Control(max_j + 1, dt, max_step + 1, std::move(values));
}

}  // namespace lans
