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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace lans {

/// Piecewise-constant-in-time array of J real coordinates on a uniform grid.
/// Shared layout of Wiener increments and deterministic controls.
class TimeGrid {
 public:
  TimeGrid() = default;
  TimeGrid(int rank, double dt, int steps);

  int rank() const { return rank_; }
  double dt() const { return dt_; }
  int steps() const { return steps_; }
  double horizon() const { return dt_ * steps_; }

  bool same_grid(const TimeGrid& other) const;

 protected:
  int rank_ = 0;
  double dt_ = 0.0;
  int steps_ = 0;
};

/// Increments of a J-dimensional standard Brownian motion, dW ~ N(0, dt).
/// Reproducible bit-for-bit from (rank, dt, steps, seed).
struct WienerPath : TimeGrid {
  std::uint64_t seed = 0;
  std::vector<double> increments;  // step-major, rank entries per step

  std::span<const double> step(int n) const {
    return {increments.data() + static_cast<std::size_t>(n) * rank_, static_cast<std::size_t>(rank_)};
  }
};

/// Throws std::invalid_argument unless dt > 0, steps >= 1, rank >= 1.
WienerPath sample_wiener(int rank, double dt, int steps, std::uint64_t seed);

/// Deterministic control h in L^2(0, T; R^J), constant on each time step.
class Control : public TimeGrid {
 public:
  Control() = default;
  Control(int rank, double dt, int steps);  // zero control
  Control(int rank, double dt, int steps, std::vector<double> values);

  /// Samples f(t, j) at step midpoints.
  static Control from_function(int rank, double dt, int steps, const std::function<double(double, int)>& f);

  std::span<const double> at(int n) const {
    return {values_.data() + static_cast<std::size_t>(n) * rank_, static_cast<std::size_t>(rank_)};
  }
  std::span<const double> values() const { return values_; }

  friend Control operator+(const Control& a, const Control& b);
  friend Control operator*(double s, const Control& a);

 private:
  std::vector<double> values_;
};

/// (1/2) sum_n dt sum_j h_j^2.
double control_cost(const Control& h);

/// Truncated weak-topology metric
///   d(h, g) = sum_{k=1}^{basis_count} 2^{-k} |int_0^T (h - g, e_k)_K dt|
/// with e_k running through sqrt(2/T) sin(m pi t / T) x (unit vector j),
/// ordered k = (m - 1) J + j. Integrals are exact for piecewise-constant
/// controls. A coefficient whose magnitude is below its floating-point
/// accumulation error bound is counted as zero.
double weak_distance(const Control& h, const Control& g, int basis_count);

/// CSV (step,j,value) writers/readers shared by controls and Wiener paths.
void write_path_csv(std::ostream& out, const TimeGrid& grid, std::span<const double> values);
Control read_control_csv(std::istream& in, double dt);

}  // namespace lans
