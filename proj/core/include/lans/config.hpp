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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lans/noise.hpp"
#include "lans/paths.hpp"
#include "lans/solver.hpp"

namespace lans {

/// Malformed or invalid run configuration; messages carry "source:line:".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialSpec {
  std::string kind = "taylor-green";  // taylor-green | single-shear | random | zero | file
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  double decay = 2.0;
  Wavevector mode{0, 1};
  std::string path;
};

struct NoiseSpec {
  std::string variant = "none";  // none | additive | multiplicative
  std::vector<double> sigma;
  std::vector<ModeSpec> modes;
  std::vector<ModeSpec> probes;
  std::vector<double> offsets;
};

struct ControlSpec {
  std::string kind = "zero";  // zero | constant | sine | file
  std::vector<double> values;  // per-coordinate amplitude
  int frequency = 1;          // sine: values_j sin(2 pi frequency t / T)
  std::string path;
};

struct RateSpec {
  std::string target = "observable";  // observable | terminal
  ModeSpec observable{{1, 0}, Phase::cosine};
  double level = 0.1;
  std::string terminal_path;
  std::vector<double> beta{1e1, 1e2, 1e3, 1e4};
  double tolerance = 1e-6;
  int max_iterations = 400;
  int assembly_limit = 4096;
};

struct TailsSpec {
  std::vector<double> alphas{0.1, 0.05, 0.025};
  int samples = 1000;
  std::string statistic = "sup-norm";  // sup-norm | terminal-norm | terminal-observable
  std::vector<double> thresholds{0.1};
  ModeSpec observable{{1, 0}, Phase::cosine};
  bool compare_rate = false;
};

struct ConvergeSpec {
  std::vector<double> alphas{0.4, 0.2, 0.1, 0.05};
  int samples = 64;
};

struct ProbeSpec {
  std::vector<int> n_list{2, 4, 8, 16, 32};
  std::vector<double> hbar;  // empty: unit vector on the first coordinate
  int basis_count = 0;       // 0: enough to resolve the largest oscillation
};

struct VerifySpec {
  int trials = 100;
  std::vector<double> alphas{0.05, 0.3, 0.9};
  int calibration_n = 16;
  int calibration_trials = 1000;
  int check_trials = 1000;
};

struct RunConfig {
  std::uint64_t seed = 1;
  int n = 32;
  double dt = 1e-3;
  double horizon = 1.0;
  int record_stride = 1;
  double alpha = 0.1;
  int delta = 0;
  double kappa = 0.25;
  double viscosity = 1.0;
  InitialSpec initial;
  NoiseSpec noise;
  ControlSpec control;
  RateSpec rate;
  TailsSpec tails;
  ConvergeSpec converge;
  ProbeSpec probe;
  VerifySpec verify;
  std::string format = "csv";  // csv | ndjson
  bool snapshots = false;
};

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown preset.
void apply_preset(RunConfig& cfg, std::string_view name);
/// Overlays a YAML document; only the keys it contains change.
void apply_yaml_text(RunConfig& cfg, std::string_view text, std::string_view source);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
/// "section.key=value" (or "seed=value"), value in YAML syntax.
void apply_override(RunConfig& cfg, std::string_view assignment);
/// Cross-field checks; throws ConfigError.
void validate(const RunConfig& cfg);
/// Fully resolved configuration; reapplying it reproduces cfg.
std::string to_yaml(const RunConfig& cfg);

SolverConfig make_solver_config(const RunConfig& cfg);
SpectralField make_initial(const RunConfig& cfg, const LatticePtr& lattice);
std::optional<NoiseOperator> make_noise(const RunConfig& cfg, const LatticePtr& lattice);
Control make_control(const RunConfig& cfg, int rank);

/// (sin x1 cos x2, -cos x1 sin x2) scaled by amplitude.
SpectralField taylor_green(const LatticePtr& lattice, double amplitude);

}  // namespace lans
