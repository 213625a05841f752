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

#include "lans/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "lans/field_io.hpp"
#include "lans/random.hpp"

namespace lans {

namespace {

constexpr std::string_view kPresetTaylorGreen = R"(
lattice: {n: 32}
time: {dt: 1.0e-3, T: 0.5, record_stride: 10}
model: {alpha: 0.1, delta: 0, kappa: 0.25, viscosity: 1.0}
initial: {kind: taylor-green, amplitude: 1.0}
noise: {variant: none}
)";

constexpr std::string_view kPresetSingleShear = R"(
lattice: {n: 32}
time: {dt: 1.0e-3, T: 0.5, record_stride: 10}
model: {alpha: 0.1, delta: 0, kappa: 0.25, viscosity: 1.0}
initial: {kind: single-shear, amplitude: 1.0, mode: [0, 1]}
noise: {variant: none}
)";

// Two-coordinate noise on the +-(2,2) shell: the dynamics reduce exactly to
// an isotropic Ornstein-Uhlenbeck process with decay rate 8.
constexpr std::string_view kPresetOuToy = R"(
seed: 20261016
lattice: {n: 8}
time: {dt: 0.01, T: 0.5, record_stride: 1}
model: {alpha: 0.025, delta: 0, kappa: 0.25, viscosity: 1.0}
initial: {kind: zero}
noise:
  variant: additive
  sigma: [1.0, 1.0]
  modes: [[2, 2, cos], [2, 2, sin]]
rate: {target: observable, observable: [2, 2, cos], level: 0.095}
tails:
  alphas: [0.1, 0.05, 0.025]
  samples: 100000
  statistic: terminal-norm
  thresholds: [0.095]
  observable: [2, 2, cos]
  compare_rate: true
)";

constexpr std::string_view kPresetUnifiedDefault = R"(
seed: 20261016
lattice: {n: 32}
time: {dt: 1.0e-3, T: 1.0, record_stride: 10}
model: {alpha: 0.1, delta: 0, kappa: 0.25, viscosity: 1.0}
initial: {kind: random, amplitude: 1.0, seed: 7, decay: 2.0}
noise:
  variant: additive
  sigma: [0.005, 0.005, 0.005, 0.005]
  modes: [[1, 0, cos], [0, 1, sin], [1, 1, cos], [2, 1, sin]]
control: {kind: zero}
rate: {target: observable, observable: [1, 0, cos], level: 0.1}
converge: {alphas: [0.4, 0.2, 0.1, 0.05], samples: 64}
probe: {n_list: [2, 4, 8, 16, 32], hbar: [1.0, 0.0, 0.0, 0.0]}
)";

struct Preset {
  std::string_view name;
  std::string_view text;
};
constexpr Preset kPresets[] = {{"taylor-green", kPresetTaylorGreen},
                               {"single-shear", kPresetSingleShear},
                               {"ou-toy", kPresetOuToy},
                               {"unified-default", kPresetUnifiedDefault}};

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& msg) const {
    std::ostringstream out;
    out << source_;
    if (node.IsDefined() && node.Mark().line >= 0) out << ':' << node.Mark().line + 1;
    out << ": " << msg;
    throw ConfigError(out.str());
  }

  template <class T>
  T get(const YAML::Node& node, const std::string& key, const char* type) const {
    if (!node.IsScalar()) fail(node, key + ": expected " + type);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, key + ": expected " + type + ", got '" + node.Scalar() + "'");
    }
  }

  double real(const YAML::Node& n, const std::string& key) const { return get<double>(n, key, "a number"); }
  int integer(const YAML::Node& n, const std::string& key) const { return get<int>(n, key, "an integer"); }
  std::string text(const YAML::Node& n, const std::string& key) const { return get<std::string>(n, key, "a string"); }
  bool flag(const YAML::Node& n, const std::string& key) const { return get<bool>(n, key, "true or false"); }
  std::uint64_t seed(const YAML::Node& n, const std::string& key) const {
    return get<std::uint64_t>(n, key, "a non-negative integer");
  }

  std::string choice(const YAML::Node& n, const std::string& key, std::initializer_list<std::string_view> options) const {
    const std::string v = text(n, key);
    for (auto o : options) {
      if (v == o) return v;
    }
    std::string list;
    for (auto o : options) list += (list.empty() ? "" : ", ") + std::string(o);
    fail(n, key + ": '" + v + "' is not one of {" + list + "}");
  }

  template <class F>
  auto list(const YAML::Node& n, const std::string& key, F&& item) const {
    if (!n.IsSequence()) fail(n, key + ": expected a list");
    std::vector<decltype(item(n[0], key))> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(item(n[i], key + "[" + std::to_string(i) + "]"));
    return out;
  }
  std::vector<double> reals(const YAML::Node& n, const std::string& key) const {
    return list(n, key, [&](const YAML::Node& x, const std::string& k) { return real(x, k); });
  }
  std::vector<int> integers(const YAML::Node& n, const std::string& key) const {
    return list(n, key, [&](const YAML::Node& x, const std::string& k) { return integer(x, k); });
  }
  Wavevector wavevector(const YAML::Node& n, const std::string& key) const {
    if (!n.IsSequence() || n.size() != 2) fail(n, key + ": expected [k1, k2]");
    return {integer(n[0], key), integer(n[1], key)};
  }
  ModeSpec mode(const YAML::Node& n, const std::string& key) const {
    if (!n.IsSequence() || n.size() != 3) fail(n, key + ": expected [k1, k2, cos|sin]");
    const std::string p = choice(n[2], key, {"cos", "sin"});
    return {{integer(n[0], key), integer(n[1], key)}, p == "cos" ? Phase::cosine : Phase::sine};
  }
  std::vector<ModeSpec> modes(const YAML::Node& n, const std::string& key) const {
    return list(n, key, [&](const YAML::Node& x, const std::string& k) { return mode(x, k); });
  }

  using Handlers = std::map<std::string, std::function<void(const YAML::Node&, const std::string&)>>;

  void section(const YAML::Node& sec, const std::string& name, const Handlers& handlers) const {
    if (!sec.IsMap()) fail(sec, name + ": expected a mapping");
    for (const auto& kv : sec) {
      const std::string key = kv.first.Scalar();
      auto it = handlers.find(key);
      if (it == handlers.end()) fail(kv.first, "unknown key '" + name + "." + key + "'");
      it->second(kv.second, name + "." + key);
    }
  }

 private:
  std::string source_;
};

void apply_node(RunConfig& c, const YAML::Node& root, const Reader& r) {
  if (!root.IsDefined() || root.IsNull()) return;
  if (!root.IsMap()) r.fail(root, "configuration must be a mapping of sections");
  using H = Reader::Handlers;
  const std::map<std::string, H> sections{
      {"lattice", H{{"n", [&](auto& n, auto& k) { c.n = r.integer(n, k); }}}},
      {"time",
       H{{"dt", [&](auto& n, auto& k) { c.dt = r.real(n, k); }},
         {"T", [&](auto& n, auto& k) { c.horizon = r.real(n, k); }},
         {"record_stride", [&](auto& n, auto& k) { c.record_stride = r.integer(n, k); }}}},
      {"model",
       H{{"alpha", [&](auto& n, auto& k) { c.alpha = r.real(n, k); }},
         {"delta", [&](auto& n, auto& k) { c.delta = r.integer(n, k); }},
         {"kappa", [&](auto& n, auto& k) { c.kappa = r.real(n, k); }},
         {"viscosity", [&](auto& n, auto& k) { c.viscosity = r.real(n, k); }}}},
      {"initial",
       H{{"kind", [&](auto& n, auto& k) {
           c.initial.kind = r.choice(n, k, {"taylor-green", "single-shear", "random", "zero", "file"});
         }},
         {"amplitude", [&](auto& n, auto& k) { c.initial.amplitude = r.real(n, k); }},
         {"seed", [&](auto& n, auto& k) { c.initial.seed = r.seed(n, k); }},
         {"decay", [&](auto& n, auto& k) { c.initial.decay = r.real(n, k); }},
         {"mode", [&](auto& n, auto& k) { c.initial.mode = r.wavevector(n, k); }},
         {"path", [&](auto& n, auto& k) { c.initial.path = r.text(n, k); }}}},
      {"noise",
       H{{"variant", [&](auto& n, auto& k) { c.noise.variant = r.choice(n, k, {"none", "additive", "multiplicative"}); }},
         {"sigma", [&](auto& n, auto& k) { c.noise.sigma = r.reals(n, k); }},
         {"modes", [&](auto& n, auto& k) { c.noise.modes = r.modes(n, k); }},
         {"probes", [&](auto& n, auto& k) { c.noise.probes = r.modes(n, k); }},
         {"offsets", [&](auto& n, auto& k) { c.noise.offsets = r.reals(n, k); }}}},
      {"control",
       H{{"kind", [&](auto& n, auto& k) { c.control.kind = r.choice(n, k, {"zero", "constant", "sine", "file"}); }},
         {"values", [&](auto& n, auto& k) { c.control.values = r.reals(n, k); }},
         {"frequency", [&](auto& n, auto& k) { c.control.frequency = r.integer(n, k); }},
         {"path", [&](auto& n, auto& k) { c.control.path = r.text(n, k); }}}},
      {"rate",
       H{{"target", [&](auto& n, auto& k) { c.rate.target = r.choice(n, k, {"observable", "terminal"}); }},
         {"observable", [&](auto& n, auto& k) { c.rate.observable = r.mode(n, k); }},
         {"level", [&](auto& n, auto& k) { c.rate.level = r.real(n, k); }},
         {"terminal_path", [&](auto& n, auto& k) { c.rate.terminal_path = r.text(n, k); }},
         {"beta", [&](auto& n, auto& k) { c.rate.beta = r.reals(n, k); }},
         {"tolerance", [&](auto& n, auto& k) { c.rate.tolerance = r.real(n, k); }},
         {"max_iterations", [&](auto& n, auto& k) { c.rate.max_iterations = r.integer(n, k); }},
         {"assembly_limit", [&](auto& n, auto& k) { c.rate.assembly_limit = r.integer(n, k); }}}},
      {"tails",
       H{{"alphas", [&](auto& n, auto& k) { c.tails.alphas = r.reals(n, k); }},
         {"samples", [&](auto& n, auto& k) { c.tails.samples = r.integer(n, k); }},
         {"statistic", [&](auto& n, auto& k) {
           c.tails.statistic = r.choice(n, k, {"sup-norm", "terminal-norm", "terminal-observable"});
         }},
         {"thresholds", [&](auto& n, auto& k) { c.tails.thresholds = r.reals(n, k); }},
         {"observable", [&](auto& n, auto& k) { c.tails.observable = r.mode(n, k); }},
         {"compare_rate", [&](auto& n, auto& k) { c.tails.compare_rate = r.flag(n, k); }}}},
      {"converge",
       H{{"alphas", [&](auto& n, auto& k) { c.converge.alphas = r.reals(n, k); }},
         {"samples", [&](auto& n, auto& k) { c.converge.samples = r.integer(n, k); }}}},
      {"probe",
       H{{"n_list", [&](auto& n, auto& k) { c.probe.n_list = r.integers(n, k); }},
         {"hbar", [&](auto& n, auto& k) { c.probe.hbar = r.reals(n, k); }},
         {"basis_count", [&](auto& n, auto& k) { c.probe.basis_count = r.integer(n, k); }}}},
      {"verify",
       H{{"trials", [&](auto& n, auto& k) { c.verify.trials = r.integer(n, k); }},
         {"alphas", [&](auto& n, auto& k) { c.verify.alphas = r.reals(n, k); }},
         {"calibration_n", [&](auto& n, auto& k) { c.verify.calibration_n = r.integer(n, k); }},
         {"calibration_trials", [&](auto& n, auto& k) { c.verify.calibration_trials = r.integer(n, k); }},
         {"check_trials", [&](auto& n, auto& k) { c.verify.check_trials = r.integer(n, k); }}}},
      {"output",
       H{{"format", [&](auto& n, auto& k) { c.format = r.choice(n, k, {"csv", "ndjson"}); }},
         {"snapshots", [&](auto& n, auto& k) { c.snapshots = r.flag(n, k); }}}},
  };
  for (const auto& kv : root) {
    const std::string key = kv.first.Scalar();
    if (key == "seed") {
      c.seed = r.seed(kv.second, key);
      continue;
    }
    auto it = sections.find(key);
    if (it == sections.end()) r.fail(kv.first, "unknown section '" + key + "'");
    r.section(kv.second, key, it->second);
  }
}

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string seq(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

std::string seq(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

std::string mode_text(const ModeSpec& m) {
  return "[" + std::to_string(m.k.k1) + ", " + std::to_string(m.k.k2) + ", " +
         (m.phase == Phase::cosine ? "cos" : "sin") + "]";
}

std::string modes_text(const std::vector<ModeSpec>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + mode_text(v[i]);
  return s + "]";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

void apply_preset(RunConfig& cfg, std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) {
      apply_yaml_text(cfg, p.text, "preset " + std::string(name));
      return;
    }
  }
  std::string list;
  for (const auto& p : kPresets) list += (list.empty() ? "" : ", ") + std::string(p.name);
  throw ConfigError("unknown preset '" + std::string(name) + "' (available: " + list + ")");
}

void apply_yaml_text(RunConfig& cfg, std::string_view text, std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(std::string(source) + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  apply_node(cfg, root, Reader(source));
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_yaml_text(cfg, buf.str(), path.string());
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("--set " + std::string(assignment) + ": expected section.key=value");
  }
  const std::string path(assignment.substr(0, eq));
  const std::string value(assignment.substr(eq + 1));
  const auto dot = path.find('.');
  std::string doc;
  if (dot == std::string::npos) {
    doc = path + ": " + value;
  } else {
    doc = path.substr(0, dot) + ":\n  " + path.substr(dot + 1) + ": " + value;
  }
  apply_yaml_text(cfg, doc, "--set " + path);
}

void validate(const RunConfig& c) {
  auto bad = [](const std::string& m) { throw ConfigError("invalid configuration: " + m); };
  if (c.n < 4 || c.n % 2 != 0) bad("lattice.n must be even and >= 4");
  if (!(c.dt > 0.0)) bad("time.dt must be positive");
  if (!(c.horizon > 0.0)) bad("time.T must be positive");
  {
    const double ratio = c.horizon / c.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) bad("time.T must be an integer multiple of time.dt");
  }
  if (c.record_stride < 1) bad("time.record_stride must be >= 1");
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) bad("model.alpha must lie in [0, 1]");
  if (c.delta != 0 && c.delta != 1) bad("model.delta must be 0 or 1");
  if (!(c.kappa > 0.0 && c.kappa < 0.5)) bad("model.kappa must lie in (0, 1/2)");
  if (!(c.viscosity > 0.0)) bad("model.viscosity must be positive");
  if (c.initial.kind == "file" && c.initial.path.empty()) bad("initial.path is required for kind file");
  if (c.noise.variant != "none") {
    const std::size_t j = c.noise.sigma.size();
    if (j == 0) bad("noise.sigma must list one amplitude per coordinate");
    if (c.noise.modes.size() != j) bad("noise.modes must have as many entries as noise.sigma");
    if (c.noise.variant == "multiplicative" && (c.noise.probes.size() != j || c.noise.offsets.size() != j)) {
      bad("multiplicative noise needs noise.probes and noise.offsets with one entry per coordinate");
    }
  }
  if (c.control.kind == "file" && c.control.path.empty()) bad("control.path is required for kind file");
  if (c.rate.target == "terminal" && c.rate.terminal_path.empty()) bad("rate.terminal_path is required for target terminal");
  if (c.rate.beta.empty()) bad("rate.beta must not be empty");
  for (std::size_t i = 1; i < c.rate.beta.size(); ++i) {
    if (!(c.rate.beta[i] > c.rate.beta[i - 1])) bad("rate.beta must be increasing");
  }
  if (!(c.rate.tolerance > 0.0)) bad("rate.tolerance must be positive");
  if (c.rate.max_iterations < 1) bad("rate.max_iterations must be >= 1");
  if (c.tails.samples < 1) bad("tails.samples must be >= 1");
  if (c.tails.alphas.empty() || c.tails.thresholds.empty()) bad("tails.alphas and tails.thresholds must not be empty");
  for (double a : c.tails.alphas) {
    if (!(a > 0.0 && a <= 1.0)) bad("tails.alphas must lie in (0, 1]");
  }
  if (c.converge.samples < 1) bad("converge.samples must be >= 1");
  if (c.converge.alphas.empty()) bad("converge.alphas must not be empty");
  for (std::size_t i = 0; i < c.converge.alphas.size(); ++i) {
    if (!(c.converge.alphas[i] > 0.0 && c.converge.alphas[i] <= 1.0)) bad("converge.alphas must lie in (0, 1]");
    if (i > 0 && !(c.converge.alphas[i] < c.converge.alphas[i - 1])) bad("converge.alphas must be decreasing");
  }
  for (int k : c.probe.n_list) {
    if (k < 0) bad("probe.n_list entries must be >= 0");
  }
  if (c.probe.basis_count < 0) bad("probe.basis_count must be >= 0");
  if (c.verify.trials < 1 || c.verify.calibration_trials < 1 || c.verify.check_trials < 1) {
    bad("verify trial counts must be >= 1");
  }
  if (c.verify.calibration_n < 4 || c.verify.calibration_n % 2 != 0) bad("verify.calibration_n must be even and >= 4");
}

std::string to_yaml(const RunConfig& c) {
  std::ostringstream o;
  o << "seed: " << c.seed << "\n";
  o << "lattice:\n  n: " << c.n << "\n";
  o << "time:\n  dt: " << num(c.dt) << "\n  T: " << num(c.horizon) << "\n  record_stride: " << c.record_stride << "\n";
  o << "model:\n  alpha: " << num(c.alpha) << "\n  delta: " << c.delta << "\n  kappa: " << num(c.kappa)
    << "\n  viscosity: " << num(c.viscosity) << "\n";
  o << "initial:\n  kind: " << c.initial.kind << "\n  amplitude: " << num(c.initial.amplitude)
    << "\n  seed: " << c.initial.seed << "\n  decay: " << num(c.initial.decay) << "\n  mode: ["
    << c.initial.mode.k1 << ", " << c.initial.mode.k2 << "]\n  path: " << quoted(c.initial.path) << "\n";
  o << "noise:\n  variant: " << c.noise.variant << "\n  sigma: " << seq(c.noise.sigma)
    << "\n  modes: " << modes_text(c.noise.modes) << "\n  probes: " << modes_text(c.noise.probes)
    << "\n  offsets: " << seq(c.noise.offsets) << "\n";
  o << "control:\n  kind: " << c.control.kind << "\n  values: " << seq(c.control.values)
    << "\n  frequency: " << c.control.frequency << "\n  path: " << quoted(c.control.path) << "\n";
  o << "rate:\n  target: " << c.rate.target << "\n  observable: " << mode_text(c.rate.observable)
    << "\n  level: " << num(c.rate.level) << "\n  terminal_path: " << quoted(c.rate.terminal_path)
    << "\n  beta: " << seq(c.rate.beta) << "\n  tolerance: " << num(c.rate.tolerance)
    << "\n  max_iterations: " << c.rate.max_iterations << "\n  assembly_limit: " << c.rate.assembly_limit << "\n";
  o << "tails:\n  alphas: " << seq(c.tails.alphas) << "\n  samples: " << c.tails.samples
    << "\n  statistic: " << c.tails.statistic << "\n  thresholds: " << seq(c.tails.thresholds)
    << "\n  observable: " << mode_text(c.tails.observable)
    << "\n  compare_rate: " << (c.tails.compare_rate ? "true" : "false") << "\n";
  o << "converge:\n  alphas: " << seq(c.converge.alphas) << "\n  samples: " << c.converge.samples << "\n";
  o << "probe:\n  n_list: " << seq(c.probe.n_list) << "\n  hbar: " << seq(c.probe.hbar)
    << "\n  basis_count: " << c.probe.basis_count << "\n";
  o << "verify:\n  trials: " << c.verify.trials << "\n  alphas: " << seq(c.verify.alphas)
    << "\n  calibration_n: " << c.verify.calibration_n << "\n  calibration_trials: " << c.verify.calibration_trials
    << "\n  check_trials: " << c.verify.check_trials << "\n";
  o << "output:\n  format: " << c.format << "\n  snapshots: " << (c.snapshots ? "true" : "false") << "\n";
  return o.str();
}

SpectralField taylor_green(const LatticePtr& lattice, double amplitude) {
  std::vector<Vec2c> coeffs(lattice->mode_count(), Vec2c{});
  // sin(x1) cos(x2) and -cos(x1) sin(x2) have coefficients (s1, -s2) / (4i) at (s1, s2) = (+-1, +-1).
  const Complex quarter_over_i(0.0, -0.25 * amplitude);
  for (int s1 : {-1, 1}) {
    for (int s2 : {-1, 1}) {
      const auto idx = lattice->index_of({s1, s2});
      if (!idx) throw std::invalid_argument("lattice too small for the Taylor-Green vortex");
      coeffs[*idx] = {static_cast<double>(s1) * quarter_over_i, static_cast<double>(-s2) * quarter_over_i};
    }
  }
  return SpectralField(lattice, std::move(coeffs));
}

SolverConfig make_solver_config(const RunConfig& c) {
  validate(c);
  SolverConfig s;
  s.lattice = make_lattice(c.n);
  s.dt = c.dt;
  s.horizon = c.horizon;
  s.alpha = c.alpha;
  s.scaling = ScalingLaw{c.kappa, c.delta};
  s.noise = make_noise(c, s.lattice);
  s.viscosity = c.viscosity;
  s.record_stride = c.record_stride;
  s.keep_snapshots = c.snapshots;
  return s;
}

SpectralField make_initial(const RunConfig& c, const LatticePtr& lattice) {
  const auto& init = c.initial;
  if (init.kind == "zero") return SpectralField(lattice);
  if (init.kind == "taylor-green") return taylor_green(lattice, init.amplitude);
  if (init.kind == "single-shear") return init.amplitude * single_mode(lattice, init.mode, Phase::cosine);
  if (init.kind == "random") {
    Engine engine = make_engine(init.seed, 0);
    return init.amplitude * random_field(lattice, engine, init.decay, true);
  }
  SpectralField xi = read_field_table(init.path);
  if (!(xi.lattice() == *lattice)) throw ConfigError(init.path + ": field lattice differs from lattice.n");
  return xi;
}

std::optional<NoiseOperator> make_noise(const RunConfig& c, const LatticePtr& lattice) {
  if (c.noise.variant == "none") return std::nullopt;
  try {
    const auto variant = c.noise.variant == "additive" ? NoiseVariant::additive : NoiseVariant::multiplicative;
    return NoiseOperator::from_modes(lattice, variant, c.noise.sigma, c.noise.modes, c.noise.probes, c.noise.offsets);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid noise specification: ") + e.what());
  }
}

Control make_control(const RunConfig& c, int rank) {
  const int steps = static_cast<int>(std::round(c.horizon / c.dt));
  const auto& spec = c.control;
  if (spec.kind == "zero") return Control(rank, c.dt, steps);
  if (spec.kind == "file") {
    std::ifstream in(spec.path);
    if (!in) throw ConfigError(spec.path + ": cannot open control file");
    Control h = read_control_csv(in, c.dt);
    if (h.rank() != rank || h.steps() != steps) throw ConfigError(spec.path + ": control grid differs from the run");
    return h;
  }
  if (static_cast<int>(spec.values.size()) != rank) {
    throw ConfigError("control.values must have one entry per noise coordinate");
  }
  const double omega = 2.0 * std::numbers::pi * spec.frequency / c.horizon;
  const bool sine = spec.kind == "sine";
  return Control::from_function(rank, c.dt, steps, [&](double t, int j) {
    return sine ? spec.values[j] * std::sin(omega * t) : spec.values[j];
  });
}

}  // namespace lans
