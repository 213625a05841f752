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

#include "lans/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include "commands.hpp"

namespace lans {

namespace {

namespace fs = std::filesystem;

using Command = std::function<cli::CommandOutput(const RunConfig&, int)>;

struct Overrides {
  std::optional<int> n;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<double> alpha;
  std::optional<int> delta;
  std::optional<int> trials;
  std::optional<int> samples;
};

struct Subcommand {
  const char* name;
  const char* help;
  Command run;
  bool trials = false;
  bool samples = false;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> list{
      {"verify-identities", "Check bilinear identities, J_alpha bounds and noise certificates", cli::verify_identities,
       true, false},
      {"simulate-nse", "Deterministic Navier-Stokes run", cli::simulate_nse},
      {"simulate-lans", "Stochastic LANS-alpha run", cli::simulate_lans},
      {"simulate-unified", "Controlled stochastic run of the rescaled system", cli::simulate_unified},
      {"skeleton", "Deterministic skeleton driven by a control", cli::skeleton},
      {"rate", "Rate function by constrained minimisation", cli::rate},
      {"mc-tails", "Monte Carlo tail probabilities", cli::mc_tails, false, true},
      {"converge", "LANS-alpha to NSE convergence study", cli::converge, false, true},
      {"weak-probe", "Skeleton continuity under weakly convergent controls", cli::weak_probe},
      {"mdp-check", "Moderate-deviation rescaling diagnostic", cli::mdp_check},
  };
  return list;
}

void apply_overrides(RunConfig& rc, const std::string& sub, const Overrides& o) {
  if (o.n) rc.n = *o.n;
  if (o.dt) rc.dt = *o.dt;
  if (o.horizon) rc.horizon = *o.horizon;
  if (o.alpha) rc.alpha = *o.alpha;
  if (o.delta) rc.delta = *o.delta;
  if (o.trials) rc.verify.trials = *o.trials;
  if (o.samples) (sub == "converge" ? rc.converge.samples : rc.tails.samples) = *o.samples;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic LANS-alpha and Navier-Stokes solver with large-deviation tools", "lans"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out_dir;
  std::string format;
  std::vector<std::string> sets;
  app.add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "Named starting configuration");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--workers", workers, "Worker threads for sample loops")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", out_dir, "Run directory (default runs/<subcommand>)");
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "ndjson"}));
  app.add_option("--set", sets, "Override 'section.key=value'")->take_all();

  Overrides ov;
  for (const auto& s : subcommands()) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->fallthrough();
    sub->add_option("--n", ov.n, "Lattice size");
    sub->add_option("--dt", ov.dt, "Time step");
    sub->add_option("--T", ov.horizon, "Time horizon");
    sub->add_option("--alpha", ov.alpha, "Filter scale");
    sub->add_option("--delta", ov.delta, "0: large deviations, 1: moderate deviations");
    if (s.trials) sub->add_option("--trials", ov.trials, "Random trials per check");
    if (s.samples) sub->add_option("--samples", ov.samples, "Monte Carlo samples");
  }

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend() - (args.empty() ? 0 : 1)));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid;
  }

  const Subcommand* chosen = nullptr;
  for (const auto& s : subcommands()) {
    if (app.got_subcommand(s.name)) chosen = &s;
  }

  RunConfig rc;
  try {
    if (!preset.empty()) apply_preset(rc, preset);
    if (!config_path.empty()) apply_config_file(rc, config_path);
    for (const auto& s : sets) apply_override(rc, s);
    apply_overrides(rc, chosen->name, ov);
    if (seed) rc.seed = *seed;
    if (!format.empty()) rc.format = format;
    validate(rc);
  } catch (const ConfigError& e) {
    err << "lans: " << e.what() << '\n';
    return exit_invalid;
  }

  cli::CommandOutput result;
  try {
    result = chosen->run(rc, workers);
  } catch (const NumericAbort& e) {
    err << "lans: numeric abort: " << e.what() << '\n';
    return exit_numeric_abort;
  } catch (const ConfigError& e) {
    err << "lans: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    err << "lans: " << e.what() << '\n';
    return exit_invalid;
  }

  nlohmann::ordered_json summary;
  summary["subcommand"] = chosen->name;
  summary["seed"] = rc.seed;
  summary.update(result.summary);

  const fs::path dir = out_dir.empty() ? fs::path("runs") / chosen->name : fs::path(out_dir);
  try {
    fs::create_directories(dir);
    write_text(dir / "config.yaml", to_yaml(rc));
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& t : result.tables) {
      files.push_back(write_outputs(t, parse_format(rc.format), dir).filename().string());
    }
    for (const auto& [name, text] : result.files) write_text(dir / name, text);
    summary["tables"] = files;
    write_text(dir / "summary.json", summary.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "lans: " << e.what() << '\n';
    return exit_invalid;
  }

  out << summary.dump(2) << '\n';
  if (result.exit_code == exit_numeric_abort) err << "lans: numeric abort, partial trajectory written to " << dir << '\n';
  return result.exit_code;
}

}  // namespace lans
