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

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "lans/config.hpp"
#include "lans/records.hpp"

namespace lans::cli {

struct CommandOutput {
  std::vector<Table> tables;
  nlohmann::ordered_json summary;
  std::vector<std::pair<std::string, std::string>> files;  // relative path, contents
  int exit_code = 0;
};

CommandOutput verify_identities(const RunConfig& rc, int workers);
CommandOutput simulate_nse(const RunConfig& rc, int workers);
CommandOutput simulate_lans(const RunConfig& rc, int workers);
CommandOutput simulate_unified(const RunConfig& rc, int workers);
CommandOutput skeleton(const RunConfig& rc, int workers);
CommandOutput rate(const RunConfig& rc, int workers);
CommandOutput mc_tails(const RunConfig& rc, int workers);
CommandOutput converge(const RunConfig& rc, int workers);
CommandOutput weak_probe(const RunConfig& rc, int workers);
CommandOutput mdp_check(const RunConfig& rc, int workers);

}  // namespace lans::cli
