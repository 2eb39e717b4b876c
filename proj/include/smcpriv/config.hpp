// Copyright 2026 The smcpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "smcpriv/optimize.hpp"
#include "smcpriv/randomize.hpp"
#include "smcpriv/scenario.hpp"

namespace smcpriv {

// A parsed scenario file: the analysis instance plus whatever optional
// blocks (approximation, optimizer knobs, sweep orders) the file declares.
struct LoadedConfig {
  ScenarioSpec scenario;
  std::optional<ApproximationSpec> approximation;
  std::vector<DiscreteDist> pi_phis;  // empty unless the file declares them

  std::optional<Value> delta_max;
  std::optional<double> epsilon;
  SolverKnobs knobs;
  std::vector<double> sweep_alphas;

  std::uint64_t config_hash = 0;  // over the canonical JSON dump
};

// Loads and validates a scenario file. Schema violations raise ConfigError
// naming the offending field path.
LoadedConfig load_scenario(const std::string& path);

// Same, from an already-parsed document (used by tests).
LoadedConfig parse_config(const nlohmann::json& doc);

std::uint64_t fnv1a_hash(std::string_view bytes);

}  // namespace smcpriv
