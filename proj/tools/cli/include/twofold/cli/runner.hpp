// Copyright 2026 The twofold Authors
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

#include "twofold/analysis.hpp"
#include "twofold/cli/presets.hpp"
#include "twofold/metrics.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace twofold::cli {

struct ScenarioResult
{
  Scenario                scenario;
  std::vector<RunMetrics> runs;  // indexed by replicate
  Summary                 summary;
};

/// Runs every replicate of every scenario. Replicate r uses
/// replicate_seed(config.seed, r). When `trace` is set each delivered message
/// is written there, preceded by a "# <scenario> replicate <r>" line.
std::vector<ScenarioResult> run_batch(std::vector<Scenario> const &scenarios,
                                      std::ostream                *trace = nullptr);

/// Header of results.csv.
inline constexpr char const *kResultsHeader =
    "scenario_id,N,t,strategy,k,seed,replicate,iteration,messages_sent,detections_cum,"
    "detection_fraction,commits";

void write_results_csv(std::ostream &out, std::vector<ScenarioResult> const &results);

/// One row per scenario with replicate statistics.
void write_summary_csv(std::ostream &out, std::vector<ScenarioResult> const &results);

std::string results_json(std::vector<ScenarioResult> const &results);

/// Writes plotdata/<scenario>.dat for every scenario plus, for a preset, the
/// figure-specific file plotdata/<preset>.dat.
void write_plotdata(std::filesystem::path const &dir, std::vector<ScenarioResult> const &results,
                    std::optional<Preset> preset);

/// One-line human summary.
std::string summary_line(ScenarioResult const &result);

/// Fixed six-decimal rendering used by every text artifact.
std::string fixed(double value);

}  // namespace twofold::cli
