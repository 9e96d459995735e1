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

#include "twofold/config.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace twofold::cli {

struct Scenario
{
  std::string    id;
  ScenarioConfig config;

  friend bool operator==(Scenario const &, Scenario const &) = default;
};

enum class Preset
{
  Fig5,    // N=100, t in {30,50,70,90}
  Fig6,    // N=1000, t in {300,500,700,900}
  Fig7,    // near-total Byzantine share, plus reference tolerances
  Fig8,    // processed messages with resets disabled vs every 3 iterations
  Table2,  // N=5, t=1 single-iteration detection events
};

std::optional<Preset> parse_preset(std::string_view name);
std::string_view      to_string(Preset preset);

std::vector<Scenario> preset_scenarios(Preset preset);

/// Published fault-tolerance percentages of other protocols, printed next to
/// the simulated figure in fig7 output. Not simulated.
struct ReferenceTolerance
{
  std::string_view protocol;
  double           percent;
};

std::span<ReferenceTolerance const> reference_tolerances();

}  // namespace twofold::cli
