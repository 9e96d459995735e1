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

#include "twofold/cli/presets.hpp"

#include <array>

namespace twofold::cli {

namespace {

ScenarioConfig sweep_base(std::uint32_t nodes)
{
  ScenarioConfig c;
  c.nodes          = nodes;
  c.strategy.kind  = StrategyKind::UniformRandom;
  c.iterations     = 100;
  c.reset_interval = 3;
  c.replicates     = 10;
  c.seed           = 1;
  return c;
}

std::vector<Scenario> t_sweep(std::string_view prefix, std::uint32_t nodes,
                              std::initializer_list<std::uint32_t> ts)
{
  std::vector<Scenario> out;
  for (auto t : ts)
  {
    auto cfg      = sweep_base(nodes);
    cfg.byzantine = t;
    out.push_back(Scenario{std::string{prefix} + "-t" + std::to_string(t), cfg});
  }
  return out;
}

constexpr std::array kReferences{
    ReferenceTolerance{"Algorand", 20},  ReferenceTolerance{"Ripple", 20},
    ReferenceTolerance{"PBFT", 33},      ReferenceTolerance{"Zyzzyva", 33},
    ReferenceTolerance{"HoneyBadgerBFT", 33}, ReferenceTolerance{"Tendermint", 33},
    ReferenceTolerance{"MT-BFT", 66},
};

}  // namespace

std::optional<Preset> parse_preset(std::string_view name)
{
  if (name == "fig5")
  {
    return Preset::Fig5;
  }
  if (name == "fig6")
  {
    return Preset::Fig6;
  }
  if (name == "fig7")
  {
    return Preset::Fig7;
  }
  if (name == "fig8")
  {
    return Preset::Fig8;
  }
  if (name == "table2")
  {
    return Preset::Table2;
  }
  return std::nullopt;
}

std::string_view to_string(Preset preset)
{
  switch (preset)
  {
  case Preset::Fig5:
    return "fig5";
  case Preset::Fig6:
    return "fig6";
  case Preset::Fig7:
    return "fig7";
  case Preset::Fig8:
    return "fig8";
  case Preset::Table2:
    return "table2";
  }
  return "unknown";
}

std::vector<Scenario> preset_scenarios(Preset preset)
{
  switch (preset)
  {
  case Preset::Fig5:
    return t_sweep("fig5", 100, {30, 50, 70, 90});
  case Preset::Fig6:
    return t_sweep("fig6", 1000, {300, 500, 700, 900});
  case Preset::Fig7:
  {
    // Five honest pairs remain, the smallest count whose detection
    // probability clears 95%.
    auto cfg      = sweep_base(100);
    cfg.byzantine = 95;
    return {Scenario{"fig7-t95", cfg}};
  }
  case Preset::Fig8:
  {
    auto cfg       = sweep_base(100);
    cfg.byzantine  = 30;
    cfg.iterations = 12;
    cfg.replicates = 1;
    cfg.early_stop = false;

    auto no_reset           = cfg;
    no_reset.reset_interval = 0;
    return {Scenario{"fig8-reset0", no_reset}, Scenario{"fig8-reset3", cfg}};
  }
  case Preset::Table2:
  {
    ScenarioConfig cfg;
    cfg.nodes          = 5;
    cfg.byzantine      = 1;
    cfg.iterations     = 1;
    cfg.reset_interval = 0;
    cfg.replicates     = 1000;
    cfg.seed           = 1;
    return {Scenario{"table2-n5-t1", cfg}};
  }
  }
  return {};
}

std::span<ReferenceTolerance const> reference_tolerances()
{
  return kReferences;
}

}  // namespace twofold::cli
