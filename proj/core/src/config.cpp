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

#include "twofold/config.hpp"

namespace twofold {

void validate(ScenarioConfig const &cfg)
{
  if (cfg.nodes < 2)
  {
    throw ConfigError("nodes: N >= 2 required");
  }
  if (cfg.byzantine >= cfg.nodes)
  {
    throw ConfigError("byzantine: t < N required");
  }
  if (cfg.iterations == 0)
  {
    throw ConfigError("iterations: at least 1 required");
  }
  if (cfg.alphabet < 2)
  {
    throw ConfigError("alphabet: k >= 2 required");
  }
  if (cfg.replicates == 0)
  {
    throw ConfigError("replicates: at least 1 required");
  }
  if (cfg.delay_max == 0)
  {
    throw ConfigError("delay_max: at least 1 tick required");
  }
  if (cfg.strategy.kind == StrategyKind::Equivocator &&
      !(cfg.strategy.split > 0.0 && cfg.strategy.split < 1.0))
  {
    throw ConfigError("split: equivocator split must lie in (0, 1)");
  }
}

}  // namespace twofold
