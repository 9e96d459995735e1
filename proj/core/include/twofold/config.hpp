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

#include "twofold/adversary.hpp"

#include <cstdint>
#include <stdexcept>

namespace twofold {

class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct ScenarioConfig
{
  std::uint32_t     nodes{100};          // N parents; 2N identities in total
  std::uint32_t     byzantine{0};        // t
  AdversaryStrategy strategy{};
  std::uint32_t     iterations{100};
  std::uint32_t     reset_interval{3};   // 0 disables blacklist resets
  std::uint32_t     alphabet{2};         // k
  std::uint64_t     seed{1};
  std::uint32_t     replicates{1};
  std::uint32_t     delay_max{4};        // delivery delay drawn from [1, delay_max] ticks
  bool              early_stop{true};    // only honoured when resets are disabled

  friend bool operator==(ScenarioConfig const &, ScenarioConfig const &) = default;
};

/// Throws ConfigError naming the first violated constraint.
void validate(ScenarioConfig const &cfg);

}  // namespace twofold
