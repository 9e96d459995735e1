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

#include "twofold/message.hpp"
#include "twofold/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>

namespace twofold {

enum class StrategyKind
{
  UniformRandom,  // independent uniform payload per recipient
  Equivocator,    // payload a to a fraction of recipients, b != a to the rest
  Consistent,     // one payload to everyone
  Silent,         // sends nothing
};

std::string_view              to_string(StrategyKind kind);
std::optional<StrategyKind>   parse_strategy(std::string_view name);

struct AdversaryStrategy
{
  StrategyKind kind{StrategyKind::UniformRandom};

  /// Equivocator: share of recipients that get the first payload.
  double split{0.5};

  /// When nonzero, the node behaves like Consistent after this iteration.
  std::uint64_t honest_after{0};

  friend bool operator==(AdversaryStrategy const &, AdversaryStrategy const &) = default;
};

/// Everything a strategy may observe for one broadcast. The recipient list is
/// flat: parents and children are not distinguished, and pair links are absent.
struct EmitContext
{
  NodeId                    self;
  TxId                      tx_id;
  std::span<NodeId const>   recipients;
  std::uint64_t             iteration{0};
  std::uint32_t             alphabet{2};
};

/// Recipient -> content. A recipient missing from the map receives nothing.
using Emission = std::map<NodeId, Content>;

Emission emit(AdversaryStrategy const &strategy, EmitContext const &ctx, Rng &rng);

}  // namespace twofold
