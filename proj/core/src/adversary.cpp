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

#include "twofold/adversary.hpp"

#include <cmath>
#include <vector>

namespace twofold {

std::string_view to_string(StrategyKind kind)
{
  switch (kind)
  {
  case StrategyKind::UniformRandom:
    return "uniform";
  case StrategyKind::Equivocator:
    return "equivocator";
  case StrategyKind::Consistent:
    return "consistent";
  case StrategyKind::Silent:
    return "silent";
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy(std::string_view name)
{
  for (auto kind : {StrategyKind::UniformRandom, StrategyKind::Equivocator,
                    StrategyKind::Consistent, StrategyKind::Silent})
  {
    if (name == to_string(kind))
    {
      return kind;
    }
  }
  return std::nullopt;
}

Emission emit(AdversaryStrategy const &strategy, EmitContext const &ctx, Rng &rng)
{
  Emission out;
  auto     kind = strategy.kind;
  if (strategy.honest_after != 0 && ctx.iteration > strategy.honest_after)
  {
    kind = StrategyKind::Consistent;
  }

  auto content = [&ctx](std::uint64_t payload) {
    return Content{TransactionContent{ctx.tx_id, static_cast<Symbol>(payload)}};
  };

  switch (kind)
  {
  case StrategyKind::UniformRandom:
    for (auto id : ctx.recipients)
    {
      out.emplace(id, content(rng.below(ctx.alphabet)));
    }
    break;

  case StrategyKind::Equivocator:
  {
    auto const a = rng.below(ctx.alphabet);
    // Uniform over the alphabet minus a.
    auto b = rng.below(ctx.alphabet - 1);
    if (b >= a)
    {
      ++b;
    }
    std::vector<NodeId> order(ctx.recipients.begin(), ctx.recipients.end());
    rng.shuffle(std::span<NodeId>{order});
    auto const first =
        static_cast<std::size_t>(std::llround(strategy.split * static_cast<double>(order.size())));
    for (std::size_t i = 0; i < order.size(); ++i)
    {
      out.emplace(order[i], content(i < first ? a : b));
    }
    break;
  }

  case StrategyKind::Consistent:
  {
    auto const c = content(rng.below(ctx.alphabet));
    for (auto id : ctx.recipients)
    {
      out.emplace(id, c);
    }
    break;
  }

  case StrategyKind::Silent:
    break;
  }
  return out;
}

}  // namespace twofold
