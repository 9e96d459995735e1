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
#include "twofold/simnet.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <set>

namespace twofold {
namespace {

std::vector<NodeId> ids(std::uint32_t n, std::uint32_t offset = 100)
{
  std::vector<NodeId> out;
  for (std::uint32_t i = 0; i < n; ++i)
  {
    out.push_back(NodeId{offset + i});
  }
  return out;
}

EmitContext context(std::vector<NodeId> const &recipients, std::uint64_t iteration = 1,
                    std::uint32_t k = 2)
{
  return EmitContext{NodeId{1}, TxId{42}, recipients, iteration, k};
}

Symbol payload(Content const &c)
{
  return std::get<TransactionContent>(c).payload;
}

TEST(Strategy, NamesRoundTrip)
{
  for (auto kind : {StrategyKind::UniformRandom, StrategyKind::Equivocator,
                    StrategyKind::Consistent, StrategyKind::Silent})
  {
    EXPECT_EQ(parse_strategy(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_strategy("byzantine"));
}

TEST(Strategy, ConsistentGivesEveryoneTheSameContent)
{
  auto const recipients = ids(8);
  Rng        rng{1};
  auto const out = emit(AdversaryStrategy{StrategyKind::Consistent}, context(recipients), rng);
  ASSERT_EQ(out.size(), 8u);
  for (auto const &[id, content] : out)
  {
    EXPECT_EQ(content, out.begin()->second);
    EXPECT_EQ(std::get<TransactionContent>(content).tx_id, TxId{42});
  }
}

TEST(Strategy, SilentSendsNothing)
{
  Rng rng{1};
  EXPECT_TRUE(emit(AdversaryStrategy{StrategyKind::Silent}, context(ids(8)), rng).empty());
}

TEST(Strategy, UniformCoversExactlyTheRecipients)
{
  auto const recipients = ids(11);
  Rng        rng{5};
  auto const out = emit(AdversaryStrategy{}, context(recipients, 1, 5), rng);
  ASSERT_EQ(out.size(), recipients.size());
  for (auto id : recipients)
  {
    ASSERT_TRUE(out.contains(id));
    EXPECT_LT(payload(out.at(id)), 5u);
  }
}

TEST(Strategy, UniformPairEqualityIsOneHalf)
{
  // One parent/child pair; equality frequency must sit inside a 3 sigma
  // binomial band around 1/2.
  auto const   recipients = ids(2);
  Rng          rng{2024};
  int const    trials = 10000;
  int          equal  = 0;
  for (int i = 0; i < trials; ++i)
  {
    auto const out = emit(AdversaryStrategy{}, context(recipients), rng);
    equal += out.at(recipients[0]) == out.at(recipients[1]) ? 1 : 0;
  }
  double const freq  = static_cast<double>(equal) / trials;
  double const sigma = std::sqrt(0.25 / trials);
  EXPECT_NEAR(freq, 0.5, 3 * sigma);
}

TEST(Strategy, EquivocatorSplitsTwoDistinctPayloads)
{
  auto const recipients = ids(10);
  for (std::uint64_t seed = 0; seed < 50; ++seed)
  {
    Rng               rng{seed};
    AdversaryStrategy s{StrategyKind::Equivocator, 0.3};
    auto const        out = emit(s, context(recipients, 1, 4), rng);
    ASSERT_EQ(out.size(), 10u);
    std::map<Symbol, int> counts;
    for (auto const &[id, c] : out)
    {
      ++counts[payload(c)];
    }
    ASSERT_EQ(counts.size(), 2u);
    std::multiset<int> sizes{counts.begin()->second, std::next(counts.begin())->second};
    EXPECT_EQ(sizes, (std::multiset<int>{3, 7}));
  }
}

TEST(Strategy, ReplayWithSameSeedIsIdentical)
{
  auto const recipients = ids(9);
  for (auto kind : {StrategyKind::UniformRandom, StrategyKind::Equivocator, StrategyKind::Consistent})
  {
    Rng a{77};
    Rng b{77};
    EXPECT_EQ(emit(AdversaryStrategy{kind}, context(recipients), a),
              emit(AdversaryStrategy{kind}, context(recipients), b));
  }
}

TEST(Strategy, HonestAfterSwitchesToConsistent)
{
  auto const        recipients = ids(16);
  AdversaryStrategy s{StrategyKind::Equivocator, 0.5, 2};
  Rng               rng{3};
  auto const        early = emit(s, context(recipients, 2), rng);
  std::set<Symbol>  early_payloads;
  for (auto const &[id, c] : early)
  {
    early_payloads.insert(payload(c));
  }
  EXPECT_EQ(early_payloads.size(), 2u);

  auto const       late = emit(s, context(recipients, 3), rng);
  std::set<Symbol> late_payloads;
  for (auto const &[id, c] : late)
  {
    late_payloads.insert(payload(c));
  }
  EXPECT_EQ(late_payloads.size(), 1u);
}

// Exhaustive over every a/b assignment to the honest recipients of one
// injected broadcast. Oracle: a pair can detect directly only if its parent's
// copy differs from its child's copy; with any mismatch gossip puts the sender
// on every honest blacklist. With unit delays every comparison completes
// before gossip lands, so the detectors are exactly the mismatched pairs.
// With longer delays a parent may merge the blacklist first and drop the
// rest of the sender's traffic.
class InjectedSplit : public ::testing::TestWithParam<std::tuple<std::uint32_t, std::uint32_t>>
{};

TEST_P(InjectedSplit, DirectDetectorsAreTheMismatchedPairs)
{
  auto const [n, delay_max] = GetParam();

  ScenarioConfig cfg;
  cfg.nodes          = n;
  cfg.byzantine      = 1;
  cfg.strategy.kind  = StrategyKind::Silent;
  cfg.iterations     = 1;
  cfg.reset_interval = 0;
  cfg.delay_max      = delay_max;

  Topology topo;
  for (std::uint32_t i = 0; i < n; ++i)
  {
    topo.parents.push_back(NodeId{i});
    topo.children.push_back(NodeId{n + i});
    topo.byzantine.push_back(i == 0);
  }
  NodeId const adv{0};

  // Honest pairs (parent, child) in a fixed order.
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::uint32_t i = 1; i < n; ++i)
  {
    pairs.emplace_back(NodeId{i}, NodeId{n + i});
  }
  auto const width = static_cast<std::uint32_t>(2 * pairs.size());

  for (std::uint32_t mask = 0; mask < (1U << width); ++mask)
  {
    Network  net{cfg, topo};
    Emission emission;
    std::set<NodeId> expected;
    for (std::size_t p = 0; p < pairs.size(); ++p)
    {
      auto const parent_bit = (mask >> (2 * p)) & 1U;
      auto const child_bit  = (mask >> (2 * p + 1)) & 1U;
      emission[pairs[p].first]  = TransactionContent{make_tx_id(adv, 0), parent_bit};
      emission[pairs[p].second] = TransactionContent{make_tx_id(adv, 0), child_bit};
      if (parent_bit != child_bit)
      {
        expected.insert(pairs[p].first);
      }
    }
    net.broadcast(adv, 0, MessageType::Transaction, emission);
    auto const report = net.run_iteration();

    std::set<NodeId> detectors;
    for (auto const &d : report.detections)
    {
      EXPECT_EQ(d.detected, adv);
      detectors.insert(d.detector);
    }
    if (delay_max == 1)
    {
      EXPECT_EQ(detectors, expected) << "mask " << mask;
    }
    else
    {
      EXPECT_TRUE(std::includes(expected.begin(), expected.end(), detectors.begin(), detectors.end()))
          << "mask " << mask;
      EXPECT_EQ(detectors.empty(), expected.empty()) << "mask " << mask;
    }
    EXPECT_EQ(report.caught.size(), expected.empty() ? 0u : 1u) << "mask " << mask;
  }
}

TEST_P(InjectedSplit, ParentHalfVersusChildHalfIsCaught)
{
  auto const [n, delay_max] = GetParam();

  ScenarioConfig cfg;
  cfg.nodes         = n;
  cfg.byzantine     = 1;
  cfg.strategy.kind = StrategyKind::Silent;
  cfg.iterations    = 1;
  cfg.delay_max     = delay_max;

  Topology topo;
  for (std::uint32_t i = 0; i < n; ++i)
  {
    topo.parents.push_back(NodeId{i});
    topo.children.push_back(NodeId{n + i});
    topo.byzantine.push_back(i == 0);
  }
  Network  net{cfg, topo};
  NodeId   adv{0};
  Emission emission;
  for (std::uint32_t i = 1; i < n; ++i)
  {
    emission[NodeId{i}]     = TransactionContent{make_tx_id(adv, 0), 0};
    emission[NodeId{n + i}] = TransactionContent{make_tx_id(adv, 0), 1};
  }
  net.broadcast(adv, 0, MessageType::Transaction, emission);
  auto const report = net.run_iteration();
  if (delay_max == 1)
  {
    EXPECT_EQ(report.detections.size(), n - 1);
  }
  EXPECT_GE(report.detections.size(), 1u);
  EXPECT_EQ(report.caught, (std::vector<NodeId>{adv}));
  EXPECT_DOUBLE_EQ(report.detection_fraction, 1.0);
}

INSTANTIATE_TEST_SUITE_P(SmallNetworks, InjectedSplit,
                         ::testing::Combine(::testing::Values(2u, 3u, 4u, 5u),
                                            ::testing::Values(1u, 4u)));

}  // namespace
}  // namespace twofold
