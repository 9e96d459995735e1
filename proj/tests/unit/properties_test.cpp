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

// Randomised invariants over whole simulations.

#include "twofold/analysis.hpp"
#include "twofold/codec.hpp"
#include "twofold/simnet.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace twofold {
namespace {

std::vector<ScenarioConfig> random_configs(std::uint64_t seed, int count,
                                           StrategyKind kind = StrategyKind::UniformRandom)
{
  std::mt19937_64             gen{seed};
  std::vector<ScenarioConfig> out;
  for (int i = 0; i < count; ++i)
  {
    ScenarioConfig c;
    c.nodes          = 3 + static_cast<std::uint32_t>(gen() % 14);
    c.byzantine      = static_cast<std::uint32_t>(gen() % c.nodes);
    c.strategy.kind  = kind;
    c.strategy.split = 0.1 + 0.8 * static_cast<double>(gen() % 100) / 100.0;
    c.alphabet       = 2 + static_cast<std::uint32_t>(gen() % 3);
    c.iterations     = 2 + static_cast<std::uint32_t>(gen() % 6);
    c.reset_interval = static_cast<std::uint32_t>(gen() % 4);
    c.delay_max      = 1 + static_cast<std::uint32_t>(gen() % 4);
    c.early_stop     = false;
    c.seed           = gen();
    out.push_back(c);
  }
  return out;
}

std::string describe(ScenarioConfig const &c)
{
  return "N=" + std::to_string(c.nodes) + " t=" + std::to_string(c.byzantine) +
         " k=" + std::to_string(c.alphabet) + " reset=" + std::to_string(c.reset_interval) +
         " seed=" + std::to_string(c.seed);
}

TEST(Properties, NoFalsePositivesWithoutEquivocation)
{
  for (auto kind : {StrategyKind::Consistent, StrategyKind::Silent})
  {
    for (auto const &cfg : random_configs(11, 25, kind))
    {
      Network net{cfg};
      for (std::uint32_t i = 0; i < cfg.iterations; ++i)
      {
        auto const r = net.run_iteration();
        ASSERT_TRUE(r.detections.empty()) << describe(cfg);
        for (auto const &[p, bl] : r.blacklists)
        {
          ASSERT_TRUE(bl.empty()) << describe(cfg);
        }
      }
    }
  }
}

TEST(Properties, OnlyByzantineNodesAreBlacklisted)
{
  for (auto kind : {StrategyKind::UniformRandom, StrategyKind::Equivocator})
  {
    for (auto const &cfg : random_configs(12, 30, kind))
    {
      Network net{cfg};
      for (std::uint32_t i = 0; i < cfg.iterations; ++i)
      {
        auto const r = net.run_iteration();
        for (auto const &d : r.detections)
        {
          ASSERT_TRUE(net.is_byzantine(d.detected)) << describe(cfg);
          ASSERT_FALSE(net.is_byzantine(d.detector)) << describe(cfg);
        }
        for (auto const &[p, bl] : r.blacklists)
        {
          ASSERT_FALSE(bl.contains(p)) << "self on own blacklist, " << describe(cfg);
          for (auto id : bl)
          {
            ASSERT_TRUE(net.is_byzantine(id)) << describe(cfg);
          }
        }
      }
    }
  }
}

TEST(Properties, BlacklistsGrowUntilReset)
{
  for (auto const &cfg : random_configs(13, 30))
  {
    Network                   net{cfg};
    std::map<NodeId, NodeSet> previous;
    for (std::uint32_t i = 0; i < cfg.iterations; ++i)
    {
      auto const r = net.run_iteration();
      for (auto const &[p, bl] : r.blacklists)
      {
        auto const &before = previous[p];
        ASSERT_TRUE(std::includes(bl.begin(), bl.end(), before.begin(), before.end()))
            << describe(cfg) << " iteration " << r.iteration;
      }
      previous = r.reset ? std::map<NodeId, NodeSet>{} : r.blacklists;
    }
  }
}

TEST(Properties, HonestBlacklistsConverge)
{
  for (auto const &cfg : random_configs(14, 30))
  {
    Network net{cfg};
    for (std::uint32_t i = 0; i < cfg.iterations; ++i)
    {
      auto const r = net.run_iteration();
      if (r.blacklists.empty())
      {
        continue;
      }
      auto const &first = r.blacklists.begin()->second;
      for (auto const &[p, bl] : r.blacklists)
      {
        ASSERT_EQ(bl, first) << describe(cfg);
      }
      ASSERT_EQ(r.caught, std::vector<NodeId>(first.begin(), first.end())) << describe(cfg);
    }
  }
}

TEST(Properties, HonestParentsAgreeOnDecisions)
{
  for (auto const &cfg : random_configs(15, 30))
  {
    Network net{cfg};
    auto    honest = net.honest_parents();
    for (std::uint32_t i = 0; i < cfg.iterations; ++i)
    {
      net.run_iteration();
      for (std::size_t a = 0; a + 1 < honest.size(); ++a)
      {
        auto const &da = net.parent_state(honest[a]).decisions;
        auto const &db = net.parent_state(honest[a + 1]).decisions;
        for (auto const &[tx, d] : da)
        {
          auto it = db.find(tx);
          if (it != db.end())
          {
            ASSERT_EQ(d, it->second) << describe(cfg);
          }
        }
      }
    }
  }
}

TEST(Properties, HonestTransactionsCommitWithHonestMajority)
{
  for (auto cfg : random_configs(16, 30))
  {
    // Honest majority of the electorate once every adversary is silent.
    cfg.byzantine     = (cfg.nodes - 1) / 3;
    cfg.strategy.kind = StrategyKind::Silent;
    Network net{cfg};
    auto    honest = net.honest_parents();
    net.run_iteration();
    for (auto p : honest)
    {
      auto const &state = net.parent_state(p);
      for (auto other : honest)
      {
        if (other == p)
        {
          continue;
        }
        auto it = state.decisions.find(make_tx_id(other, 0));
        ASSERT_NE(it, state.decisions.end()) << describe(cfg);
        EXPECT_EQ(it->second, CommitDecision::Commit) << describe(cfg);
      }
    }
  }
}

TEST(Properties, RunsAreReproducible)
{
  for (auto const &cfg : random_configs(17, 10))
  {
    std::ostringstream a;
    std::ostringstream b;
    auto const         ma = run_scenario(cfg, RunOptions{true, &a});
    auto const         mb = run_scenario(cfg, RunOptions{true, &b});
    ASSERT_EQ(ma, mb) << describe(cfg);
    ASSERT_EQ(a.str(), b.str()) << describe(cfg);
  }
}

TEST(Properties, ParentTransitionIsAFunctionOfStateAndMessage)
{
  auto const dir = std::make_shared<Directory>(Directory{
      {NodeId{0}, NodeId{1}, NodeId{2}, NodeId{3}},
      {NodeId{0}, NodeId{1}, NodeId{2}, NodeId{3}, NodeId{4}, NodeId{5}, NodeId{6}, NodeId{7}}});
  std::mt19937_64 gen{18};
  ParentState     base{NodeId{0}, NodeId{4}, dir, 2, Rng{1}};
  begin_iteration(base);

  for (int i = 0; i < 300; ++i)
  {
    Message m;
    m.sender   = NodeId{static_cast<std::uint32_t>(1 + gen() % 7)};
    m.receiver = NodeId{0};
    m.seq      = gen() % 4;
    switch (gen() % 3)
    {
    case 0:
      m.type    = MessageType::Transaction;
      m.content = TransactionContent{TxId{gen() % 3}, static_cast<Symbol>(gen() % 2)};
      break;
    case 1:
      m.type    = MessageType::Vote;
      m.content = VoteContent{{Ballot{TxId{gen() % 3}, gen() % 2 == 0 ? Verdict::Valid
                                                                      : Verdict::NotValid}}};
      break;
    default:
      m.type    = MessageType::Blacklist;
      m.content = BlacklistContent{NodeSet::from_unsorted({NodeId{static_cast<std::uint32_t>(1 + gen() % 3)}})};
      break;
    }
    auto const origin = gen() % 4 == 0 ? Origin::Child : Origin::Direct;

    ParentState copy   = base;
    auto const  first  = parent_handle(base, m, origin);
    auto const  second = parent_handle(copy, m, origin);

    ASSERT_EQ(first.detected, second.detected);
    ASSERT_EQ(first.committed, second.committed);
    ASSERT_EQ(first.dropped, second.dropped);
    ASSERT_EQ(first.broadcasts.size(), second.broadcasts.size());
    for (std::size_t b = 0; b < first.broadcasts.size(); ++b)
    {
      ASSERT_EQ(first.broadcasts[b].content, second.broadcasts[b].content);
      ASSERT_EQ(first.broadcasts[b].recipients, second.broadcasts[b].recipients);
      ASSERT_EQ(first.broadcasts[b].seq, second.broadcasts[b].seq);
    }
    ASSERT_EQ(base.blacklist, copy.blacklist);
    ASSERT_EQ(base.committed, copy.committed);
  }
}

// Single-iteration detection rate for one Byzantine parent against the
// closed form, over several network sizes and alphabets.
struct RateCase
{
  std::uint32_t nodes;
  std::uint32_t alphabet;
};

void PrintTo(RateCase const &c, std::ostream *os)
{
  *os << "N=" << c.nodes << " k=" << c.alphabet;
}

class DetectionRate : public ::testing::TestWithParam<RateCase>
{};

TEST_P(DetectionRate, WithinThreeSigmaOfClosedForm)
{
  auto const     param = GetParam();
  ScenarioConfig cfg;
  cfg.nodes          = param.nodes;
  cfg.byzantine      = 1;
  cfg.alphabet       = param.alphabet;
  cfg.iterations     = 1;
  cfg.reset_interval = 0;

  int const trials = 1500;
  int       hits   = 0;
  for (int s = 0; s < trials; ++s)
  {
    cfg.seed = replicate_seed(param.nodes * 100 + param.alphabet, static_cast<std::uint32_t>(s));
    Network net{cfg};
    hits += net.run_iteration().detections.empty() ? 0 : 1;
  }
  double const p     = detection_probability(param.nodes - 1, param.alphabet);
  double const sigma = std::sqrt(p * (1 - p) / trials);
  EXPECT_NEAR(static_cast<double>(hits) / trials, p, std::max(3 * sigma, 1.0 / trials));
}

INSTANTIATE_TEST_SUITE_P(SmallNetworks, DetectionRate,
                         ::testing::Values(RateCase{2, 2}, RateCase{3, 2}, RateCase{5, 2},
                                           RateCase{2, 3}, RateCase{3, 4}),
                         [](auto const &info) {
                           return "n" + std::to_string(info.param.nodes) + "k" +
                                  std::to_string(info.param.alphabet);
                         });

}  // namespace
}  // namespace twofold
