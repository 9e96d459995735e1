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
#include "twofold/config.hpp"
#include "twofold/metrics.hpp"
#include "twofold/node.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include <vector>

namespace twofold {

/// Identity layout of a network. children[i] is the covert partner of
/// parents[i]; byzantine[i] marks that pair as adversarial.
struct Topology
{
  std::vector<NodeId> parents;
  std::vector<NodeId> children;
  std::vector<bool>   byzantine;
};

/// Deterministic discrete-event network. Every message enqueued during an
/// iteration is delivered, exactly once per receiver, before the iteration
/// ends. Delays are drawn uniformly from [1, delay_max] ticks; pair-channel
/// traffic is delivered within the current tick.
class Network
{
public:
  explicit Network(ScenarioConfig cfg, std::optional<Topology> topology = std::nullopt);

  /// One iteration: originate, drain, vote, drain, finalize, snapshot, reset.
  IterationReport run_iteration();

  /// Enqueues one copy per entry of `per_recipient`, each with its own delay.
  void broadcast(NodeId from, SeqNo seq, MessageType type, Emission const &per_recipient);

  /// Writes "<iteration> <tick> <hex>" per delivered network message.
  void set_trace(std::ostream *out) { trace_ = out; }

  /// Snapshots are copied into reports only when enabled.
  void keep_blacklists(bool keep) { keep_blacklists_ = keep; }

  [[nodiscard]] ScenarioConfig const &config() const { return cfg_; }
  [[nodiscard]] std::uint64_t         iteration() const { return iteration_; }
  [[nodiscard]] std::uint64_t         tick() const { return tick_; }

  [[nodiscard]] std::vector<NodeId> const &parents() const { return topology_.parents; }
  [[nodiscard]] std::vector<NodeId> const &children() const { return topology_.children; }
  [[nodiscard]] std::vector<NodeId>        byzantine_parents() const;
  [[nodiscard]] std::vector<NodeId>        honest_parents() const;
  [[nodiscard]] std::size_t                node_count() const { return roles_.size(); }

  /// Simulator-private pairing; never handed to strategies or encoded.
  [[nodiscard]] NodeId child_of(NodeId parent) const;
  [[nodiscard]] bool   is_byzantine(NodeId id) const;

  [[nodiscard]] ParentState const &parent_state(NodeId parent) const;
  [[nodiscard]] ChildState const  &child_state(NodeId child) const;

  /// Byzantine parents present on every honest blacklist right now.
  [[nodiscard]] std::vector<NodeId> caught() const;
  [[nodiscard]] double              detection_fraction() const;

private:
  enum class RoleKind : std::uint8_t
  {
    HonestParent,
    HonestChild,
    ByzantineParent,
    ByzantineChild,
  };

  struct Role
  {
    RoleKind    kind;
    std::size_t index;  // into parents_/children_/adversaries_
  };

  struct Adversary
  {
    NodeId self;
    NodeId partner;
    SeqNo  next_seq{0};
    Rng    rng;
  };

  struct Event
  {
    Message message;
    bool    pair{false};     // child -> parent relay
    bool    checked{false};  // injected through broadcast(); may repeat a key
  };

  struct KeyHash
  {
    std::size_t operator()(std::pair<NodeId, DedupeKey> const &k) const noexcept;
  };

  Role const &role(NodeId id) const;
  void        enqueue(Message m, std::uint64_t delay, bool pair, bool checked = false);
  void        enqueue(Broadcast const &b);
  void        drain();
  void        deliver(Event &ev);
  void        apply(NodeId parent, ParentStep const &step);

  ScenarioConfig cfg_;
  Topology       topology_;
  DirectoryPtr   directory_;
  Rng            rng_;

  std::vector<Role>        roles_;  // indexed by NodeId value
  std::vector<ParentState> parents_;
  std::vector<ChildState>  children_;
  std::vector<Adversary>   adversaries_;

  // Calendar queue: bucket (tick % size) holds events due at that tick.
  std::vector<std::vector<Event>> buckets_;
  std::uint64_t                   pending_{0};
  std::uint64_t                   tick_{0};
  std::uint64_t                   iteration_{0};

  // Exact duplicate suppression for the running iteration. Honest broadcasts
  // use a fresh seq and distinct recipients, so only injected traffic needs
  // the set; older keys are covered by the per-sender watermark because
  // sequence numbers only grow.
  absl::flat_hash_set<std::pair<NodeId, DedupeKey>, KeyHash> delivered_;
  FlatMap<NodeId, SeqNo>                                     sealed_;
  FlatMap<NodeId, SeqNo>                                     max_seq_;

  IterationReport          current_;
  absl::flat_hash_set<TxId, std::hash<TxId>> committed_txs_;  // distinct commits this iteration

  std::ostream *trace_{nullptr};
  bool          keep_blacklists_{true};
};

struct RunOptions
{
  bool          keep_blacklists{true};
  std::ostream *trace{nullptr};
};

Network build_network(ScenarioConfig const &cfg);

IterationReport run_iteration(Network &net);

/// Runs up to cfg.iterations iterations with cfg.seed. Stops early only when
/// resets are disabled, early_stop is set, t > 0 and every Byzantine parent
/// is on every honest blacklist.
RunMetrics run_scenario(ScenarioConfig const &cfg, RunOptions const &options = {});

/// Seed used for replicate `index` of a scenario seeded with `base`.
std::uint64_t replicate_seed(std::uint64_t base, std::uint32_t index);

}  // namespace twofold
