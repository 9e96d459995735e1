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
#include "twofold/node_set.hpp"
#include "twofold/rng.hpp"

#include <absl/container/flat_hash_map.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace twofold {

/// Membership view shared by honest nodes. `parents` is the set of consensus
/// participants; `nodes` is every addressable identity. Neither reveals which
/// identities are paired.
struct Directory
{
  std::vector<NodeId> parents;  // sorted
  std::vector<NodeId> nodes;    // sorted

  [[nodiscard]] bool is_parent(NodeId id) const;
};

using DirectoryPtr = std::shared_ptr<Directory const>;

/// Comparison slots for one (sender, seq): [0] what the parent received
/// directly, [1] the copy its child relayed.
struct InboxEntry
{
  std::optional<Content> direct;
  std::optional<Content> relayed;

  [[nodiscard]] bool complete() const { return direct.has_value() && relayed.has_value(); }
};

enum class DetectOutcome
{
  Match,
  Mismatch,
};

enum class CommitDecision
{
  Commit,
  Reject,
  Pending,
};

/// Where a message handed to a parent came from.
enum class Origin
{
  Direct,  // delivered by the network to the parent itself
  Child,   // relayed by the parent's own child over the pair channel
};

/// Vote counts for one transaction among non-blacklisted voters.
struct Tally
{
  std::uint32_t  valid{0};
  std::uint32_t  not_valid{0};
  CommitDecision decision{CommitDecision::Pending};
};

/// One logical broadcast: the same content to every listed recipient.
struct Broadcast
{
  NodeId              sender;
  MessageType         type{MessageType::Transaction};
  SeqNo               seq{0};
  Content             content;
  std::vector<NodeId> recipients;
};

/// Parent-to-child instruction carried over the private pair channel.
struct PairInstruction
{
  Content content;
  NodeSet blacklist;
};

using OutgoingAction = std::variant<Broadcast, Message>;  // Message = relay to parent

template <class K, class V>
using FlatMap = absl::flat_hash_map<K, V, std::hash<K>>;

struct ParentState
{
  NodeId        self_id;
  NodeId        child_id;
  DirectoryPtr  directory;
  std::uint32_t alphabet{2};

  NodeSet                           blacklist;
  FlatMap<DedupeKey, InboxEntry>    inbox;
  FlatMap<TxId, Tally>              votes;
  std::vector<TxId>                 vote_order;   // first-seen order of tallied txs
  NodeSet                           voted;        // voters heard this iteration
  std::vector<Ballot>               own_ballots;  // verdicts not yet broadcast
  FlatMap<TxId, std::size_t>        own_index;    // tx -> position in own_ballots
  std::vector<TxId>                 committed;
  FlatMap<TxId, CommitDecision>     decisions;    // finalized at iteration close

  SeqNo         next_seq{0};
  std::uint64_t iteration{0};
  Rng           rng;

  std::uint64_t dropped{0};     // messages ignored because the sender is blacklisted
  std::uint64_t violations{0};  // malformed messages attributed to their sender

  std::vector<TxId> scratch;  // reused by the vote handler

  ParentState(NodeId self, NodeId child, DirectoryPtr dir, std::uint32_t k, Rng stream);

  /// Non-blacklisted parents other than self.
  [[nodiscard]] std::size_t electorate() const;
};

struct ChildState
{
  NodeId       self_id;
  NodeId       parent_id;
  DirectoryPtr directory;
  NodeSet      blacklist;
  SeqNo        next_seq{0};

  std::uint64_t dropped{0};
};

/// What one parent transition produced.
struct ParentStep
{
  std::vector<Broadcast> broadcasts;
  std::optional<NodeId>  detected;  // newly blacklisted by own comparison
  std::vector<TxId>      committed;
  bool                   dropped{false};
};

struct ChildStep
{
  std::vector<OutgoingAction> actions;
  bool                        dropped{false};
};

// -- parent -----------------------------------------------------------------

/// Advances the iteration counter; called once before prepare_message.
void begin_iteration(ParentState &state);

/// Handles one delivered message. Dispatch order: blacklisted sender, then
/// Blacklist merge, Transaction slot fill and comparison, Vote tally.
ParentStep parent_handle(ParentState &state, Message const &m, Origin origin = Origin::Direct);

/// Pure difference detector over a complete entry.
DetectOutcome compare_and_detect(InboxEntry const &entry);

/// Decision rule for E = `electorate`: Commit iff V > E/2; once no more
/// votes can arrive, Reject iff I >= E/2; Pending otherwise.
CommitDecision decide(std::uint32_t valid, std::uint32_t not_valid, std::size_t electorate,
                      bool closed);

/// Applies `decide` to the recorded votes for tx. A Commit is appended to
/// `committed` exactly once.
CommitDecision tally_votes(ParentState &state, TxId tx, bool closed = false);

/// Fresh transaction for this iteration, addressed to every known node except
/// self, own child and blacklist members.
Broadcast prepare_message(ParentState &state);

PairInstruction pair_sync(ParentState const &state, Broadcast const &msg);

/// Broadcasts the iteration's verdicts to every non-blacklisted parent.
ParentStep flush_votes(ParentState &state);

/// Finalizes every tallied transaction and clears per-iteration vote state.
std::vector<std::pair<TxId, CommitDecision>> close_iteration(ParentState &state);

/// Clears the blacklist when `iteration` is a positive multiple of
/// `reset_interval`. Returns whether the reset happened.
bool reset_blacklist(ParentState &state, std::uint64_t reset_interval);

// -- child ------------------------------------------------------------------

using ChildEvent = std::variant<PairInstruction, Message>;

ChildStep child_handle(ChildState &state, ChildEvent const &event);

}  // namespace twofold
