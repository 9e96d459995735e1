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

#include "twofold/node.hpp"

#include <algorithm>
#include <cassert>

namespace twofold {

bool Directory::is_parent(NodeId id) const
{
  return std::binary_search(parents.begin(), parents.end(), id);
}

ParentState::ParentState(NodeId self, NodeId child, DirectoryPtr dir, std::uint32_t k, Rng stream)
  : self_id{self}
  , child_id{child}
  , directory{std::move(dir)}
  , alphabet{k}
  , rng{std::move(stream)}
{}

std::size_t ParentState::electorate() const
{
  std::size_t blocked = 0;
  for (auto id : blacklist)
  {
    if (directory->is_parent(id))
    {
      ++blocked;
    }
  }
  auto const others = directory->parents.size() - (directory->is_parent(self_id) ? 1 : 0);
  return others - blocked;
}

namespace {

std::vector<NodeId> addressable(std::vector<NodeId> const &pool, NodeSet const &blacklist,
                                NodeId skip_a, NodeId skip_b)
{
  std::vector<NodeId> out;
  out.reserve(pool.size());
  for (auto id : pool)
  {
    if (id != skip_a && id != skip_b && !blacklist.contains(id))
    {
      out.push_back(id);
    }
  }
  return out;
}

Broadcast blacklist_broadcast(ParentState &s)
{
  Broadcast b;
  b.sender     = s.self_id;
  b.type       = MessageType::Blacklist;
  b.seq        = s.next_seq++;
  b.content    = BlacklistContent{s.blacklist};
  b.recipients = addressable(s.directory->parents, s.blacklist, s.self_id, s.self_id);
  return b;
}

void drop_pending_from(ParentState &s, NodeId sender)
{
  absl::erase_if(s.inbox, [sender](auto const &kv) { return kv.first.sender == sender; });
}

// Appends the sender to the blacklist and gossips the full list.
void convict(ParentState &s, NodeId sender, ParentStep &step)
{
  if (sender == s.self_id || sender == s.child_id || !s.blacklist.insert(sender))
  {
    return;
  }
  step.detected = sender;
  drop_pending_from(s, sender);
  step.broadcasts.push_back(blacklist_broadcast(s));
}

Tally &tally_for(ParentState &s, TxId tx)
{
  auto [it, inserted] = s.votes.try_emplace(tx);
  if (inserted)
  {
    s.vote_order.push_back(tx);
  }
  return it->second;
}

void commit_if_ready(ParentState &s, TxId tx, Tally &tally, std::size_t electorate,
                     ParentStep &step)
{
  if (tally.decision == CommitDecision::Commit)
  {
    return;
  }
  if (decide(tally.valid, tally.not_valid, electorate, false) == CommitDecision::Commit)
  {
    tally.decision = CommitDecision::Commit;
    s.committed.push_back(tx);
    step.committed.push_back(tx);
  }
}

void record_own_verdict(ParentState &s, TxId tx, Verdict verdict, ParentStep &step)
{
  auto &tally = tally_for(s, tx);
  if (auto it = s.own_index.find(tx); it != s.own_index.end())
  {
    // A transaction seen through several copies keeps one ballot; a negative
    // observation overrides an earlier positive one.
    auto &ballot = s.own_ballots[it->second];
    if (verdict == Verdict::NotValid && ballot.verdict == Verdict::Valid)
    {
      ballot.verdict = Verdict::NotValid;
      --tally.valid;
      ++tally.not_valid;
    }
    return;
  }
  s.own_index.emplace(tx, s.own_ballots.size());
  s.own_ballots.push_back(Ballot{tx, verdict});
  (verdict == Verdict::Valid ? tally.valid : tally.not_valid) += 1;
  commit_if_ready(s, tx, tally, s.electorate(), step);
}

void on_blacklist(ParentState &s, BlacklistContent const &content, ParentStep &step)
{
  auto const &members = content.members();
  if (std::includes(s.blacklist.begin(), s.blacklist.end(), members.begin(), members.end()))
  {
    return;
  }
  bool grew = false;
  for (auto id : members)
  {
    if (id != s.self_id && id != s.child_id && s.blacklist.insert(id))
    {
      drop_pending_from(s, id);
      grew = true;
    }
  }
  // Re-gossip only on strict growth so cascades terminate.
  if (grew)
  {
    step.broadcasts.push_back(blacklist_broadcast(s));
  }
}

void on_transaction(ParentState &s, Message const &m, Origin origin, ParentStep &step)
{
  auto  key   = dedupe_key(m);
  auto &entry = s.inbox[key];
  auto &slot  = origin == Origin::Direct ? entry.direct : entry.relayed;
  if (slot.has_value())
  {
    return;
  }
  slot = m.content;
  if (!entry.complete())
  {
    return;
  }

  auto const outcome = compare_and_detect(entry);
  auto const tx      = std::get<TransactionContent>(*entry.direct).tx_id;
  s.inbox.erase(key);

  if (outcome == DetectOutcome::Match)
  {
    record_own_verdict(s, tx, Verdict::Valid, step);
    return;
  }
  record_own_verdict(s, tx, Verdict::NotValid, step);
  convict(s, m.sender, step);
}

void on_vote(ParentState &s, Message const &m, ParentStep &step)
{
  auto const voter = m.sender;
  if (!s.directory->is_parent(voter) || s.voted.contains(voter))
  {
    return;
  }
  auto const ballots = std::get<VoteContent>(m.content).ballots();

  auto &txs = s.scratch;
  txs.clear();
  for (auto const &b : ballots)
  {
    txs.push_back(b.tx_id);
  }
  std::sort(txs.begin(), txs.end());
  if (std::adjacent_find(txs.begin(), txs.end()) != txs.end())
  {
    // Two verdicts for one transaction in a single ballot set.
    ++s.violations;
    convict(s, voter, step);
    return;
  }

  s.voted.insert(voter);
  auto const electorate = s.electorate();
  for (auto const &b : ballots)
  {
    auto &tally = tally_for(s, b.tx_id);
    (b.verdict == Verdict::Valid ? tally.valid : tally.not_valid) += 1;
    commit_if_ready(s, b.tx_id, tally, electorate, step);
  }
}

}  // namespace

void begin_iteration(ParentState &state)
{
  ++state.iteration;
}

ParentStep parent_handle(ParentState &state, Message const &m, Origin origin)
{
  ParentStep step;

  if (state.blacklist.contains(m.sender))
  {
    ++state.dropped;
    step.dropped = true;
    return step;
  }
  if (m.sender == state.self_id || m.sender == state.child_id)
  {
    return step;
  }
  if (origin == Origin::Direct && m.receiver != state.self_id)
  {
    return step;
  }
  if (origin == Origin::Child && m.receiver != state.child_id)
  {
    return step;
  }
  if (!is_well_formed(m))
  {
    ++state.violations;
    convict(state, m.sender, step);
    return step;
  }

  switch (m.type)
  {
  case MessageType::Blacklist:
    if (origin == Origin::Direct)
    {
      on_blacklist(state, std::get<BlacklistContent>(m.content), step);
    }
    break;
  case MessageType::Transaction:
    on_transaction(state, m, origin, step);
    break;
  case MessageType::Vote:
    if (origin == Origin::Direct)
    {
      on_vote(state, m, step);
    }
    break;
  }
  return step;
}

DetectOutcome compare_and_detect(InboxEntry const &entry)
{
  assert(entry.complete());
  return *entry.direct == *entry.relayed ? DetectOutcome::Match : DetectOutcome::Mismatch;
}

CommitDecision decide(std::uint32_t valid, std::uint32_t not_valid, std::size_t electorate,
                      bool closed)
{
  // Integer forms of V > E/2 and I >= E/2.
  if (2 * std::size_t{valid} > electorate)
  {
    return CommitDecision::Commit;
  }
  if (closed && 2 * std::size_t{not_valid} >= electorate)
  {
    return CommitDecision::Reject;
  }
  return CommitDecision::Pending;
}

CommitDecision tally_votes(ParentState &state, TxId tx, bool closed)
{
  auto it = state.votes.find(tx);
  if (it == state.votes.end())
  {
    return CommitDecision::Pending;
  }
  auto &tally = it->second;
  if (tally.decision != CommitDecision::Pending)
  {
    return tally.decision;
  }
  auto const decision = decide(tally.valid, tally.not_valid, state.electorate(), closed);
  if (decision == CommitDecision::Commit)
  {
    state.committed.push_back(tx);
  }
  tally.decision = decision;
  return decision;
}

Broadcast prepare_message(ParentState &state)
{
  Broadcast b;
  b.sender = state.self_id;
  b.type   = MessageType::Transaction;
  b.seq    = state.next_seq++;
  b.content =
      TransactionContent{make_tx_id(state.self_id, b.seq), static_cast<Symbol>(state.rng.below(state.alphabet))};
  b.recipients = addressable(state.directory->nodes, state.blacklist, state.self_id, state.child_id);
  return b;
}

PairInstruction pair_sync(ParentState const &state, Broadcast const &msg)
{
  return PairInstruction{msg.content, state.blacklist};
}

ParentStep flush_votes(ParentState &state)
{
  ParentStep step;
  if (state.own_ballots.empty())
  {
    return step;
  }
  Broadcast b;
  b.sender     = state.self_id;
  b.type       = MessageType::Vote;
  b.seq        = state.next_seq++;
  b.content    = VoteContent{std::move(state.own_ballots)};
  b.recipients = addressable(state.directory->parents, state.blacklist, state.self_id, state.self_id);
  step.broadcasts.push_back(std::move(b));
  state.own_ballots.clear();
  state.own_index.clear();
  return step;
}

std::vector<std::pair<TxId, CommitDecision>> close_iteration(ParentState &state)
{
  std::vector<std::pair<TxId, CommitDecision>> finalized;
  finalized.reserve(state.vote_order.size());
  for (auto tx : state.vote_order)
  {
    auto const decision = tally_votes(state, tx, true);
    state.decisions[tx] = decision;
    finalized.emplace_back(tx, decision);
  }
  state.votes.clear();
  state.vote_order.clear();
  state.voted.clear();
  state.own_ballots.clear();
  state.own_index.clear();
  return finalized;
}

bool reset_blacklist(ParentState &state, std::uint64_t reset_interval)
{
  if (reset_interval == 0 || state.iteration == 0 || state.iteration % reset_interval != 0)
  {
    return false;
  }
  auto const &bl = state.blacklist;
  absl::erase_if(state.inbox, [&bl](auto const &kv) { return bl.contains(kv.first.sender); });
  state.blacklist.clear();
  return true;
}

ChildStep child_handle(ChildState &state, ChildEvent const &event)
{
  ChildStep step;

  if (auto const *instr = std::get_if<PairInstruction>(&event))
  {
    state.blacklist = instr->blacklist;
    state.blacklist.erase(state.self_id);
    state.blacklist.erase(state.parent_id);

    Broadcast b;
    b.sender     = state.self_id;
    b.type       = content_type(instr->content);
    b.seq        = state.next_seq++;
    b.content    = instr->content;
    b.recipients = addressable(state.directory->nodes, state.blacklist, state.self_id, state.parent_id);
    step.actions.emplace_back(std::move(b));
    return step;
  }

  auto const &m = std::get<Message>(event);
  if (state.blacklist.contains(m.sender))
  {
    ++state.dropped;
    step.dropped = true;
    return step;
  }
  if (m.type != MessageType::Transaction || m.sender == state.parent_id)
  {
    step.dropped = true;
    return step;
  }
  step.actions.emplace_back(m);
  return step;
}

}  // namespace twofold
