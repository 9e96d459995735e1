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

#include "twofold/ids.hpp"
#include "twofold/node_set.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace twofold {

enum class MessageType : std::uint8_t
{
  Transaction = 0,
  Vote        = 1,
  Blacklist   = 2,
};

enum class Verdict : std::uint8_t
{
  Valid    = 0,
  NotValid = 1,
};

std::string_view to_string(MessageType type);
std::string_view to_string(Verdict verdict);

/// Transaction payload symbol, drawn from an alphabet {0, ..., k-1}.
using Symbol = std::uint32_t;

struct TransactionContent
{
  TxId   tx_id;
  Symbol payload{0};

  friend bool operator==(TransactionContent const &, TransactionContent const &) = default;
};

struct Ballot
{
  TxId    tx_id;
  Verdict verdict{Verdict::Valid};

  friend bool operator==(Ballot const &, Ballot const &) = default;
};

/// A voter's verdicts for one iteration. Ballots are batched per voter so
/// vote traffic stays quadratic in the number of parents.
/// Immutable once built; copies share storage, so fanning one vote out to
/// every parent does not copy the ballot list.
class VoteContent
{
public:
  VoteContent() = default;
  explicit VoteContent(std::vector<Ballot> ballots)
    : ballots_{std::make_shared<std::vector<Ballot> const>(std::move(ballots))}
  {}

  [[nodiscard]] std::span<Ballot const> ballots() const
  {
    return ballots_ ? std::span<Ballot const>{*ballots_} : std::span<Ballot const>{};
  }

  friend bool operator==(VoteContent const &a, VoteContent const &b)
  {
    return std::ranges::equal(a.ballots(), b.ballots());
  }

private:
  std::shared_ptr<std::vector<Ballot> const> ballots_;
};

/// Immutable snapshot of a blacklist; copies share storage.
class BlacklistContent
{
public:
  BlacklistContent() = default;
  explicit BlacklistContent(NodeSet members)
    : members_{std::make_shared<NodeSet const>(std::move(members))}
  {}

  [[nodiscard]] NodeSet const &members() const;

  friend bool operator==(BlacklistContent const &a, BlacklistContent const &b)
  {
    return a.members() == b.members();
  }

private:
  std::shared_ptr<NodeSet const> members_;
};

using Content = std::variant<TransactionContent, VoteContent, BlacklistContent>;

/// The message type a content variant belongs to.
MessageType content_type(Content const &content);

struct Message
{
  MessageType type{MessageType::Transaction};
  SeqNo       seq{0};
  Content     content;
  NodeId      sender;
  NodeId      receiver;

  friend bool operator==(Message const &, Message const &) = default;
};

/// True when the content variant agrees with the declared type.
inline bool is_well_formed(Message const &m)
{
  return content_type(m.content) == m.type;
}

/// Duplicate-suppression key; a pure function of (sender, seq).
inline DedupeKey dedupe_key(Message const &m)
{
  return DedupeKey{m.sender, m.seq};
}

}  // namespace twofold
