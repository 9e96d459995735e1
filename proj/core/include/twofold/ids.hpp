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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace twofold {

/// Opaque network identity. Whether an id belongs to a parent or a child is
/// known only to the simulator that allocated it.
class NodeId
{
public:
  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t value) : value_{value} {}

  [[nodiscard]] constexpr std::uint32_t value() const { return value_; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;

private:
  std::uint32_t value_{0};
};

inline std::ostream &operator<<(std::ostream &os, NodeId id)
{
  return os << "n" << id.value();
}

using SeqNo = std::uint64_t;

/// Globally unique transaction identifier. Derived from the originator's
/// (sender, seq) through a bijective mixer so the id does not expose either.
class TxId
{
public:
  constexpr TxId() = default;
  constexpr explicit TxId(std::uint64_t value) : value_{value} {}

  [[nodiscard]] constexpr std::uint64_t value() const { return value_; }

  friend constexpr auto operator<=>(TxId, TxId) = default;

private:
  std::uint64_t value_{0};
};

inline std::ostream &operator<<(std::ostream &os, TxId id)
{
  return os << "tx" << id.value();
}

// splitmix64 finalizer; invertible on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t x)
{
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr TxId make_tx_id(NodeId originator, SeqNo seq)
{
  return TxId{mix64((std::uint64_t{originator.value()} << 32) ^ (seq & 0xffffffffULL))};
}

/// Identifies one logical broadcast: an honest sender uses the same key for
/// every copy of the same broadcast.
struct DedupeKey
{
  NodeId sender;
  SeqNo  seq{0};

  friend constexpr auto operator<=>(DedupeKey const &, DedupeKey const &) = default;
};

}  // namespace twofold

template <>
struct std::hash<twofold::NodeId>
{
  std::size_t operator()(twofold::NodeId id) const noexcept
  {
    return static_cast<std::size_t>(twofold::mix64(id.value()));
  }
};

template <>
struct std::hash<twofold::TxId>
{
  std::size_t operator()(twofold::TxId id) const noexcept
  {
    // Already mixed at construction.
    return static_cast<std::size_t>(id.value());
  }
};

template <>
struct std::hash<twofold::DedupeKey>
{
  std::size_t operator()(twofold::DedupeKey const &key) const noexcept
  {
    return static_cast<std::size_t>(
        twofold::mix64((std::uint64_t{key.sender.value()} << 40) ^ key.seq));
  }
};
