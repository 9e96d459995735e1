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

#include "twofold/codec.hpp"

#include <type_traits>

namespace twofold {
namespace {

class Writer
{
public:
  void u8(std::uint8_t v) { out_.push_back(v); }

  void u32(std::uint32_t v)
  {
    for (int i = 0; i < 4; ++i)
    {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }

  void u64(std::uint64_t v)
  {
    for (int i = 0; i < 8; ++i)
    {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }

  // Reserves a length slot and returns its offset.
  std::size_t begin_field()
  {
    auto const at = out_.size();
    u32(0);
    return at;
  }

  void end_field(std::size_t at)
  {
    auto const len = static_cast<std::uint32_t>(out_.size() - at - 4);
    for (int i = 0; i < 4; ++i)
    {
      out_[at + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(len >> (8 * i));
    }
  }

  Bytes take() { return std::move(out_); }

private:
  Bytes out_;
};

class Reader
{
public:
  explicit Reader(std::span<std::uint8_t const> in) : in_{in} {}

  std::uint8_t u8()
  {
    need(1);
    return in_[pos_++];
  }

  std::uint32_t u32()
  {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
    {
      v |= std::uint32_t{in_[pos_++]} << (8 * i);
    }
    return v;
  }

  std::uint64_t u64()
  {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
    {
      v |= std::uint64_t{in_[pos_++]} << (8 * i);
    }
    return v;
  }

  /// Reads a length prefix and returns a reader over exactly that field.
  Reader field(char const *name)
  {
    auto const len = u32();
    if (len > in_.size() - pos_)
    {
      throw DecodeError(std::string{"truncated field: "} + name);
    }
    Reader sub{in_.subspan(pos_, len)};
    pos_ += len;
    return sub;
  }

  void expect_end(char const *what) const
  {
    if (pos_ != in_.size())
    {
      throw DecodeError(std::string{"trailing bytes in "} + what);
    }
  }

  [[nodiscard]] std::size_t remaining() const { return in_.size() - pos_; }

private:
  void need(std::size_t n) const
  {
    if (in_.size() - pos_ < n)
    {
      throw DecodeError("truncated input");
    }
  }

  std::span<std::uint8_t const> in_;
  std::size_t                   pos_{0};
};

MessageType parse_type(std::uint8_t raw)
{
  if (raw > static_cast<std::uint8_t>(MessageType::Blacklist))
  {
    throw DecodeError("unknown message type " + std::to_string(raw));
  }
  return static_cast<MessageType>(raw);
}

Content read_content(Reader r)
{
  auto const tag = parse_type(r.u8());
  switch (tag)
  {
  case MessageType::Transaction:
  {
    TransactionContent tx;
    tx.tx_id   = TxId{r.u64()};
    tx.payload = r.u32();
    r.expect_end("transaction content");
    return tx;
  }
  case MessageType::Vote:
  {
    auto const count = r.u32();
    if (r.remaining() != std::size_t{count} * 9)
    {
      throw DecodeError("vote ballot count does not match field length");
    }
    std::vector<Ballot> ballots;
    ballots.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i)
    {
      Ballot b;
      b.tx_id        = TxId{r.u64()};
      auto const raw = r.u8();
      if (raw > static_cast<std::uint8_t>(Verdict::NotValid))
      {
        throw DecodeError("unknown verdict " + std::to_string(raw));
      }
      b.verdict = static_cast<Verdict>(raw);
      ballots.push_back(b);
    }
    return VoteContent{std::move(ballots)};
  }
  case MessageType::Blacklist:
  {
    auto const count = r.u32();
    if (r.remaining() != std::size_t{count} * 4)
    {
      throw DecodeError("blacklist member count does not match field length");
    }
    std::vector<NodeId> members;
    members.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i)
    {
      NodeId const id{r.u32()};
      if (!members.empty() && !(members.back() < id))
      {
        throw DecodeError("blacklist members not strictly ascending");
      }
      members.push_back(id);
    }
    return BlacklistContent{NodeSet::from_unsorted(std::move(members))};
  }
  }
  throw DecodeError("unreachable content tag");
}

}  // namespace

Bytes encode_message(Message const &m)
{
  Writer w;

  auto f = w.begin_field();
  w.u8(static_cast<std::uint8_t>(m.type));
  w.end_field(f);

  f = w.begin_field();
  w.u64(m.seq);
  w.end_field(f);

  f = w.begin_field();
  std::visit(
      [&w](auto const &c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TransactionContent>)
        {
          w.u8(static_cast<std::uint8_t>(MessageType::Transaction));
          w.u64(c.tx_id.value());
          w.u32(c.payload);
        }
        else if constexpr (std::is_same_v<T, VoteContent>)
        {
          w.u8(static_cast<std::uint8_t>(MessageType::Vote));
          w.u32(static_cast<std::uint32_t>(c.ballots().size()));
          for (auto const &b : c.ballots())
          {
            w.u64(b.tx_id.value());
            w.u8(static_cast<std::uint8_t>(b.verdict));
          }
        }
        else
        {
          w.u8(static_cast<std::uint8_t>(MessageType::Blacklist));
          w.u32(static_cast<std::uint32_t>(c.members().size()));
          for (auto id : c.members())
          {
            w.u32(id.value());
          }
        }
      },
      m.content);
  w.end_field(f);

  f = w.begin_field();
  w.u32(m.sender.value());
  w.end_field(f);

  f = w.begin_field();
  w.u32(m.receiver.value());
  w.end_field(f);

  return w.take();
}

Message decode_message(std::span<std::uint8_t const> bytes)
{
  if (bytes.empty())
  {
    throw DecodeError("empty input");
  }
  Reader r{bytes};
  Message m;

  {
    auto f = r.field("type");
    m.type = parse_type(f.u8());
    f.expect_end("type");
  }
  {
    auto f = r.field("seq");
    m.seq  = f.u64();
    f.expect_end("seq");
  }
  m.content = read_content(r.field("content"));
  if (content_type(m.content) != m.type)
  {
    throw DecodeError("content does not match message type");
  }
  {
    auto f   = r.field("sender");
    m.sender = NodeId{f.u32()};
    f.expect_end("sender");
  }
  {
    auto f     = r.field("receiver");
    m.receiver = NodeId{f.u32()};
    f.expect_end("receiver");
  }
  r.expect_end("message");
  return m;
}

std::string to_hex(std::span<std::uint8_t const> bytes)
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string           out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes)
  {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

}  // namespace twofold
