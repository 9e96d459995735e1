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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twofold {

using Bytes = std::vector<std::uint8_t>;

class DecodeError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Wire layout: five fields in declaration order (type, seq, content, sender,
// receiver), each prefixed with a little-endian u32 byte length.
//
//   type     1 byte
//   seq      u64
//   content  tag byte (same numbering as type) followed by
//              Transaction: tx_id u64, payload u32
//              Vote:        count u32, count * (tx_id u64, verdict u8)
//              Blacklist:   count u32, count * node u32 (strictly ascending)
//   sender   u32
//   receiver u32
//
// All integers little-endian.

Bytes encode_message(Message const &m);

/// Throws DecodeError on truncation, unknown type or verdict, non-canonical
/// member order, trailing bytes, or a content tag that disagrees with type.
Message decode_message(std::span<std::uint8_t const> bytes);

std::string to_hex(std::span<std::uint8_t const> bytes);

}  // namespace twofold
