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

#include "twofold/message.hpp"

namespace twofold {

std::string_view to_string(MessageType type)
{
  switch (type)
  {
  case MessageType::Transaction:
    return "transaction";
  case MessageType::Vote:
    return "vote";
  case MessageType::Blacklist:
    return "blacklist";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict)
{
  return verdict == Verdict::Valid ? "valid" : "not-valid";
}

NodeSet const &BlacklistContent::members() const
{
  static NodeSet const empty;
  return members_ ? *members_ : empty;
}

MessageType content_type(Content const &content)
{
  switch (content.index())
  {
  case 0:
    return MessageType::Transaction;
  case 1:
    return MessageType::Vote;
  default:
    return MessageType::Blacklist;
  }
}

}  // namespace twofold
