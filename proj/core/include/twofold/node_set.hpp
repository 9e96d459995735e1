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

#include <algorithm>
#include <initializer_list>
#include <span>
#include <vector>

namespace twofold {

/// Sorted, duplicate-free set of node ids stored contiguously. Blacklists are
/// small and probed on every delivery, so a flat layout beats a tree here.
class NodeSet
{
public:
  using const_iterator = std::vector<NodeId>::const_iterator;

  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids)
  {
    for (auto id : ids)
    {
      insert(id);
    }
  }

  /// Builds from arbitrary input; sorts and removes duplicates.
  static NodeSet from_unsorted(std::vector<NodeId> ids)
  {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    NodeSet set;
    set.ids_ = std::move(ids);
    return set;
  }

  [[nodiscard]] bool contains(NodeId id) const
  {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  /// Returns true if the id was not yet present.
  bool insert(NodeId id)
  {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it != ids_.end() && *it == id)
    {
      return false;
    }
    ids_.insert(it, id);
    return true;
  }

  bool erase(NodeId id)
  {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id)
    {
      return false;
    }
    ids_.erase(it);
    return true;
  }

  void clear() { ids_.clear(); }

  [[nodiscard]] bool        empty() const { return ids_.empty(); }
  [[nodiscard]] std::size_t size() const { return ids_.size(); }

  [[nodiscard]] const_iterator begin() const { return ids_.begin(); }
  [[nodiscard]] const_iterator end() const { return ids_.end(); }

  [[nodiscard]] std::span<NodeId const> view() const { return ids_; }

  [[nodiscard]] bool is_subset_of(NodeSet const &other) const
  {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  friend bool operator==(NodeSet const &, NodeSet const &) = default;

private:
  std::vector<NodeId> ids_;
};

}  // namespace twofold
