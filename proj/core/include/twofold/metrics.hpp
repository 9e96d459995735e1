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

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace twofold {

struct Detection
{
  NodeId detector;
  NodeId detected;

  friend bool operator==(Detection const &, Detection const &) = default;
};

/// Outcome of one iteration, measured after quiescence and before any reset.
struct IterationReport
{
  std::uint64_t iteration{0};

  std::uint64_t messages_sent{0};       // network copies enqueued
  std::uint64_t messages_delivered{0};  // copies handed to a receiver after dedupe
  std::uint64_t messages_processed{0};  // delivered to an honest node and not blacklist-dropped
  std::uint64_t duplicates_suppressed{0};
  std::uint64_t pair_messages{0};       // instructions and relays on pair channels

  std::vector<Detection>      detections;  // direct difference-detector hits
  std::map<NodeId, NodeSet>   blacklists;  // honest parent -> snapshot; empty when not kept
  std::vector<TxId>           commits;     // txs committed by at least one honest parent
  std::uint64_t               commit_events{0};

  std::vector<NodeId> caught;      // Byzantine parents on every honest blacklist
  double detection_fraction{1.0};  // |caught| / t, or 1 when t = 0
  bool   reset{false};             // blacklists were cleared after the snapshot

  friend bool operator==(IterationReport const &, IterationReport const &) = default;
};

struct RunMetrics
{
  std::uint64_t                seed{0};
  std::vector<NodeId>          byzantine;
  std::vector<IterationReport> reports;

  double        final_detection_fraction{1.0};
  double        pre_reset_detection_fraction{1.0};  // mean over snapshots taken just before a reset
  std::uint64_t total_messages{0};

  /// Byzantine parent -> first iteration it sat on every honest blacklist.
  std::map<NodeId, std::optional<std::uint64_t>> detection_latency;

  friend bool operator==(RunMetrics const &, RunMetrics const &) = default;
};

}  // namespace twofold
