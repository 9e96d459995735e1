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

#include "twofold/metrics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace twofold {

/// Non-negative fraction kept in lowest terms.
struct Rational
{
  std::uint64_t num{0};
  std::uint64_t den{1};

  [[nodiscard]] double to_double() const
  {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(Rational const &, Rational const &) = default;
};

/// Probability that at least one of `honest_pairs` parent/child pairs sees
/// differing contents when each pair matches with probability 1/k:
/// 1 - (1/k)^h. Throws std::domain_error for h = 0 or k < 2 and
/// std::overflow_error when k^h does not fit in 64 bits.
Rational detection_probability_exact(std::uint32_t honest_pairs, std::uint32_t alphabet = 2);

/// Floating-point form of the above; valid for any h >= 1, k >= 2.
double detection_probability(std::uint32_t honest_pairs, std::uint32_t alphabet = 2);

enum class Observation : std::uint8_t
{
  Equal,      // 'e'
  Different,  // 'd'
};

/// Every e/d assignment over h honest pairs. Row r, column c is Different
/// when bit (h - 1 - c) of r is set, so row 0 is all-equal and rows run in
/// binary counting order, leftmost column most significant.
struct TruthTable
{
  std::uint32_t              width{0};
  std::vector<std::uint32_t> rows;
  std::uint64_t              detecting{0};  // rows with at least one 'd'

  [[nodiscard]] Observation at(std::size_t row, std::uint32_t column) const;
  [[nodiscard]] std::string render(std::size_t row) const;  // e.g. "e,e,d,e"
};

inline constexpr std::uint32_t kMaxTruthTableWidth = 20;

/// Throws std::length_error above kMaxTruthTableWidth, std::domain_error for 0.
TruthTable enumerate_outcomes(std::uint32_t honest_pairs);

struct Range
{
  double mean{0};
  double min{0};
  double max{0};

  friend bool operator==(Range const &, Range const &) = default;
};

struct Summary
{
  std::size_t replicates{0};
  Range       detection_fraction;  // final snapshot
  Range       pre_reset_fraction;
  Range       total_messages;

  /// Share of replicates whose first iteration produced any direct detection.
  double detection_event_rate{0};

  // Nearest-rank percentiles of first-caught iteration, over all Byzantine
  // parents of all replicates that were caught at least once.
  std::optional<std::uint64_t> latency_p50;
  std::optional<std::uint64_t> latency_p90;
  std::optional<std::uint64_t> latency_max;
  std::size_t                  never_caught{0};

  friend bool operator==(Summary const &, Summary const &) = default;
};

/// Symmetric statistics over replicates; result is independent of order.
/// Throws std::invalid_argument on empty input.
Summary aggregate(std::span<RunMetrics const> replicates);

}  // namespace twofold
