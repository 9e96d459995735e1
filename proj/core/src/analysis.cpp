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

#include "twofold/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace twofold {

Rational detection_probability_exact(std::uint32_t honest_pairs, std::uint32_t alphabet)
{
  if (honest_pairs == 0)
  {
    throw std::domain_error("detection probability needs at least one honest pair");
  }
  if (alphabet < 2)
  {
    throw std::domain_error("alphabet size must be at least 2");
  }
  std::uint64_t den = 1;
  for (std::uint32_t i = 0; i < honest_pairs; ++i)
  {
    if (den > std::numeric_limits<std::uint64_t>::max() / alphabet)
    {
      throw std::overflow_error("k^h exceeds 64 bits");
    }
    den *= alphabet;
  }
  // gcd(k^h - 1, k^h) = 1, already in lowest terms.
  return Rational{den - 1, den};
}

double detection_probability(std::uint32_t honest_pairs, std::uint32_t alphabet)
{
  if (honest_pairs == 0)
  {
    throw std::domain_error("detection probability needs at least one honest pair");
  }
  if (alphabet < 2)
  {
    throw std::domain_error("alphabet size must be at least 2");
  }
  return -std::expm1(static_cast<double>(honest_pairs) * -std::log(static_cast<double>(alphabet)));
}

Observation TruthTable::at(std::size_t row, std::uint32_t column) const
{
  auto const bit = width - 1 - column;
  return ((rows.at(row) >> bit) & 1U) != 0 ? Observation::Different : Observation::Equal;
}

std::string TruthTable::render(std::size_t row) const
{
  std::string out;
  for (std::uint32_t c = 0; c < width; ++c)
  {
    if (c > 0)
    {
      out.push_back(',');
    }
    out.push_back(at(row, c) == Observation::Different ? 'd' : 'e');
  }
  return out;
}

TruthTable enumerate_outcomes(std::uint32_t honest_pairs)
{
  if (honest_pairs == 0)
  {
    throw std::domain_error("truth table needs at least one honest pair");
  }
  if (honest_pairs > kMaxTruthTableWidth)
  {
    throw std::length_error("truth table wider than " + std::to_string(kMaxTruthTableWidth));
  }
  TruthTable table;
  table.width = honest_pairs;
  auto const count = std::uint32_t{1} << honest_pairs;
  table.rows.resize(count);
  std::iota(table.rows.begin(), table.rows.end(), 0U);
  table.detecting = static_cast<std::uint64_t>(
      std::count_if(table.rows.begin(), table.rows.end(), [](auto r) { return r != 0; }));
  return table;
}

namespace {

Range range_of(std::vector<double> values)
{
  // Sorting first makes the floating-point sum independent of input order.
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (auto v : values)
  {
    sum += v;
  }
  return Range{sum / static_cast<double>(values.size()), values.front(), values.back()};
}

std::uint64_t nearest_rank(std::vector<std::uint64_t> const &sorted, double pct)
{
  auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
  rank      = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

}  // namespace

Summary aggregate(std::span<RunMetrics const> replicates)
{
  if (replicates.empty())
  {
    throw std::invalid_argument("aggregate: no replicates");
  }

  Summary s;
  s.replicates = replicates.size();

  std::vector<double>        fractions;
  std::vector<double>        pre_reset;
  std::vector<double>        totals;
  std::vector<std::uint64_t> latencies;
  std::size_t                with_event = 0;

  for (auto const &run : replicates)
  {
    fractions.push_back(run.final_detection_fraction);
    pre_reset.push_back(run.pre_reset_detection_fraction);
    totals.push_back(static_cast<double>(run.total_messages));
    if (!run.reports.empty() && !run.reports.front().detections.empty())
    {
      ++with_event;
    }
    for (auto const &[id, first] : run.detection_latency)
    {
      if (first)
      {
        latencies.push_back(*first);
      }
      else
      {
        ++s.never_caught;
      }
    }
  }

  s.detection_fraction   = range_of(std::move(fractions));
  s.pre_reset_fraction   = range_of(std::move(pre_reset));
  s.total_messages       = range_of(std::move(totals));
  s.detection_event_rate = static_cast<double>(with_event) / static_cast<double>(replicates.size());

  if (!latencies.empty())
  {
    std::sort(latencies.begin(), latencies.end());
    s.latency_p50 = nearest_rank(latencies, 50);
    s.latency_p90 = nearest_rank(latencies, 90);
    s.latency_max = latencies.back();
  }
  return s;
}

}  // namespace twofold
