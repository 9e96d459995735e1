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

#include "twofold/config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace twofold::cli {

/// Raised for malformed configuration text. Carries the 1-based line and the
/// offending key (empty when the line has no key).
class ParseError : public ConfigError
{
public:
  ParseError(std::size_t line, std::string field, std::string detail, std::string source = {});

  [[nodiscard]] std::size_t        line() const { return line_; }
  [[nodiscard]] std::string const &field() const { return field_; }
  [[nodiscard]] std::string const &detail() const { return detail_; }

private:
  std::size_t line_;
  std::string field_;
  std::string detail_;
};

/// Partial configuration: only the fields a source actually set.
struct ConfigOverrides
{
  std::optional<std::uint32_t> nodes;
  std::optional<std::uint32_t> byzantine;
  std::optional<StrategyKind>  strategy;
  std::optional<double>        split;
  std::optional<std::uint64_t> honest_after;
  std::optional<std::uint32_t> iterations;
  std::optional<std::uint32_t> reset_interval;
  std::optional<std::uint32_t> alphabet;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> replicates;
  std::optional<std::uint32_t> delay_max;
  std::optional<bool>          early_stop;

  /// Fields set in `later` win.
  [[nodiscard]] ConfigOverrides merged_with(ConfigOverrides const &later) const;

  friend bool operator==(ConfigOverrides const &, ConfigOverrides const &) = default;
};

/// Parses `key = value` lines. Blank lines and '#' comments are ignored.
/// Keys: nodes (N), byzantine (t), strategy, split, honest_after, iterations,
/// reset_interval, alphabet (k), seed, replicates, delay_max, early_stop.
ConfigOverrides parse_config(std::string_view text);

/// Reads and parses a file; I/O failures throw std::runtime_error with the path.
ConfigOverrides load_config_file(std::filesystem::path const &path);

/// Writes every set field over `base`. Setting `nodes` on a config whose
/// `byzantine` was not overridden rescales t to keep the t/N ratio.
ScenarioConfig apply(ScenarioConfig base, ConfigOverrides const &o);

}  // namespace twofold::cli
