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

#include "twofold/cli/config_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twofold::cli {

ParseError::ParseError(std::size_t line, std::string field, std::string detail, std::string source)
  : ConfigError{(source.empty() ? "" : source + ": ") + "line " + std::to_string(line) +
                (field.empty() ? "" : ", field '" + field + "'") + ": " + detail}
  , line_{line}
  , field_{std::move(field)}
  , detail_{std::move(detail)}
{}

namespace {

std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_unsigned(std::string_view value, std::size_t line, std::string const &key)
{
  std::uint64_t v{};
  auto const [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
  {
    throw ParseError(line, key, "expected a non-negative integer, got '" + std::string{value} + "'");
  }
  if (v > std::numeric_limits<T>::max())
  {
    throw ParseError(line, key, "value " + std::string{value} + " out of range");
  }
  return static_cast<T>(v);
}

double parse_double(std::string_view value, std::size_t line, std::string const &key)
{
  double v{};
  auto const [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(v))
  {
    throw ParseError(line, key, "expected a number, got '" + std::string{value} + "'");
  }
  return v;
}

bool parse_bool(std::string_view value, std::size_t line, std::string const &key)
{
  if (value == "true" || value == "1" || value == "yes")
  {
    return true;
  }
  if (value == "false" || value == "0" || value == "no")
  {
    return false;
  }
  throw ParseError(line, key, "expected true or false, got '" + std::string{value} + "'");
}

std::string canonical_key(std::string_view key)
{
  if (key == "N")
  {
    return "nodes";
  }
  if (key == "t")
  {
    return "byzantine";
  }
  if (key == "k")
  {
    return "alphabet";
  }
  std::string out{key};
  for (auto &c : out)
  {
    if (c == '-')
    {
      c = '_';
    }
  }
  return out;
}

}  // namespace

ConfigOverrides ConfigOverrides::merged_with(ConfigOverrides const &later) const
{
  ConfigOverrides out = *this;
  auto pick = [](auto &dst, auto const &src) {
    if (src)
    {
      dst = src;
    }
  };
  pick(out.nodes, later.nodes);
  pick(out.byzantine, later.byzantine);
  pick(out.strategy, later.strategy);
  pick(out.split, later.split);
  pick(out.honest_after, later.honest_after);
  pick(out.iterations, later.iterations);
  pick(out.reset_interval, later.reset_interval);
  pick(out.alphabet, later.alphabet);
  pick(out.seed, later.seed);
  pick(out.replicates, later.replicates);
  pick(out.delay_max, later.delay_max);
  pick(out.early_stop, later.early_stop);
  return out;
}

ConfigOverrides parse_config(std::string_view text)
{
  ConfigOverrides       out;
  std::set<std::string> seen;
  std::size_t           line_no = 0;

  while (!text.empty())
  {
    ++line_no;
    auto const nl   = text.find('\n');
    auto       line = text.substr(0, nl);
    text            = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto const hash = line.find('#'); hash != std::string_view::npos)
    {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }

    auto const eq = line.find('=');
    if (eq == std::string_view::npos)
    {
      throw ParseError(line_no, "", "expected 'key = value'");
    }
    auto const raw_key = trim(line.substr(0, eq));
    auto const value   = trim(line.substr(eq + 1));
    if (raw_key.empty())
    {
      throw ParseError(line_no, "", "missing key before '='");
    }
    auto const key = canonical_key(raw_key);
    if (value.empty())
    {
      throw ParseError(line_no, key, "missing value");
    }
    if (!seen.insert(key).second)
    {
      throw ParseError(line_no, key, "duplicate key");
    }

    if (key == "nodes")
    {
      out.nodes = parse_unsigned<std::uint32_t>(value, line_no, key);
    }
    else if (key == "byzantine")
    {
      out.byzantine = parse_unsigned<std::uint32_t>(value, line_no, key);
    }
    else if (key == "strategy")
    {
      auto kind = parse_strategy(value);
      if (!kind)
      {
        throw ParseError(line_no, key,
                         "unknown strategy '" + std::string{value} +
                             "' (uniform, equivocator, consistent, silent)");
      }
      out.strategy = *kind;
    }
    else if (key == "split")
    {
      out.split = parse_double(value, line_no, key);
    }
    else if (key == "honest_after")
    {
      out.honest_after = parse_unsigned<std::uint64_t>(value, line_no, key);
    }
    else if (key == "iterations")
    {
      out.iterations = parse_unsigned<std::uint32_t>(value, line_no, key);
    }
    else if (key == "reset_interval")
    {
      out.reset_interval = parse_unsigned<std::uint32_t>(value, line_no, key);
    }
    else if (key == "alphabet")
    {
      out.alphabet = parse_unsigned<std::uint32_t>(value, line_no, key);
    }
    else if (key == "seed")
    {
      out.seed = parse_unsigned<std::uint64_t>(value, line_no, key);
    }
    else if (key == "replicates")
    {
      out.replicates = parse_unsigned<std::uint32_t>(value, line_no, key);
    }
    else if (key == "delay_max")
    {
      out.delay_max = parse_unsigned<std::uint32_t>(value, line_no, key);
    }
    else if (key == "early_stop")
    {
      out.early_stop = parse_bool(value, line_no, key);
    }
    else
    {
      throw ParseError(line_no, key, "unknown key");
    }
  }
  return out;
}

ConfigOverrides load_config_file(std::filesystem::path const &path)
{
  std::ifstream in{path, std::ios::binary};
  if (!in)
  {
    throw std::runtime_error("cannot open config file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try
  {
    return parse_config(buf.str());
  }
  catch (ParseError const &e)
  {
    throw ParseError(e.line(), e.field(), e.detail(), path.string());
  }
}

ScenarioConfig apply(ScenarioConfig base, ConfigOverrides const &o)
{
  if (o.nodes)
  {
    if (!o.byzantine && base.nodes > 0)
    {
      auto const scaled = std::llround(static_cast<double>(base.byzantine) * *o.nodes /
                                       static_cast<double>(base.nodes));
      base.byzantine    = static_cast<std::uint32_t>(scaled);
    }
    base.nodes = *o.nodes;
  }
  if (o.byzantine)
  {
    base.byzantine = *o.byzantine;
  }
  if (o.strategy)
  {
    base.strategy.kind = *o.strategy;
  }
  if (o.split)
  {
    base.strategy.split = *o.split;
  }
  if (o.honest_after)
  {
    base.strategy.honest_after = *o.honest_after;
  }
  if (o.iterations)
  {
    base.iterations = *o.iterations;
  }
  if (o.reset_interval)
  {
    base.reset_interval = *o.reset_interval;
  }
  if (o.alphabet)
  {
    base.alphabet = *o.alphabet;
  }
  if (o.seed)
  {
    base.seed = *o.seed;
  }
  if (o.replicates)
  {
    base.replicates = *o.replicates;
  }
  if (o.delay_max)
  {
    base.delay_max = *o.delay_max;
  }
  if (o.early_stop)
  {
    base.early_stop = *o.early_stop;
  }
  return base;
}

}  // namespace twofold::cli
