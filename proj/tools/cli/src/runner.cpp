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

#include "twofold/cli/runner.hpp"

#include "twofold/simnet.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twofold::cli {

namespace {

std::ofstream open_output(std::filesystem::path const &path)
{
  std::ofstream out{path, std::ios::binary | std::ios::trunc};
  if (!out)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void close_output(std::ofstream &out, std::filesystem::path const &path)
{
  out.close();
  if (!out)
  {
    throw std::runtime_error("error writing " + path.string());
  }
}

// Mean of one per-iteration quantity over replicates; replicates that
// stopped early contribute only while they ran.
template <class F>
std::vector<double> per_iteration_mean(std::vector<RunMetrics> const &runs, F field)
{
  std::size_t length = 0;
  for (auto const &r : runs)
  {
    length = std::max(length, r.reports.size());
  }
  std::vector<double> out(length, 0.0);
  for (std::size_t i = 0; i < length; ++i)
  {
    double      sum = 0;
    std::size_t n   = 0;
    for (auto const &r : runs)
    {
      if (i < r.reports.size())
      {
        sum += field(r.reports[i]);
        ++n;
      }
    }
    out[i] = n == 0 ? 0.0 : sum / static_cast<double>(n);
  }
  return out;
}

void write_series(std::filesystem::path const &path, ScenarioResult const &res)
{
  auto out = open_output(path);
  auto const fraction =
      per_iteration_mean(res.runs, [](IterationReport const &r) { return r.detection_fraction; });
  auto const sent = per_iteration_mean(
      res.runs, [](IterationReport const &r) { return static_cast<double>(r.messages_sent); });
  auto const processed = per_iteration_mean(
      res.runs, [](IterationReport const &r) { return static_cast<double>(r.messages_processed); });

  out << "# " << res.scenario.id << " mean over " << res.runs.size() << " replicate(s)\n";
  out << "# iteration detection_fraction messages_sent messages_processed\n";
  for (std::size_t i = 0; i < fraction.size(); ++i)
  {
    out << (i + 1) << ' ' << fixed(fraction[i]) << ' ' << fixed(sent[i]) << ' '
        << fixed(processed[i]) << '\n';
  }
  close_output(out, path);
}

void write_sweep(std::filesystem::path const &path, std::vector<ScenarioResult> const &results)
{
  auto out = open_output(path);
  out << "# t N mean_pre_reset_fraction min max mean_final_fraction\n";
  for (auto const &res : results)
  {
    auto const &s = res.summary;
    out << res.scenario.config.byzantine << ' ' << res.scenario.config.nodes << ' '
        << fixed(s.pre_reset_fraction.mean) << ' ' << fixed(s.pre_reset_fraction.min) << ' '
        << fixed(s.pre_reset_fraction.max) << ' ' << fixed(s.detection_fraction.mean) << '\n';
  }
  close_output(out, path);
}

void write_tolerance(std::filesystem::path const &path, std::vector<ScenarioResult> const &results)
{
  auto out = open_output(path);
  out << "# protocol fault_tolerance_percent source\n";
  for (auto const &ref : reference_tolerances())
  {
    out << ref.protocol << ' ' << fixed(ref.percent) << " reference\n";
  }
  for (auto const &res : results)
  {
    out << "TDBA(" << res.scenario.id << ") " << fixed(100.0 * res.summary.pre_reset_fraction.mean)
        << " simulated\n";
  }
  close_output(out, path);
}

void write_processed(std::filesystem::path const &path, std::vector<ScenarioResult> const &results)
{
  auto out = open_output(path);
  std::vector<std::vector<double>> columns;
  std::size_t                      length = 0;
  out << "# iteration";
  for (auto const &res : results)
  {
    out << ' ' << res.scenario.id << "_processed";
    columns.push_back(per_iteration_mean(
        res.runs, [](IterationReport const &r) { return static_cast<double>(r.messages_processed); }));
    length = std::max(length, columns.back().size());
  }
  out << '\n';
  for (std::size_t i = 0; i < length; ++i)
  {
    out << (i + 1);
    for (auto const &col : columns)
    {
      out << ' ' << (i < col.size() ? fixed(col[i]) : std::string{"nan"});
    }
    out << '\n';
  }
  close_output(out, path);
}

void write_truth_table(std::filesystem::path const &path, std::vector<ScenarioResult> const &results)
{
  auto out = open_output(path);
  for (auto const &res : results)
  {
    auto const &cfg = res.scenario.config;
    auto const  h   = cfg.nodes - cfg.byzantine;
    out << "# " << res.scenario.id << ": honest pairs " << h << '\n';
    if (h == 0 || h > kMaxTruthTableWidth)
    {
      out << "# truth table unavailable for this width\n";
      continue;
    }
    auto const table = enumerate_outcomes(h);
    auto const exact = detection_probability_exact(h, cfg.alphabet);
    out << "# exact detection probability " << exact.num << '/' << exact.den << " = "
        << fixed(exact.to_double()) << '\n';
    out << "# observed detection event rate " << fixed(res.summary.detection_event_rate) << " over "
        << res.runs.size() << " replicate(s)\n";
    out << "# row observations detected\n";
    for (std::size_t row = 0; row < table.rows.size(); ++row)
    {
      out << (row + 1) << ' ' << table.render(row) << ' ' << (table.rows[row] != 0 ? 1 : 0) << '\n';
    }
  }
  close_output(out, path);
}

}  // namespace

std::string fixed(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::vector<ScenarioResult> run_batch(std::vector<Scenario> const &scenarios, std::ostream *trace)
{
  std::vector<ScenarioResult> results;
  results.reserve(scenarios.size());
  for (auto const &scenario : scenarios)
  {
    validate(scenario.config);
    ScenarioResult res;
    res.scenario = scenario;
    res.runs.reserve(scenario.config.replicates);
    for (std::uint32_t r = 0; r < scenario.config.replicates; ++r)
    {
      auto cfg = scenario.config;
      cfg.seed = replicate_seed(scenario.config.seed, r);
      if (trace != nullptr)
      {
        *trace << "# " << scenario.id << " replicate " << r << '\n';
      }
      RunOptions options;
      options.keep_blacklists = false;
      options.trace           = trace;
      res.runs.push_back(run_scenario(cfg, options));
    }
    res.summary = aggregate(res.runs);
    results.push_back(std::move(res));
  }
  return results;
}

void write_results_csv(std::ostream &out, std::vector<ScenarioResult> const &results)
{
  out << kResultsHeader << '\n';
  for (auto const &res : results)
  {
    auto const &cfg = res.scenario.config;
    for (std::size_t r = 0; r < res.runs.size(); ++r)
    {
      auto const   &run        = res.runs[r];
      std::uint64_t detections = 0;
      for (auto const &rep : run.reports)
      {
        detections += rep.detections.size();
        out << res.scenario.id << ',' << cfg.nodes << ',' << cfg.byzantine << ','
            << to_string(cfg.strategy.kind) << ',' << cfg.alphabet << ',' << run.seed << ',' << r
            << ',' << rep.iteration << ',' << rep.messages_sent << ',' << detections << ','
            << fixed(rep.detection_fraction) << ',' << rep.commits.size() << '\n';
      }
    }
  }
}

void write_summary_csv(std::ostream &out, std::vector<ScenarioResult> const &results)
{
  out << "scenario_id,N,t,strategy,k,replicates,mean_detection_fraction,min_detection_fraction,"
         "max_detection_fraction,mean_pre_reset_fraction,mean_total_messages,detection_event_rate\n";
  for (auto const &res : results)
  {
    auto const &cfg = res.scenario.config;
    auto const &s   = res.summary;
    out << res.scenario.id << ',' << cfg.nodes << ',' << cfg.byzantine << ','
        << to_string(cfg.strategy.kind) << ',' << cfg.alphabet << ',' << s.replicates << ','
        << fixed(s.detection_fraction.mean) << ',' << fixed(s.detection_fraction.min) << ','
        << fixed(s.detection_fraction.max) << ',' << fixed(s.pre_reset_fraction.mean) << ','
        << fixed(s.total_messages.mean) << ',' << fixed(s.detection_event_rate) << '\n';
  }
}

std::string results_json(std::vector<ScenarioResult> const &results)
{
  auto doc = nlohmann::ordered_json::array();
  for (auto const &res : results)
  {
    auto const &cfg = res.scenario.config;
    auto const &s   = res.summary;

    nlohmann::ordered_json config{
        {"N", cfg.nodes},
        {"t", cfg.byzantine},
        {"strategy", to_string(cfg.strategy.kind)},
        {"split", cfg.strategy.split},
        {"honest_after", cfg.strategy.honest_after},
        {"iterations", cfg.iterations},
        {"reset_interval", cfg.reset_interval},
        {"k", cfg.alphabet},
        {"seed", cfg.seed},
        {"replicates", cfg.replicates},
        {"delay_max", cfg.delay_max},
        {"early_stop", cfg.early_stop},
    };

    auto range = [](Range const &r) {
      return nlohmann::ordered_json{{"mean", r.mean}, {"min", r.min}, {"max", r.max}};
    };
    auto maybe = [](std::optional<std::uint64_t> v) {
      return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    nlohmann::ordered_json summary{
        {"detection_fraction", range(s.detection_fraction)},
        {"pre_reset_fraction", range(s.pre_reset_fraction)},
        {"total_messages", range(s.total_messages)},
        {"detection_event_rate", s.detection_event_rate},
        {"latency_p50", maybe(s.latency_p50)},
        {"latency_p90", maybe(s.latency_p90)},
        {"latency_max", maybe(s.latency_max)},
        {"never_caught", s.never_caught},
    };

    auto replicates = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < res.runs.size(); ++r)
    {
      auto const &run = res.runs[r];
      replicates.push_back({
          {"replicate", r},
          {"seed", run.seed},
          {"iterations_run", run.reports.size()},
          {"final_detection_fraction", run.final_detection_fraction},
          {"pre_reset_detection_fraction", run.pre_reset_detection_fraction},
          {"total_messages", run.total_messages},
      });
    }

    doc.push_back({
        {"scenario_id", res.scenario.id},
        {"config", std::move(config)},
        {"summary", std::move(summary)},
        {"replicates", std::move(replicates)},
    });
  }
  return doc.dump(2) + "\n";
}

void write_plotdata(std::filesystem::path const &dir, std::vector<ScenarioResult> const &results,
                    std::optional<Preset> preset)
{
  std::filesystem::create_directories(dir);
  for (auto const &res : results)
  {
    write_series(dir / (res.scenario.id + ".dat"), res);
  }
  if (!preset)
  {
    return;
  }
  auto const path = dir / (std::string{to_string(*preset)} + ".dat");
  switch (*preset)
  {
  case Preset::Fig5:
  case Preset::Fig6:
    write_sweep(path, results);
    break;
  case Preset::Fig7:
    write_tolerance(path, results);
    break;
  case Preset::Fig8:
    write_processed(path, results);
    break;
  case Preset::Table2:
    write_truth_table(path, results);
    break;
  }
}

std::string summary_line(ScenarioResult const &result)
{
  auto const &cfg = result.scenario.config;
  auto const &s   = result.summary;
  std::ostringstream line;
  line << result.scenario.id << ": N=" << cfg.nodes << " t=" << cfg.byzantine
       << " strategy=" << to_string(cfg.strategy.kind) << " replicates=" << s.replicates
       << " detection=" << fixed(s.detection_fraction.mean)
       << " pre_reset=" << fixed(s.pre_reset_fraction.mean)
       << " messages=" << fixed(s.total_messages.mean)
       << " event_rate=" << fixed(s.detection_event_rate);
  return line.str();
}

}  // namespace twofold::cli
