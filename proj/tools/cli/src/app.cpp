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

#include "twofold/cli/app.hpp"

#include "twofold/cli/config_file.hpp"
#include "twofold/cli/presets.hpp"
#include "twofold/cli/runner.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>

namespace twofold::cli {

namespace {

struct Flags
{
  std::string config_path;
  std::string preset;
  std::string strategy;
  std::string out_dir{"results"};
  bool        trace{false};

  std::uint32_t nodes{};
  std::uint32_t byzantine{};
  std::uint32_t iterations{};
  std::uint32_t reset_interval{};
  std::uint32_t alphabet{};
  std::uint64_t seed{};
  std::uint32_t replicates{};
  std::uint32_t delay_max{};
  std::uint64_t honest_after{};
  double        split{};
  bool          early_stop{};
};

template <class T>
void take(CLI::Option const *opt, T const &value, std::optional<T> &dst)
{
  if (opt->count() > 0)
  {
    dst = value;
  }
}

void write_file(std::filesystem::path const &path, auto &&writer)
{
  std::ofstream out{path, std::ios::binary | std::ios::trunc};
  if (!out)
  {
    throw std::runtime_error("cannot write " + path.string());
  }
  writer(out);
  out.close();
  if (!out)
  {
    throw std::runtime_error("error writing " + path.string());
  }
}

}  // namespace

int run_app(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Two-fold Byzantine detection simulator", "twofold-sim"};
  Flags    f;

  app.add_option("--config", f.config_path, "Flat key = value scenario file");
  auto *preset_opt = app.add_option("--preset", f.preset, "fig5, fig6, fig7, fig8 or table2");
  auto *nodes      = app.add_option("--nodes,-N", f.nodes, "Parent count N");
  auto *byz        = app.add_option("--byzantine,-t", f.byzantine, "Byzantine parent count t");
  auto *strategy   = app.add_option("--strategy", f.strategy,
                                    "uniform, equivocator, consistent or silent");
  auto *split      = app.add_option("--split", f.split, "Equivocator share receiving payload a");
  auto *honest     = app.add_option("--honest-after", f.honest_after,
                                    "Adversaries send consistently after this iteration");
  auto *iters      = app.add_option("--iterations", f.iterations, "Iteration cap");
  auto *reset      = app.add_option("--reset-interval", f.reset_interval,
                                    "Iterations between blacklist clears, 0 disables");
  auto *alphabet   = app.add_option("--alphabet,-k", f.alphabet, "Payload alphabet size");
  auto *seed       = app.add_option("--seed", f.seed, "Base RNG seed");
  auto *reps       = app.add_option("--replicates", f.replicates, "Replicates per scenario");
  auto *delay      = app.add_option("--delay-max", f.delay_max, "Largest delivery delay in ticks");
  auto *early      = app.add_option("--early-stop", f.early_stop,
                                    "Stop once every Byzantine parent is caught (resets disabled)");
  app.add_option("--out", f.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--trace", f.trace, "Write every delivered message to <out>/trace.txt");

  try
  {
    std::vector<std::string> reversed{args.rbegin(), args.rend()};
    app.parse(reversed);
  }
  catch (CLI::CallForHelp const &)
  {
    out << app.help();
    return kExitOk;
  }
  catch (CLI::ParseError const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::optional<Preset> preset;
  std::vector<Scenario> scenarios;
  try
  {
    ConfigOverrides flags;
    take(nodes, f.nodes, flags.nodes);
    take(byz, f.byzantine, flags.byzantine);
    take(split, f.split, flags.split);
    take(honest, f.honest_after, flags.honest_after);
    take(iters, f.iterations, flags.iterations);
    take(reset, f.reset_interval, flags.reset_interval);
    take(alphabet, f.alphabet, flags.alphabet);
    take(seed, f.seed, flags.seed);
    take(reps, f.replicates, flags.replicates);
    take(delay, f.delay_max, flags.delay_max);
    take(early, f.early_stop, flags.early_stop);
    if (strategy->count() > 0)
    {
      auto kind = parse_strategy(f.strategy);
      if (!kind)
      {
        throw ConfigError("strategy: unknown strategy '" + f.strategy + "'");
      }
      flags.strategy = *kind;
    }

    ConfigOverrides overrides;
    if (!f.config_path.empty())
    {
      overrides = load_config_file(f.config_path);
    }
    overrides = overrides.merged_with(flags);

    if (preset_opt->count() > 0)
    {
      preset = parse_preset(f.preset);
      if (!preset)
      {
        throw ConfigError("preset: unknown preset '" + f.preset + "'");
      }
      scenarios = preset_scenarios(*preset);
    }
    else
    {
      scenarios.push_back(Scenario{"custom", ScenarioConfig{}});
    }
    for (auto &s : scenarios)
    {
      s.config = apply(s.config, overrides);
      validate(s.config);
    }
  }
  catch (ConfigError const &e)
  {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  try
  {
    std::filesystem::path const dir{f.out_dir};
    std::filesystem::create_directories(dir);

    std::unique_ptr<std::ofstream> trace;
    if (f.trace)
    {
      trace = std::make_unique<std::ofstream>(dir / "trace.txt", std::ios::binary | std::ios::trunc);
      if (!*trace)
      {
        throw std::runtime_error("cannot write " + (dir / "trace.txt").string());
      }
    }

    auto const results = run_batch(scenarios, trace.get());

    write_file(dir / "results.csv", [&](std::ostream &o) { write_results_csv(o, results); });
    write_file(dir / "summary.csv", [&](std::ostream &o) { write_summary_csv(o, results); });
    write_file(dir / "results.json", [&](std::ostream &o) { o << results_json(results); });
    write_plotdata(dir / "plotdata", results, preset);
    if (trace)
    {
      trace->close();
      if (!*trace)
      {
        throw std::runtime_error("error writing " + (dir / "trace.txt").string());
      }
    }

    for (auto const &r : results)
    {
      out << summary_line(r) << '\n';
    }
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace twofold::cli
