// Copyright 2026 The mmbeam Authors.
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

// mmbeam command-line front end.
//
//   mmbeam run --synthesize --strategy tl --beams 2 --width 5 --out out/
//   mmbeam matrix --matrix matrix.json --out out/ --workers 4
//   mmbeam synthesize --config synth.json --out scenario/
//
// Exit status: 0 on success, 2 on configuration errors, 3 when a run or any
// matrix cell fails.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "mmbeam/engine.h"
#include "mmbeam/error.h"
#include "mmbeam/matrix.h"
#include "mmbeam/report.h"
#include "mmbeam/scenario_io.h"
#include "mmbeam/synthesis.h"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitFailure = 3;

// Values gathered from --config first, then overridden by flags.
struct Options {
  std::string config_path;
  std::optional<std::string> scenario;
  bool synthesize = false;
  std::optional<std::string> strategy;
  std::optional<int> beams;
  std::optional<double> width;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> channel;
  std::optional<std::string> element;
  std::optional<std::string> scheduler;
  std::optional<std::string> association;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<double> grid_step;
  std::optional<int> cdf_points;
  std::optional<std::string> matrix;
  json synthesis = json::object();
};

template <class T>
void FillFrom(const json& j, const char* key, std::optional<T>* slot) {
  if (!slot->has_value() && j.contains(key)) *slot = j.at(key).get<T>();
}

// Flags win over the config file.
void MergeConfig(Options* o) {
  if (o->config_path.empty()) return;
  std::ifstream in(o->config_path);
  if (!in) throw mmbeam::ConfigError("cannot open config " + o->config_path);
  json j;
  try {
    j = json::parse(in);
    FillFrom(j, "scenario", &o->scenario);
    FillFrom(j, "strategy", &o->strategy);
    FillFrom(j, "beams", &o->beams);
    FillFrom(j, "width", &o->width);
    FillFrom(j, "seed", &o->seed);
    FillFrom(j, "channel", &o->channel);
    FillFrom(j, "element", &o->element);
    FillFrom(j, "scheduler", &o->scheduler);
    FillFrom(j, "association", &o->association);
    FillFrom(j, "out", &o->out);
    FillFrom(j, "workers", &o->workers);
    FillFrom(j, "grid_step", &o->grid_step);
    FillFrom(j, "cdf_points", &o->cdf_points);
    FillFrom(j, "matrix", &o->matrix);
    if (j.contains("synthesize")) {
      o->synthesis = j.at("synthesize");
      if (!o->scenario) o->synthesize = true;
    }
  } catch (const json::exception& e) {
    throw mmbeam::ConfigError("config " + o->config_path + ": " + e.what());
  }
}

mmbeam::Scenario BuildScenario(const Options& o) {
  std::optional<mmbeam::Scenario> scenario;
  if (o.synthesize) {
    json spec = o.synthesis;
    if (o.seed && !spec.contains("seed")) spec["seed"] = *o.seed;
    scenario = mmbeam::SynthesizeIntersection(mmbeam::IntersectionSpecFromJson(spec.dump()));
  } else if (o.scenario) {
    scenario = mmbeam::LoadScenario(*o.scenario);
  } else {
    throw mmbeam::ConfigError("give --scenario or --synthesize");
  }
  if (o.channel || o.element) {
    mmbeam::ScenarioData data = scenario->data();
    if (o.channel) data.family = mmbeam::ParseChannelFamily(*o.channel);
    if (o.element) data.element = mmbeam::ParseElementType(*o.element);
    if (data.element == mmbeam::ElementType::kSector3gpp) {
      for (auto& g : data.gnbs) {
        if (g.sector_centers.empty()) g.sector_centers = mmbeam::DefaultSectorCenters();
      }
    }
    scenario.emplace(std::move(data));
  }
  if (o.beams || o.width) {
    const auto& first = scenario->gnbs().empty() ? mmbeam::GnbSite{} : scenario->gnbs()[0];
    scenario.emplace(scenario->WithBeamLimits(o.beams.value_or(first.n_beams_max),
                                              o.width.value_or(first.max_width_deg)));
  }
  return *scenario;
}

mmbeam::RunConfig BuildRunConfig(const Options& o) {
  mmbeam::RunConfig config;
  if (o.strategy) config.strategy = mmbeam::ParseStrategy(*o.strategy);
  if (o.seed) config.seed = *o.seed;
  if (o.scheduler) config.scheduler = mmbeam::ParseScheduler(*o.scheduler);
  if (o.association) config.association = mmbeam::ParseAssociation(*o.association);
  if (o.workers) {
    if (*o.workers < 1) throw mmbeam::ConfigError("--workers must be >= 1");
    config.workers = *o.workers;
  }
  if (o.grid_step) config.optimum.grid_step_deg = *o.grid_step;
  config.record_configs = true;
  return config;
}

int CmdRun(const Options& o) {
  const mmbeam::Scenario scenario = BuildScenario(o);
  const mmbeam::RunConfig config = BuildRunConfig(o);
  const mmbeam::MetricsLedger ledger = mmbeam::Run(scenario, config);
  const auto& first = scenario.gnbs().empty() ? mmbeam::GnbSite{} : scenario.gnbs()[0];
  mmbeam::RunLabel label{o.synthesize ? "synthetic" : o.scenario.value_or(""),
                         config.strategy,
                         config.scheduler,
                         config.association,
                         first.n_beams_max,
                         first.max_width_deg,
                         config.seed};
  const mmbeam::RunSummary summary = mmbeam::Summarize(label, ledger);
  if (o.out) {
    mmbeam::WriteRunOutputs(*o.out, summary, ledger, o.cdf_points.value_or(100));
  }
  mmbeam::WriteSummaryJson(std::cout, summary);
  return 0;
}

int CmdMatrix(const Options& o) {
  if (!o.matrix) throw mmbeam::ConfigError("give --matrix FILE");
  const mmbeam::MatrixFile file = mmbeam::LoadMatrixFile(*o.matrix);
  mmbeam::MatrixOptions options;
  options.base = BuildRunConfig(o);
  options.base.workers = 1;
  options.workers = o.workers.value_or(1);
  options.cdf_points = o.cdf_points.value_or(100);
  if (o.out) options.out_dir = *o.out;
  const mmbeam::MatrixResult result = mmbeam::RunMatrix(file.matrix, file.scenarios, options);
  mmbeam::WriteMatrixSummaryCsv(std::cout, result);
  for (const auto& row : result.rows) {
    if (!row.ok) spdlog::error("cell {} failed: {}", row.cell.id, row.error);
  }
  return result.all_ok() ? 0 : kExitFailure;
}

int CmdSynthesize(Options o) {
  if (!o.out) throw mmbeam::ConfigError("give --out DIR");
  o.synthesize = true;
  o.scenario.reset();
  mmbeam::SaveScenario(BuildScenario(o), *o.out);
  return 0;
}

void AddCommon(CLI::App* cmd, Options* o) {
  cmd->add_option("--config", o->config_path, "JSON file with defaults for any flag");
  cmd->add_option("--seed", o->seed, "Random seed");
  cmd->add_option("--out", o->out, "Output directory");
  cmd->add_option("--workers", o->workers, "Worker threads");
}

void AddRunFlags(CLI::App* cmd, Options* o) {
  cmd->add_option("--scenario", o->scenario, "Scenario descriptor (JSON)");
  cmd->add_flag("--synthesize", o->synthesize, "Use the synthetic intersection");
  cmd->add_option("--beams", o->beams, "Maximum beams per gNB (N)");
  cmd->add_option("--width", o->width, "Maximum beam width in degrees (A)");
  cmd->add_option("--channel", o->channel, "Channel family: 3gpp or nyu");
  cmd->add_option("--element", o->element, "Antenna element: iso or 3gpp");
}

void AddEngineFlags(CLI::App* cmd, Options* o) {
  cmd->add_option("--scheduler", o->scheduler, "equal_share, max_rate or best_vehicle");
  cmd->add_option("--association", o->association, "strongest or nearest");
  cmd->add_option("--grid-step", o->grid_step, "Direction grid of the optimum, degrees");
  cmd->add_option("--cdf-points", o->cdf_points, "Points per CDF table");
}

}  // namespace

int main(int argc, char** argv) {
  // Results go to stdout; diagnostics must not mix into them.
  spdlog::set_default_logger(spdlog::stderr_color_st("mmbeam"));
  CLI::App app{"mmbeam: mmwave beam design for vehicular downlinks"};
  app.require_subcommand(1);
  Options options;

  CLI::App* run = app.add_subcommand("run", "Simulate one strategy on one scenario");
  AddCommon(run, &options);
  AddRunFlags(run, &options);
  AddEngineFlags(run, &options);
  run->add_option("--strategy", options.strategy, "static, dynamic, tl or optimum");

  CLI::App* matrix = app.add_subcommand("matrix", "Run an experiment matrix");
  AddCommon(matrix, &options);
  AddEngineFlags(matrix, &options);
  matrix->add_option("--matrix", options.matrix, "Matrix file (JSON)");

  CLI::App* synth = app.add_subcommand("synthesize", "Write a synthetic intersection scenario");
  AddCommon(synth, &options);
  AddRunFlags(synth, &options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    MergeConfig(&options);
    if (run->parsed()) return CmdRun(options);
    if (matrix->parsed()) return CmdMatrix(options);
    return CmdSynthesize(options);
  } catch (const mmbeam::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mmbeam::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
