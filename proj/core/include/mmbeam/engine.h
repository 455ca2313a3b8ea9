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

#ifndef MMBEAM_ENGINE_H_
#define MMBEAM_ENGINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmbeam/constraints.h"
#include "mmbeam/gain_tables.h"
#include "mmbeam/link_budget.h"
#include "mmbeam/link_model.h"
#include "mmbeam/optimum.h"
#include "mmbeam/scenario.h"
#include "mmbeam/strategies.h"

namespace mmbeam {

enum class Scheduler {
  kEqualShare,   // every associated vehicle gets 1/n of the beam
  kMaxRate,      // the associated vehicle with the highest rate takes the beam
  kBestVehicle,  // no association: each beam goes to its best covered vehicle
};

enum class Association {
  kStrongest,  // highest expected received power among covering beams
  kNearest,    // closest gNB with a covering beam
};

std::string ToString(Scheduler scheduler);
std::string ToString(Association association);
// Both parse lower or upper case names such as equal_share or STRONGEST and
// throw ConfigError on anything else.
Scheduler ParseScheduler(const std::string& name);
Association ParseAssociation(const std::string& name);

struct RunConfig {
  StrategyKind strategy = StrategyKind::kTrafficLight;
  std::uint64_t seed = 1;
  Scheduler scheduler = Scheduler::kEqualShare;
  Association association = Association::kStrongest;
  StrategyParams strategy_params;
  OptimumOptions optimum;
  int workers = 1;
  // Model data; the built-in tables when null.
  const GainTables* gain_tables = nullptr;
  const CqiTable* cqi_table = nullptr;
  bool record_configs = false;
};

struct VehicleMetrics {
  std::string vehicle_id;
  double presence_s = 0.0;
  double served_time_s = 0.0;
  double delivered_bit = 0.0;
};

// One scheduled (beam, vehicle) pair at one step.
struct SampleRecord {
  int step = 0;
  std::string vehicle_id;
  int gnb_id = 0;
  int beam = 0;  // index into that gNB's config
  double fraction = 0.0;
  double sinr_db = 0.0;
  double rate_bps = 0.0;
};

struct MetricsLedger {
  std::vector<VehicleMetrics> vehicles;  // every vehicle of the scenario, by id
  std::vector<SampleRecord> samples;     // step order, then gNB, beam, vehicle
  double total_bit = 0.0;      // sum of per-vehicle delivered data
  double objective_bit = 0.0;  // same configs, each beam to its best vehicle
  std::vector<BeamConfig> configs;  // filled when RunConfig::record_configs

  double MeanServedTime() const;
};

// Index into `active.beams` of the beam serving vehicle slot v, if any.
std::optional<int> Associate(const StepLinks& links, const ActiveBeams& active, int v,
                             Association association);

// Fractions for the vehicles associated with one beam, given their rates
// (vehicles in id order). kBestVehicle behaves like kMaxRate here.
std::vector<double> Schedule(std::span<const double> rates, Scheduler scheduler);

// Beam configs of every gNB at step k. `static_configs` holds one config per
// gNB for the static strategy and is ignored otherwise.
std::vector<BeamConfig> DesignStep(const Scenario& scenario, const RunConfig& config, int step,
                                   const std::vector<BeamConfig>& static_configs,
                                   const StepLinks* links);

// Runs every step and accumulates the ledger. Deterministic for a given
// seed whatever the worker count. Failures are rethrown as Error naming the
// step (and gNB where known).
MetricsLedger Run(const Scenario& scenario, const RunConfig& config);

}  // namespace mmbeam

#endif  // MMBEAM_ENGINE_H_
