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

#ifndef MMBEAM_REPORT_H_
#define MMBEAM_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmbeam/engine.h"

namespace mmbeam {

// Plot-ready empirical CDF: point i (1-based) is the sample quantile at
// fraction i / n_points.
struct CdfTable {
  std::vector<std::pair<double, double>> points;  // (value, cumulative fraction)
  double mean = 0.0;
};

// Throws std::invalid_argument for no samples or n_points < 1.
CdfTable EmitCdf(std::span<const double> samples, int n_points);

// Identifies a run in its summary.
struct RunLabel {
  std::string scenario;
  StrategyKind strategy = StrategyKind::kTrafficLight;
  Scheduler scheduler = Scheduler::kEqualShare;
  Association association = Association::kStrongest;
  int n_beams = 0;
  double width_deg = 0.0;
  std::uint64_t seed = 0;
};

struct RunSummary {
  RunLabel label;
  double total_bit = 0.0;
  double objective_bit = 0.0;
  int vehicles = 0;
  int served_vehicles = 0;
  double mean_served_time_s = 0.0;
  double mean_sinr_db = 0.0;  // over scheduled samples; 0 without any
  double mean_rate_bps = 0.0;
  std::int64_t samples = 0;
};

RunSummary Summarize(const RunLabel& label, const MetricsLedger& ledger);

void WriteCdfCsv(std::ostream& out, const CdfTable& table);
void WriteVehicleCsv(std::ostream& out, const MetricsLedger& ledger);
void WriteSampleCsv(std::ostream& out, const MetricsLedger& ledger);
void WriteSummaryJson(std::ostream& out, const RunSummary& summary);

// Writes summary.json, vehicles.csv, samples.csv, the four CDF tables and,
// when configs were recorded, beams.jsonl into `dir`.
void WriteRunOutputs(const std::filesystem::path& dir, const RunSummary& summary,
                     const MetricsLedger& ledger, int cdf_points = 100);

}  // namespace mmbeam

#endif  // MMBEAM_REPORT_H_
