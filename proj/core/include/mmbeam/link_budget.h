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

#ifndef MMBEAM_LINK_BUDGET_H_
#define MMBEAM_LINK_BUDGET_H_

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace mmbeam {

struct LinkBudgetConfig {
  double bandwidth_hz = 400e6;
  double carrier_ghz = 76.0;
  double noise_figure_db = 7.0;
  double thermal_density_dbm_hz = -174.0;

  // Throws std::invalid_argument unless bandwidth and carrier are positive.
  void Validate() const;
  // Thermal noise over the band plus noise figure, in watts.
  double NoisePowerW() const;
};

struct CqiRow {
  int index = 0;
  double efficiency = 0.0;  // bit/s/Hz
  double min_sinr_db = 0.0; // -inf for the out-of-range row
};

// 16-row, 4-bit CQI table in the "mmbeam-cqi-table v1" text format.
class CqiTable {
 public:
  // Throws ParseError unless there are exactly 16 rows indexed 0..15, row 0
  // has zero efficiency, and efficiency and threshold increase strictly.
  static CqiTable Parse(std::string_view text);
  static CqiTable Load(const std::filesystem::path& path);
  static const CqiTable& Builtin();

  // Highest row whose threshold is <= sinr (inclusive); row 0 when none.
  const CqiRow& Select(double sinr_linear) const;
  std::span<const CqiRow> rows() const { return rows_; }
  double max_efficiency() const { return rows_.back().efficiency; }

 private:
  std::vector<CqiRow> rows_;
  std::vector<double> min_sinr_linear_;
};

struct Interferer {
  double power_w = 0.0;
  double channel_gain = 0.0;
};

// P |h|^2 / (N0 + sum_i P_i |h_i|^2).
double Sinr(double serving_power_w, double serving_gain,
            std::span<const Interferer> interferers, double noise_w);

// bw * log2(1 + sinr), bit/s.
double ShannonRate(double sinr_linear, double bandwidth_hz);

// bw * efficiency of the CQI row selected for `sinr_linear`, bit/s.
double EffectiveRate(double sinr_linear, double bandwidth_hz,
                     const CqiTable& table);

double ToDb(double linear);
double FromDb(double db);

}  // namespace mmbeam

#endif  // MMBEAM_LINK_BUDGET_H_
