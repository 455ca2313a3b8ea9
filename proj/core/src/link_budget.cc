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

#include "mmbeam/link_budget.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mmbeam/error.h"

namespace mmbeam {
namespace internal {
extern const std::string_view kBuiltinCqiTable;
}  // namespace internal

double ToDb(double linear) { return 10.0 * std::log10(linear); }
double FromDb(double db) { return std::pow(10.0, db / 10.0); }

void LinkBudgetConfig::Validate() const {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
  if (!(carrier_ghz > 0.0)) throw std::invalid_argument("carrier must be > 0");
}

double LinkBudgetConfig::NoisePowerW() const {
  const double dbm =
      thermal_density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

CqiTable CqiTable::Parse(std::string_view text) {
  CqiTable table;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool saw_version = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.rfind("# mmbeam-cqi-table", 0) == 0) {
      if (raw != "# mmbeam-cqi-table v1") {
        throw ParseError("unsupported CQI table version", line_no);
      }
      saw_version = true;
      continue;
    }
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::string index, efficiency, threshold, extra;
    if (!(fields >> index)) continue;
    if (!(fields >> efficiency >> threshold) || (fields >> extra)) {
      throw ParseError("CQI row needs 3 fields", line_no);
    }
    CqiRow row;
    try {
      size_t used = 0;
      row.index = std::stoi(index, &used);
      if (used != index.size()) throw std::invalid_argument(index);
      row.efficiency = std::stod(efficiency, &used);
      if (used != efficiency.size()) throw std::invalid_argument(efficiency);
      if (threshold == "-inf") {
        row.min_sinr_db = -std::numeric_limits<double>::infinity();
      } else {
        row.min_sinr_db = std::stod(threshold, &used);
        if (used != threshold.size()) throw std::invalid_argument(threshold);
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad number in CQI row", line_no);
    }
    if (row.index != static_cast<int>(table.rows_.size())) {
      throw ParseError("CQI rows must be indexed 0..15 in order", line_no);
    }
    if (!table.rows_.empty()) {
      const CqiRow& prev = table.rows_.back();
      if (!(row.efficiency > prev.efficiency) || !(row.min_sinr_db > prev.min_sinr_db)) {
        throw ParseError("CQI efficiency and threshold must increase strictly", line_no);
      }
    } else if (row.efficiency != 0.0) {
      throw ParseError("CQI row 0 must have zero efficiency", line_no);
    }
    table.rows_.push_back(row);
  }
  if (!saw_version) throw ParseError("missing '# mmbeam-cqi-table v1' header", 0);
  if (table.rows_.size() != 16) throw ParseError("CQI table needs 16 rows", 0);
  for (const CqiRow& row : table.rows_) {
    table.min_sinr_linear_.push_back(FromDb(row.min_sinr_db));
  }
  return table;
}

CqiTable CqiTable::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CQI table " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

const CqiTable& CqiTable::Builtin() {
  static const CqiTable table = Parse(internal::kBuiltinCqiTable);
  return table;
}

const CqiRow& CqiTable::Select(double sinr_linear) const {
  // Row 0 has threshold 0 W/W after conversion, so skip it explicitly.
  const auto first = min_sinr_linear_.begin() + 1;
  const auto it = std::upper_bound(first, min_sinr_linear_.end(), sinr_linear);
  return rows_[static_cast<size_t>(it - min_sinr_linear_.begin()) - 1];
}

double Sinr(double serving_power_w, double serving_gain,
            std::span<const Interferer> interferers, double noise_w) {
  double denominator = noise_w;
  for (const Interferer& i : interferers) denominator += i.power_w * i.channel_gain;
  return serving_power_w * serving_gain / denominator;
}

double ShannonRate(double sinr_linear, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + sinr_linear);
}

double EffectiveRate(double sinr_linear, double bandwidth_hz,
                     const CqiTable& table) {
  return bandwidth_hz * table.Select(sinr_linear).efficiency;
}

}  // namespace mmbeam
