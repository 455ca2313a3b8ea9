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

#include "mmbeam/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "mmbeam/error.h"
#include "text_format.h"

namespace mmbeam {
namespace {

using internal::FormatDouble;

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void WriteCdfFile(const std::filesystem::path& path, const std::vector<double>& values,
                  int points) {
  std::ofstream out = OpenOut(path);
  if (values.empty()) {
    out << "value,cumulative_fraction\n";
    return;
  }
  WriteCdfCsv(out, EmitCdf(values, points));
}

}  // namespace

CdfTable EmitCdf(std::span<const double> samples, int n_points) {
  if (samples.empty()) throw std::invalid_argument("CDF of an empty sample");
  if (n_points < 1) throw std::invalid_argument("CDF needs at least one point");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  CdfTable table;
  const size_t n = sorted.size();
  for (int i = 1; i <= n_points; ++i) {
    const double fraction = static_cast<double>(i) / n_points;
    // Smallest order statistic whose empirical CDF reaches the fraction.
    size_t rank = static_cast<size_t>(std::ceil(fraction * static_cast<double>(n)));
    rank = std::clamp<size_t>(rank, 1, n);
    table.points.emplace_back(sorted[rank - 1], fraction);
  }
  double sum = 0.0;
  for (double s : samples) sum += s;
  table.mean = sum / static_cast<double>(n);
  return table;
}

RunSummary Summarize(const RunLabel& label, const MetricsLedger& ledger) {
  RunSummary s;
  s.label = label;
  s.total_bit = ledger.total_bit;
  s.objective_bit = ledger.objective_bit;
  s.vehicles = static_cast<int>(ledger.vehicles.size());
  for (const auto& v : ledger.vehicles) s.served_vehicles += v.served_time_s > 0.0 ? 1 : 0;
  s.mean_served_time_s = ledger.MeanServedTime();
  s.samples = static_cast<std::int64_t>(ledger.samples.size());
  if (!ledger.samples.empty()) {
    double sinr = 0.0, rate = 0.0;
    for (const auto& r : ledger.samples) {
      sinr += r.sinr_db;
      rate += r.rate_bps;
    }
    s.mean_sinr_db = sinr / static_cast<double>(ledger.samples.size());
    s.mean_rate_bps = rate / static_cast<double>(ledger.samples.size());
  }
  return s;
}

void WriteCdfCsv(std::ostream& out, const CdfTable& table) {
  out << "# mean=" << FormatDouble(table.mean) << "\n";
  out << "value,cumulative_fraction\n";
  for (const auto& [value, fraction] : table.points) {
    out << FormatDouble(value) << ',' << FormatDouble(fraction) << '\n';
  }
}

void WriteVehicleCsv(std::ostream& out, const MetricsLedger& ledger) {
  out << "vehicle_id,presence_s,served_time_s,delivered_bit\n";
  for (const auto& v : ledger.vehicles) {
    out << v.vehicle_id << ',' << FormatDouble(v.presence_s) << ','
        << FormatDouble(v.served_time_s) << ',' << FormatDouble(v.delivered_bit) << '\n';
  }
}

void WriteSampleCsv(std::ostream& out, const MetricsLedger& ledger) {
  out << "t,vehicle_id,gnb,beam,fraction,sinr_db,rate_bps\n";
  for (const auto& r : ledger.samples) {
    out << r.step << ',' << r.vehicle_id << ',' << r.gnb_id << ',' << r.beam << ','
        << FormatDouble(r.fraction) << ',' << FormatDouble(r.sinr_db) << ','
        << FormatDouble(r.rate_bps) << '\n';
  }
}

void WriteSummaryJson(std::ostream& out, const RunSummary& s) {
  // Hand-formatted so that numbers use the shortest round-trip form.
  const auto str = [](const std::string& v) { return nlohmann::json(v).dump(); };
  out << "{\n"
      << "  \"format\": \"mmbeam-summary v1\",\n"
      << "  \"scenario\": " << str(s.label.scenario) << ",\n"
      << "  \"strategy\": " << str(ToString(s.label.strategy)) << ",\n"
      << "  \"scheduler\": " << str(ToString(s.label.scheduler)) << ",\n"
      << "  \"association\": " << str(ToString(s.label.association)) << ",\n"
      << "  \"n_beams\": " << s.label.n_beams << ",\n"
      << "  \"width_deg\": " << FormatDouble(s.label.width_deg) << ",\n"
      << "  \"seed\": " << s.label.seed << ",\n"
      << "  \"total_bit\": " << FormatDouble(s.total_bit) << ",\n"
      << "  \"objective_bit\": " << FormatDouble(s.objective_bit) << ",\n"
      << "  \"vehicles\": " << s.vehicles << ",\n"
      << "  \"served_vehicles\": " << s.served_vehicles << ",\n"
      << "  \"mean_served_time_s\": " << FormatDouble(s.mean_served_time_s) << ",\n"
      << "  \"mean_sinr_db\": " << FormatDouble(s.mean_sinr_db) << ",\n"
      << "  \"mean_rate_bps\": " << FormatDouble(s.mean_rate_bps) << ",\n"
      << "  \"samples\": " << s.samples << "\n"
      << "}\n";
}

void WriteRunOutputs(const std::filesystem::path& dir, const RunSummary& summary,
                     const MetricsLedger& ledger, int cdf_points) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out = OpenOut(dir / "summary.json");
    WriteSummaryJson(out, summary);
  }
  {
    std::ofstream out = OpenOut(dir / "vehicles.csv");
    WriteVehicleCsv(out, ledger);
  }
  {
    std::ofstream out = OpenOut(dir / "samples.csv");
    WriteSampleCsv(out, ledger);
  }
  std::vector<double> sinr, rate, served, delivered;
  for (const auto& r : ledger.samples) {
    sinr.push_back(r.sinr_db);
    rate.push_back(r.rate_bps);
  }
  for (const auto& v : ledger.vehicles) {
    if (v.served_time_s <= 0.0) continue;
    served.push_back(v.served_time_s);
    delivered.push_back(v.delivered_bit);
  }
  WriteCdfFile(dir / "sinr_cdf.csv", sinr, cdf_points);
  WriteCdfFile(dir / "rate_cdf.csv", rate, cdf_points);
  WriteCdfFile(dir / "served_time_cdf.csv", served, cdf_points);
  WriteCdfFile(dir / "delivered_cdf.csv", delivered, cdf_points);
  if (!ledger.configs.empty()) {
    std::ofstream out = OpenOut(dir / "beams.jsonl");
    for (const auto& c : ledger.configs) WriteBeamConfigJsonl(out, c);
  }
}

}  // namespace mmbeam
