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

#include "mmbeam/matrix.h"

#include <atomic>
#include <fstream>
#include <ostream>
#include <set>
#include <thread>

#include <json.hpp>

#include "mmbeam/error.h"
#include "mmbeam/scenario_io.h"
#include "mmbeam/synthesis.h"
#include "text_format.h"

namespace mmbeam {
namespace {

using internal::FormatDouble;
using nlohmann::json;

constexpr const char* kMatrixFormat = "mmbeam-matrix v1";

CellSummary RunCell(const MatrixCell& cell, const std::map<std::string, Scenario>& scenarios,
                    const MatrixOptions& options) {
  CellSummary row;
  row.cell = cell;
  try {
    const auto it = scenarios.find(cell.scenario);
    if (it == scenarios.end()) throw ConfigError("unknown scenario '" + cell.scenario + "'");
    const Scenario scenario = it->second.WithBeamLimits(cell.n_beams, cell.width_deg);
    RunConfig config = options.base;
    config.strategy = cell.strategy;
    config.seed = cell.seed;
    const MetricsLedger ledger = Run(scenario, config);
    RunLabel label{cell.scenario,  cell.strategy, config.scheduler, config.association,
                   cell.n_beams,   cell.width_deg, cell.seed};
    row.summary = Summarize(label, ledger);
    if (!options.out_dir.empty()) {
      WriteRunOutputs(options.out_dir / "cells" / cell.id, row.summary, ledger,
                      options.cdf_points);
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

void ExperimentMatrix::Validate() const {
  if (cells.empty()) throw ConfigError("experiment matrix has no cells");
  std::set<std::string> ids;
  for (const MatrixCell& c : cells) {
    if (c.id.empty()) throw ConfigError("matrix cell without id");
    if (c.id.find_first_of("/\\") != std::string::npos || c.id == "." || c.id == "..") {
      throw ConfigError("matrix cell id '" + c.id + "' is not a plain name");
    }
    if (!ids.insert(c.id).second) throw ConfigError("duplicate matrix cell id '" + c.id + "'");
    if (c.n_beams < 1) throw ConfigError("cell " + c.id + ": n_beams must be >= 1");
    if (!(c.width_deg > 0.0)) throw ConfigError("cell " + c.id + ": width must be > 0");
  }
}

std::string DefaultCellId(const MatrixCell& c) {
  return ToString(c.strategy) + "_n" + std::to_string(c.n_beams) + "_a" +
         FormatDouble(c.width_deg) + "_s" + std::to_string(c.seed) + "_" + c.scenario;
}

bool MatrixResult::all_ok() const {
  for (const auto& r : rows) {
    if (!r.ok) return false;
  }
  return true;
}

MatrixResult RunMatrix(const ExperimentMatrix& matrix,
                       const std::map<std::string, Scenario>& scenarios,
                       const MatrixOptions& options) {
  matrix.Validate();
  MatrixResult result;
  result.rows.resize(matrix.cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < matrix.cells.size(); i = next.fetch_add(1)) {
      result.rows[i] = RunCell(matrix.cells[i], scenarios, options);
    }
  };
  const int workers =
      std::clamp(options.workers, 1, static_cast<int>(matrix.cells.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (CellSummary& tl : result.rows) {
    if (!tl.ok || tl.cell.strategy != StrategyKind::kTrafficLight) continue;
    for (const CellSummary& opt : result.rows) {
      if (opt.ok && opt.cell.strategy == StrategyKind::kOptimum &&
          opt.cell.scenario == tl.cell.scenario && opt.cell.n_beams == tl.cell.n_beams &&
          opt.cell.width_deg == tl.cell.width_deg && opt.cell.seed == tl.cell.seed &&
          opt.summary.objective_bit > 0.0) {
        tl.tl_optimum_ratio = tl.summary.objective_bit / opt.summary.objective_bit;
        break;
      }
    }
  }

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    std::ofstream out(options.out_dir / "summary.csv", std::ios::binary);
    if (!out) throw Error("cannot write " + (options.out_dir / "summary.csv").string());
    WriteMatrixSummaryCsv(out, result);
  }
  return result;
}

void WriteMatrixSummaryCsv(std::ostream& out, const MatrixResult& result) {
  out << "cell,scenario,strategy,n_beams,width_deg,seed,status,total_bit,objective_bit,"
         "vehicles,served_vehicles,mean_served_time_s,mean_sinr_db,mean_rate_bps,"
         "tl_optimum_ratio,error\n";
  for (const CellSummary& r : result.rows) {
    const MatrixCell& c = r.cell;
    out << c.id << ',' << c.scenario << ',' << ToString(c.strategy) << ',' << c.n_beams << ','
        << FormatDouble(c.width_deg) << ',' << c.seed << ',' << (r.ok ? "ok" : "failed") << ',';
    if (r.ok) {
      const RunSummary& s = r.summary;
      out << FormatDouble(s.total_bit) << ',' << FormatDouble(s.objective_bit) << ','
          << s.vehicles << ',' << s.served_vehicles << ',' << FormatDouble(s.mean_served_time_s)
          << ',' << FormatDouble(s.mean_sinr_db) << ',' << FormatDouble(s.mean_rate_bps) << ',';
    } else {
      out << ",,,,,,,";
    }
    if (r.tl_optimum_ratio) out << FormatDouble(*r.tl_optimum_ratio);
    out << ',';
    if (!r.ok) {
      std::string e = r.error;
      for (char& ch : e) {
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
      }
      out << e;
    }
    out << '\n';
  }
}

MatrixFile LoadMatrixFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("matrix file: " + std::string(e.what()));
  }
  MatrixFile file;
  try {
    if (j.value("format", std::string()) != kMatrixFormat) {
      throw ConfigError(std::string("matrix file must declare format '") + kMatrixFormat + "'");
    }
    for (const auto& [name, source] : j.at("scenarios").items()) {
      if (source.contains("descriptor")) {
        const std::filesystem::path p = path.parent_path() / source.at("descriptor").get<std::string>();
        file.scenarios.emplace(name, LoadScenario(p));
      } else if (source.contains("synthesize")) {
        file.scenarios.emplace(
            name, SynthesizeIntersection(IntersectionSpecFromJson(source.at("synthesize").dump())));
      } else {
        throw ConfigError("scenario '" + name + "' needs 'descriptor' or 'synthesize'");
      }
    }
    auto add = [&](MatrixCell cell, const std::string& id) {
      cell.id = id.empty() ? DefaultCellId(cell) : id;
      file.matrix.cells.push_back(std::move(cell));
    };
    for (const auto& c : j.value("cells", json::array())) {
      MatrixCell cell;
      cell.strategy = ParseStrategy(c.at("strategy").get<std::string>());
      cell.n_beams = c.value("n_beams", 2);
      cell.width_deg = c.value("width_deg", 5.0);
      cell.seed = c.value("seed", std::uint64_t{1});
      cell.scenario = c.at("scenario").get<std::string>();
      add(cell, c.value("id", std::string()));
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      for (const auto& scenario : g.at("scenarios")) {
        for (const auto& strategy : g.at("strategies")) {
          for (const auto& n : g.at("n_beams")) {
            for (const auto& w : g.at("widths_deg")) {
              for (const auto& seed : g.value("seeds", json::array({1}))) {
                MatrixCell cell;
                cell.strategy = ParseStrategy(strategy.get<std::string>());
                cell.n_beams = n.get<int>();
                cell.width_deg = w.get<double>();
                cell.seed = seed.get<std::uint64_t>();
                cell.scenario = scenario.get<std::string>();
                add(cell, "");
              }
            }
          }
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("matrix file: " + std::string(e.what()));
  }
  file.matrix.Validate();
  return file;
}

}  // namespace mmbeam
