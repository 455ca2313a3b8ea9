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

#ifndef MMBEAM_MATRIX_H_
#define MMBEAM_MATRIX_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmbeam/engine.h"
#include "mmbeam/report.h"
#include "mmbeam/scenario.h"

namespace mmbeam {

struct MatrixCell {
  std::string id;
  StrategyKind strategy = StrategyKind::kTrafficLight;
  int n_beams = 2;
  double width_deg = 5.0;
  std::uint64_t seed = 1;
  std::string scenario;  // key into the scenario map
};

struct ExperimentMatrix {
  std::vector<MatrixCell> cells;

  // Throws ConfigError when empty, ids repeat or a cell is malformed.
  void Validate() const;
};

// Default cell id: strategy_nN_aA_sSEED_SCENARIO.
std::string DefaultCellId(const MatrixCell& cell);

struct CellSummary {
  MatrixCell cell;
  bool ok = false;
  std::string error;
  RunSummary summary;
  // objective(TL) / objective(optimum) for TL cells with an optimum twin
  // (same scenario, N, A and seed).
  std::optional<double> tl_optimum_ratio;
};

struct MatrixResult {
  std::vector<CellSummary> rows;  // matrix order

  bool all_ok() const;
};

struct MatrixOptions {
  RunConfig base;   // strategy, N, A and seed are taken from each cell
  int workers = 1;  // cells run concurrently
  std::filesystem::path out_dir;  // per-cell outputs and summary.csv; empty for none
  int cdf_points = 100;
};

// Runs every cell; a failing cell is recorded and the rest continue.
MatrixResult RunMatrix(const ExperimentMatrix& matrix,
                       const std::map<std::string, Scenario>& scenarios,
                       const MatrixOptions& options);

void WriteMatrixSummaryCsv(std::ostream& out, const MatrixResult& result);

// Matrix file ("format": "mmbeam-matrix v1") with its scenarios loaded.
struct MatrixFile {
  ExperimentMatrix matrix;
  std::map<std::string, Scenario> scenarios;
};

// Scenarios are either {"descriptor": path} or {"synthesize": {...}}; cells
// are listed under "cells" and/or expanded from "grid" (cartesian product of
// strategies, n_beams, widths_deg, seeds and scenarios). Throws ConfigError.
MatrixFile LoadMatrixFile(const std::filesystem::path& path);

}  // namespace mmbeam

#endif  // MMBEAM_MATRIX_H_
