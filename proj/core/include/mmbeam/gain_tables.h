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

#ifndef MMBEAM_GAIN_TABLES_H_
#define MMBEAM_GAIN_TABLES_H_

#include <filesystem>
#include <map>
#include <string_view>
#include <tuple>
#include <vector>

#include "mmbeam/geometry.h"

namespace mmbeam {

enum class ChannelFamily { k3gpp, kNyu };

// Fitted-distribution parameters that are power laws in Nt * Nr.
enum class LawParam { kMu0, kSigma0, kGammaMu, kGammaSigma, kAlpha0, kGammaAlpha };

// Which log-logistic table a cell belongs to.
enum class TabulatedRegime { kNlosAligned, kMisaligned, kPartialTx, kPartialRx };

struct PowerLaw {
  double coef = 0.0;
  double exponent = 0.0;
  double Eval(double antenna_product) const;
};

struct LogLogisticCell {
  int nt = 0;
  int nr = 0;
  double location = 0.0;  // m
  double scale = 0.0;     // s > 0
};

// In-memory copy of the fitted gain tables, loaded from the plain-text
// "mmbeam-gain-tables v1" format (see core/data/gain_tables_v1.txt).
class GainTables {
 public:
  // Throws ParseError on malformed rows, unknown tokens, duplicate cells,
  // nonpositive scales or missing power laws.
  static GainTables Parse(std::string_view text);
  static GainTables Load(const std::filesystem::path& path);
  // The tables shipped in core/data, compiled in.
  static const GainTables& Builtin();

  // Throws std::out_of_range if the law is absent.
  const PowerLaw& Law(ChannelFamily family, ElementType element,
                      LawParam param) const;

  struct CellLookup {
    LogLogisticCell cell;
    bool exact = true;  // false when the nearest column was substituted
  };
  // Exact (nt, nr) column if present, else the column whose Nt*Nr is nearest
  // (ties go to the larger product). Throws std::out_of_range if the table
  // has no column at all for (family, element, regime).
  CellLookup FindCell(ChannelFamily family, ElementType element,
                      TabulatedRegime regime, int nt, int nr) const;

  std::size_t cell_count() const;

 private:
  using LawKey = std::tuple<ChannelFamily, ElementType, LawParam>;
  using CellKey = std::tuple<ChannelFamily, ElementType, TabulatedRegime>;
  std::map<LawKey, PowerLaw> laws_;
  std::map<CellKey, std::vector<LogLogisticCell>> cells_;
};

}  // namespace mmbeam

#endif  // MMBEAM_GAIN_TABLES_H_
