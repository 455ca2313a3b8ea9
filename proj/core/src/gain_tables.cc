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

#include "mmbeam/gain_tables.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mmbeam/error.h"

namespace mmbeam {
namespace internal {
extern const std::string_view kBuiltinGainTables;
}  // namespace internal

namespace {

ChannelFamily ParseFamily(const std::string& token, std::size_t line) {
  if (token == "3gpp") return ChannelFamily::k3gpp;
  if (token == "nyu") return ChannelFamily::kNyu;
  throw ParseError("unknown channel family '" + token + "'", line);
}

ElementType ParseElement(const std::string& token, std::size_t line) {
  if (token == "iso") return ElementType::kIso;
  if (token == "3gpp") return ElementType::kSector3gpp;
  throw ParseError("unknown element type '" + token + "'", line);
}

LawParam ParseLawParam(const std::string& token, std::size_t line) {
  if (token == "mu0") return LawParam::kMu0;
  if (token == "sigma0") return LawParam::kSigma0;
  if (token == "gamma_mu") return LawParam::kGammaMu;
  if (token == "gamma_sigma") return LawParam::kGammaSigma;
  if (token == "alpha0") return LawParam::kAlpha0;
  if (token == "gamma_alpha") return LawParam::kGammaAlpha;
  throw ParseError("unknown power-law parameter '" + token + "'", line);
}

TabulatedRegime ParseRegime(const std::string& token, std::size_t line) {
  if (token == "nlos_aligned") return TabulatedRegime::kNlosAligned;
  if (token == "misaligned") return TabulatedRegime::kMisaligned;
  if (token == "partial_tx") return TabulatedRegime::kPartialTx;
  if (token == "partial_rx") return TabulatedRegime::kPartialRx;
  throw ParseError("unknown regime '" + token + "'", line);
}

double ParseNumber(const std::string& token, std::size_t line) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() ||
      !std::isfinite(value)) {
    throw ParseError("bad number '" + token + "'", line);
  }
  return value;
}

int ParseCount(const std::string& token, std::size_t line) {
  const double value = ParseNumber(token, line);
  if (value < 1 || value != std::floor(value)) {
    throw ParseError("bad antenna count '" + token + "'", line);
  }
  return static_cast<int>(value);
}

}  // namespace

double PowerLaw::Eval(double antenna_product) const {
  return coef * std::pow(antenna_product, exponent);
}

GainTables GainTables::Parse(std::string_view text) {
  GainTables tables;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool saw_version = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.rfind("# mmbeam-gain-tables", 0) == 0) {
      if (raw != "# mmbeam-gain-tables v1") {
        throw ParseError("unsupported gain table version", line_no);
      }
      saw_version = true;
      continue;
    }
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "powerlaw") {
      if (tok.size() != 6) throw ParseError("powerlaw row needs 6 fields", line_no);
      const LawKey key{ParseFamily(tok[1], line_no), ParseElement(tok[2], line_no),
                       ParseLawParam(tok[3], line_no)};
      const PowerLaw law{ParseNumber(tok[4], line_no), ParseNumber(tok[5], line_no)};
      if (law.coef <= 0.0) throw ParseError("power-law coefficient must be > 0", line_no);
      if (!tables.laws_.emplace(key, law).second) {
        throw ParseError("duplicate power-law cell", line_no);
      }
    } else if (tok[0] == "loglogistic") {
      if (tok.size() != 8) throw ParseError("loglogistic row needs 8 fields", line_no);
      const CellKey key{ParseFamily(tok[1], line_no), ParseElement(tok[2], line_no),
                        ParseRegime(tok[3], line_no)};
      LogLogisticCell cell{ParseCount(tok[4], line_no), ParseCount(tok[5], line_no),
                           ParseNumber(tok[6], line_no), ParseNumber(tok[7], line_no)};
      if (cell.scale <= 0.0) throw ParseError("log-logistic scale must be > 0", line_no);
      auto& column = tables.cells_[key];
      for (const auto& existing : column) {
        if (existing.nt == cell.nt && existing.nr == cell.nr) {
          throw ParseError("duplicate log-logistic cell", line_no);
        }
      }
      column.push_back(cell);
    } else {
      throw ParseError("unknown row kind '" + tok[0] + "'", line_no);
    }
  }
  if (!saw_version) throw ParseError("missing '# mmbeam-gain-tables v1' header", 0);

  for (auto element : {ElementType::kIso, ElementType::kSector3gpp}) {
    for (auto param : {LawParam::kMu0, LawParam::kSigma0, LawParam::kGammaMu,
                       LawParam::kGammaSigma}) {
      if (!tables.laws_.contains({ChannelFamily::k3gpp, element, param})) {
        throw ParseError("missing 3gpp power law", 0);
      }
    }
    for (auto param : {LawParam::kAlpha0, LawParam::kGammaAlpha}) {
      if (!tables.laws_.contains({ChannelFamily::kNyu, element, param})) {
        throw ParseError("missing nyu power law", 0);
      }
    }
  }
  return tables;
}

GainTables GainTables::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gain tables " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

const GainTables& GainTables::Builtin() {
  static const GainTables tables = Parse(internal::kBuiltinGainTables);
  return tables;
}

const PowerLaw& GainTables::Law(ChannelFamily family, ElementType element,
                                LawParam param) const {
  return laws_.at({family, element, param});
}

GainTables::CellLookup GainTables::FindCell(ChannelFamily family,
                                            ElementType element,
                                            TabulatedRegime regime, int nt,
                                            int nr) const {
  const auto it = cells_.find({family, element, regime});
  if (it == cells_.end() || it->second.empty()) {
    throw std::out_of_range("no log-logistic column for this combination");
  }
  const double product = static_cast<double>(nt) * nr;
  const LogLogisticCell* best = nullptr;
  for (const auto& cell : it->second) {
    if (cell.nt == nt && cell.nr == nr) return {cell, true};
  }
  for (const auto& cell : it->second) {
    if (best == nullptr) {
      best = &cell;
      continue;
    }
    const double cell_product = static_cast<double>(cell.nt) * cell.nr;
    const double best_product = static_cast<double>(best->nt) * best->nr;
    const double d_cell = std::abs(cell_product - product);
    const double d_best = std::abs(best_product - product);
    if (d_cell < d_best || (d_cell == d_best && cell_product > best_product)) {
      best = &cell;
    }
  }
  return {*best, false};
}

std::size_t GainTables::cell_count() const {
  std::size_t n = laws_.size();
  for (const auto& [key, column] : cells_) n += column.size();
  return n;
}

}  // namespace mmbeam
