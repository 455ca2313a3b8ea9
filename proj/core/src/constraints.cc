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

#include "mmbeam/constraints.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "mmbeam/error.h"
#include "text_format.h"

namespace mmbeam {
namespace {

using internal::FormatDouble;

// Relative tolerance on sums that should not exceed a bound (power budget,
// schedule fractions); absorbs rounding in P/N * N style sums.
constexpr double kSumTolerance = 1e-12;

std::string BeamName(const BeamRef& ref) {
  return "gnb " + std::to_string(ref.gnb_id) + " beam " + std::to_string(ref.beam);
}

struct ConfigIndex {
  std::map<int, const BeamConfig*> by_gnb;

  const Beam* Find(const BeamRef& ref) const {
    const auto it = by_gnb.find(ref.gnb_id);
    if (it == by_gnb.end() || ref.beam < 0 ||
        ref.beam >= static_cast<int>(it->second->beams.size())) {
      return nullptr;
    }
    return &it->second->beams[static_cast<size_t>(ref.beam)];
  }
};

int SlotOf(const Scenario& scenario, int gnb_id) {
  const auto gnbs = scenario.gnbs();
  for (size_t i = 0; i < gnbs.size(); ++i) {
    if (gnbs[i].gnb_id == gnb_id) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::string ToString(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kBeamOwnership:
      return "beam_ownership";
    case ConstraintKind::kBeamCount:
      return "beam_count";
    case ConstraintKind::kBeamWidth:
      return "beam_width";
    case ConstraintKind::kNonOverlap:
      return "non_overlap";
    case ConstraintKind::kPowerBudget:
      return "power_budget";
    case ConstraintKind::kIdlePower:
      return "idle_power";
    case ConstraintKind::kPairing:
      return "pairing";
    case ConstraintKind::kScheduleSum:
      return "schedule_sum";
    case ConstraintKind::kFractionRange:
      return "fraction_range";
    case ConstraintKind::kCoverage:
      return "coverage";
    case ConstraintKind::kUnknownReference:
      return "unknown_reference";
  }
  return "?";
}

bool CoversVehicle(const Beam& beam, const GnbSite& site, const Point2& vehicle) {
  const double bearing = BearingDeg({site.position.x, site.position.y}, vehicle);
  return CircularDistance(beam.azimuth_deg, bearing) <= 0.5 * beam.width_deg;
}

Verdict CheckFeasible(const GlobalAssignment& a, const Scenario& scenario) {
  Verdict verdict;
  auto report = [&](ConstraintKind kind, std::string where, double slack) {
    verdict.violations.push_back({kind, std::move(where), slack});
  };

  ConfigIndex index;
  for (const BeamConfig& config : a.configs) {
    const std::string g = "gnb " + std::to_string(config.gnb_id);
    if (SlotOf(scenario, config.gnb_id) < 0) {
      report(ConstraintKind::kBeamOwnership, g + " does not exist", -1.0);
      continue;
    }
    if (!index.by_gnb.emplace(config.gnb_id, &config).second) {
      report(ConstraintKind::kBeamOwnership, g + " has more than one config", -1.0);
      continue;
    }
    const GnbSite& site = scenario.gnb(config.gnb_id);
    const int count = static_cast<int>(config.beams.size());
    if (count > site.n_beams_max) {
      report(ConstraintKind::kBeamCount, g, static_cast<double>(site.n_beams_max - count));
    }
    double power = 0.0;
    for (int i = 0; i < count; ++i) {
      const Beam& b = config.beams[static_cast<size_t>(i)];
      const std::string name = BeamName({config.gnb_id, i});
      power += b.power_w;
      if (b.width_deg < 0.0 || b.width_deg > site.max_width_deg) {
        report(ConstraintKind::kBeamWidth, name,
               std::min(b.width_deg, site.max_width_deg - b.width_deg));
      }
      if (b.power_w < 0.0) {
        report(ConstraintKind::kIdlePower, name, b.power_w);
      } else if (b.width_deg == 0.0 && b.power_w > 0.0) {
        report(ConstraintKind::kIdlePower, name, -b.power_w);
      }
      for (int j = i + 1; j < count; ++j) {
        const Beam& c = config.beams[static_cast<size_t>(j)];
        if (b.width_deg <= 0.0 || c.width_deg <= 0.0) continue;
        const double slack = CircularDistance(b.azimuth_deg, c.azimuth_deg) -
                             0.5 * (b.width_deg + c.width_deg);
        if (slack < 0.0) {
          report(ConstraintKind::kNonOverlap, name + " / beam " + std::to_string(j), slack);
        }
      }
    }
    if (power > site.p_tot_w * (1.0 + kSumTolerance)) {
      report(ConstraintKind::kPowerBudget, g, site.p_tot_w - power);
    }
  }

  std::map<BeamRef, int> pair_count;
  for (const BeamPairing& p : a.pairings) {
    const std::string name = BeamName(p.first) + " + " + BeamName(p.second);
    const Beam* b1 = index.Find(p.first);
    const Beam* b2 = index.Find(p.second);
    if (b1 == nullptr || b2 == nullptr || b1->width_deg <= 0.0 || b2->width_deg <= 0.0) {
      report(ConstraintKind::kPairing, name + " references an inactive beam", -1.0);
      continue;
    }
    if (p.first.gnb_id == p.second.gnb_id) {
      report(ConstraintKind::kPairing, name + " pairs beams of one gNB", -1.0);
      continue;
    }
    ++pair_count[p.first];
    ++pair_count[p.second];
  }
  for (const auto& [ref, n] : pair_count) {
    if (n > 1) report(ConstraintKind::kPairing, BeamName(ref), static_cast<double>(1 - n));
  }

  std::map<std::string, const VehicleSample*> present;
  for (const VehicleSample& s : scenario.VehiclesAt(a.step)) present[s.vehicle_id] = &s;
  std::map<BeamRef, double> sums;
  for (const ScheduleEntry& e : a.schedule) {
    const std::string name = BeamName(e.beam) + " vehicle " + e.vehicle_id;
    const Beam* b = index.Find(e.beam);
    const auto veh = present.find(e.vehicle_id);
    if (b == nullptr || veh == present.end()) {
      report(ConstraintKind::kUnknownReference, name, -1.0);
      continue;
    }
    if (e.fraction < 0.0 || e.fraction > 1.0) {
      report(ConstraintKind::kFractionRange, name,
             std::min(e.fraction, 1.0 - e.fraction));
    }
    sums[e.beam] += e.fraction;
    if (e.fraction > 0.0) {
      const GnbSite& site = scenario.gnb(e.beam.gnb_id);
      const double bearing =
          BearingDeg({site.position.x, site.position.y}, veh->second->position);
      const double slack =
          0.5 * b->width_deg - CircularDistance(b->azimuth_deg, bearing);
      if (slack < 0.0) report(ConstraintKind::kCoverage, name, slack);
    }
  }
  for (const auto& [ref, sum] : sums) {
    if (sum > 1.0 + kSumTolerance) report(ConstraintKind::kScheduleSum, BeamName(ref), 1.0 - sum);
  }

  verdict.feasible = verdict.violations.empty();
  return verdict;
}

ActiveBeams CollectBeams(const GlobalAssignment& assignment, const Scenario& scenario) {
  std::vector<std::pair<EmittedBeam, BeamRef>> all;
  for (const BeamConfig& config : assignment.configs) {
    const int slot = SlotOf(scenario, config.gnb_id);
    if (slot < 0) throw Error("config for unknown gNB " + std::to_string(config.gnb_id));
    for (size_t i = 0; i < config.beams.size(); ++i) {
      if (config.beams[i].width_deg <= 0.0) continue;
      all.push_back({{slot, config.beams[i]}, {config.gnb_id, static_cast<int>(i)}});
    }
  }
  std::sort(all.begin(), all.end(),
            [](const auto& x, const auto& y) { return CanonicalLess(x.first, y.first); });
  ActiveBeams out;
  for (auto& [beam, ref] : all) {
    out.beams.push_back(beam);
    out.refs.push_back(ref);
  }
  return out;
}

std::vector<std::vector<double>> ExclusiveRates(const ActiveBeams& active,
                                                const std::vector<BeamPairing>& pairings,
                                                const StepLinks& links) {
  const size_t n = active.beams.size();
  std::vector<int> partner(n, -1);
  std::vector<PairingKind> kind(n, PairingKind::kCoordinated);
  auto position = [&](const BeamRef& ref) {
    const auto it = std::find(active.refs.begin(), active.refs.end(), ref);
    return it == active.refs.end() ? -1 : static_cast<int>(it - active.refs.begin());
  };
  for (const BeamPairing& p : pairings) {
    const int i = position(p.first), j = position(p.second);
    if (i < 0 || j < 0) continue;
    partner[static_cast<size_t>(i)] = j;
    partner[static_cast<size_t>(j)] = i;
    kind[static_cast<size_t>(i)] = kind[static_cast<size_t>(j)] = p.kind;
  }

  std::vector<std::vector<double>> rates(n, std::vector<double>(
                                                static_cast<size_t>(links.vehicle_count()), 0.0));
  std::vector<EmittedBeam> others;
  for (size_t b = 0; b < n; ++b) {
    const EmittedBeam& serving = active.beams[b];
    const int p = partner[b];
    others.clear();
    for (size_t o = 0; o < n; ++o) {
      if (o == b) continue;
      if (p >= 0 && kind[b] == PairingKind::kBlanking && static_cast<int>(o) == p) continue;
      others.push_back(active.beams[o]);
    }
    const EmittedBeam* coherent =
        p >= 0 && kind[b] == PairingKind::kCoordinated ? &active.beams[static_cast<size_t>(p)]
                                                       : nullptr;
    for (int v = 0; v < links.vehicle_count(); ++v) {
      if (!links.Covers(serving.gnb_slot, serving.beam, v)) continue;
      double rate = links.Evaluate(serving, others, v, coherent).rate_bps;
      if (p >= 0 && kind[b] == PairingKind::kBlanking) rate *= 0.5;
      rates[b][static_cast<size_t>(v)] = rate;
    }
  }
  return rates;
}

double ObjectiveValue(const GlobalAssignment& assignment, const StepLinks& links) {
  const Verdict verdict = CheckFeasible(assignment, links.scenario());
  if (!verdict.feasible) {
    const Violation& v = verdict.violations.front();
    throw Error("objective of an infeasible assignment: " + ToString(v.kind) + " at " + v.where);
  }
  const ActiveBeams active = CollectBeams(assignment, links.scenario());
  const auto rates = ExclusiveRates(active, assignment.pairings, links);
  std::map<std::string, int> slot_of_vehicle;
  for (int v = 0; v < links.vehicle_count(); ++v) slot_of_vehicle[links.vehicle(v).vehicle_id] = v;
  // Per-beam contributions, then summed in canonical beam order.
  std::vector<double> per_beam(active.beams.size(), 0.0);
  for (const ScheduleEntry& e : assignment.schedule) {
    const auto it = std::find(active.refs.begin(), active.refs.end(), e.beam);
    if (it == active.refs.end() || e.fraction == 0.0) continue;
    const size_t b = static_cast<size_t>(it - active.refs.begin());
    per_beam[b] += e.fraction * rates[b][static_cast<size_t>(slot_of_vehicle.at(e.vehicle_id))];
  }
  const double dt = links.scenario().step_duration_s();
  double total = 0.0;
  for (double r : per_beam) total += r * dt;
  return total;
}

std::vector<ScheduleEntry> BestVehicleSchedule(const GlobalAssignment& assignment,
                                               const StepLinks& links) {
  const ActiveBeams active = CollectBeams(assignment, links.scenario());
  const auto rates = ExclusiveRates(active, assignment.pairings, links);
  std::vector<ScheduleEntry> out;
  for (size_t b = 0; b < active.beams.size(); ++b) {
    int best = -1;
    for (int v = 0; v < links.vehicle_count(); ++v) {
      const double r = rates[b][static_cast<size_t>(v)];
      if (r > 0.0 && (best < 0 || r > rates[b][static_cast<size_t>(best)])) best = v;
    }
    if (best >= 0) out.push_back({active.refs[b], links.vehicle(best).vehicle_id, 1.0});
  }
  return out;
}

void WriteVerdictJsonl(std::ostream& out, int step, const Verdict& verdict) {
  out << "{\"step\":" << step << ",\"feasible\":" << (verdict.feasible ? "true" : "false")
      << ",\"violations\":[";
  for (size_t i = 0; i < verdict.violations.size(); ++i) {
    const Violation& v = verdict.violations[i];
    if (i > 0) out << ',';
    out << "{\"constraint\":\"" << ToString(v.kind) << "\",\"where\":"
        << nlohmann::json(v.where).dump() << ",\"slack\":" << FormatDouble(v.slack) << '}';
  }
  out << "]}\n";
}

void WriteAssignmentJsonl(std::ostream& out, const GlobalAssignment& a, double objective_bit) {
  out << "{\"step\":" << a.step << ",\"objective_bit\":" << FormatDouble(objective_bit)
      << ",\"configs\":[";
  for (size_t c = 0; c < a.configs.size(); ++c) {
    if (c > 0) out << ',';
    const BeamConfig& config = a.configs[c];
    out << "{\"gnb\":" << config.gnb_id << ",\"beams\":[";
    for (size_t i = 0; i < config.beams.size(); ++i) {
      const Beam& b = config.beams[i];
      if (i > 0) out << ',';
      out << "{\"azimuth_deg\":" << FormatDouble(b.azimuth_deg)
          << ",\"elevation_deg\":" << FormatDouble(b.elevation_deg)
          << ",\"width_deg\":" << FormatDouble(b.width_deg)
          << ",\"power_w\":" << FormatDouble(b.power_w) << '}';
    }
    out << "]}";
  }
  out << "],\"schedule\":[";
  for (size_t i = 0; i < a.schedule.size(); ++i) {
    const ScheduleEntry& e = a.schedule[i];
    if (i > 0) out << ',';
    out << "{\"gnb\":" << e.beam.gnb_id << ",\"beam\":" << e.beam.beam << ",\"vehicle\":"
        << nlohmann::json(e.vehicle_id).dump() << ",\"fraction\":" << FormatDouble(e.fraction)
        << '}';
  }
  out << "],\"pairings\":[";
  for (size_t i = 0; i < a.pairings.size(); ++i) {
    const BeamPairing& p = a.pairings[i];
    if (i > 0) out << ',';
    out << "{\"kind\":\"" << (p.kind == PairingKind::kCoordinated ? "coordinated" : "blanking")
        << "\",\"first\":[" << p.first.gnb_id << ',' << p.first.beam << "],\"second\":["
        << p.second.gnb_id << ',' << p.second.beam << "]}";
  }
  out << "]}\n";
}

}  // namespace mmbeam
