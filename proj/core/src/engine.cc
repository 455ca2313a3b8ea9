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

#include "mmbeam/engine.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "mmbeam/error.h"

namespace mmbeam {
namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct StepResult {
  std::vector<std::pair<int, double>> delivered;  // (vehicle slot, bits)
  std::vector<int> served;                        // vehicle slots served this step
  std::vector<SampleRecord> samples;
  std::vector<std::string> vehicle_ids;
  double objective_bit = 0.0;
  std::vector<BeamConfig> configs;
};

StepResult ProcessStep(const Scenario& scenario, const RunConfig& config,
                       const std::vector<BeamConfig>& static_configs, int step) {
  const GainTables& tables = config.gain_tables ? *config.gain_tables : GainTables::Builtin();
  const CqiTable& cqi = config.cqi_table ? *config.cqi_table : CqiTable::Builtin();
  const StepLinks links(scenario, tables, cqi, config.seed, step);
  const double dt = scenario.step_duration_s();

  GlobalAssignment assignment;
  assignment.step = step;
  assignment.configs = DesignStep(scenario, config, step, static_configs, &links);
  const ActiveBeams active = CollectBeams(assignment, scenario);

  StepResult result;
  for (int v = 0; v < links.vehicle_count(); ++v) {
    result.vehicle_ids.push_back(links.vehicle(v).vehicle_id);
  }
  if (config.record_configs) result.configs = assignment.configs;

  GlobalAssignment best = assignment;
  best.schedule = BestVehicleSchedule(assignment, links);
  result.objective_bit = ObjectiveValue(best, links);

  // Scheduled (beam, vehicle slot, fraction) triples.
  std::vector<std::tuple<int, int, double>> scheduled;
  if (config.scheduler == Scheduler::kBestVehicle) {
    for (const ScheduleEntry& e : best.schedule) {
      const int b = static_cast<int>(
          std::find(active.refs.begin(), active.refs.end(), e.beam) - active.refs.begin());
      int v = 0;
      while (links.vehicle(v).vehicle_id != e.vehicle_id) ++v;
      scheduled.emplace_back(b, v, e.fraction);
    }
  } else {
    std::vector<std::vector<int>> members(active.beams.size());
    for (int v = 0; v < links.vehicle_count(); ++v) {
      const auto b = Associate(links, active, v, config.association);
      if (b) members[static_cast<size_t>(*b)].push_back(v);
    }
    std::vector<EmittedBeam> others;
    for (size_t b = 0; b < active.beams.size(); ++b) {
      if (members[b].empty()) continue;
      others.clear();
      for (size_t o = 0; o < active.beams.size(); ++o) {
        if (o != b) others.push_back(active.beams[o]);
      }
      std::vector<double> rates;
      for (int v : members[b]) {
        rates.push_back(links.Evaluate(active.beams[b], others, v).rate_bps);
      }
      const auto fractions = Schedule(rates, config.scheduler);
      for (size_t i = 0; i < members[b].size(); ++i) {
        scheduled.emplace_back(static_cast<int>(b), members[b][i], fractions[i]);
      }
    }
  }

  std::vector<EmittedBeam> others;
  for (const auto& [b, v, fraction] : scheduled) {
    if (fraction <= 0.0) continue;
    others.clear();
    for (size_t o = 0; o < active.beams.size(); ++o) {
      if (static_cast<int>(o) != b) others.push_back(active.beams[o]);
    }
    const LinkOutcome out = links.Evaluate(active.beams[static_cast<size_t>(b)], others, v);
    const BeamRef& ref = active.refs[static_cast<size_t>(b)];
    result.samples.push_back({step, links.vehicle(v).vehicle_id, ref.gnb_id, ref.beam, fraction,
                              ToDb(out.sinr), out.rate_bps});
    result.delivered.emplace_back(v, fraction * out.rate_bps * dt);
    if (out.rate_bps > 0.0) result.served.push_back(v);
  }
  return result;
}

}  // namespace

std::string ToString(Scheduler scheduler) {
  switch (scheduler) {
    case Scheduler::kEqualShare:
      return "equal_share";
    case Scheduler::kMaxRate:
      return "max_rate";
    case Scheduler::kBestVehicle:
      return "best_vehicle";
  }
  return "?";
}

std::string ToString(Association association) {
  return association == Association::kStrongest ? "strongest" : "nearest";
}

Scheduler ParseScheduler(const std::string& name) {
  const std::string s = Lower(name);
  if (s == "equal_share") return Scheduler::kEqualShare;
  if (s == "max_rate") return Scheduler::kMaxRate;
  if (s == "best_vehicle") return Scheduler::kBestVehicle;
  throw ConfigError("unknown scheduler '" + name + "'");
}

Association ParseAssociation(const std::string& name) {
  const std::string s = Lower(name);
  if (s == "strongest") return Association::kStrongest;
  if (s == "nearest") return Association::kNearest;
  throw ConfigError("unknown association '" + name + "'");
}

double MetricsLedger::MeanServedTime() const {
  double sum = 0.0;
  int served = 0;
  for (const auto& v : vehicles) {
    if (v.served_time_s <= 0.0) continue;
    sum += v.served_time_s;
    ++served;
  }
  return served == 0 ? 0.0 : sum / served;
}

std::optional<int> Associate(const StepLinks& links, const ActiveBeams& active, int v,
                             Association association) {
  std::optional<int> best;
  double best_power = 0.0;
  double best_distance = 0.0;
  for (size_t b = 0; b < active.beams.size(); ++b) {
    const EmittedBeam& e = active.beams[b];
    if (!links.Covers(e.gnb_slot, e.beam, v)) continue;
    const double power = links.ExpectedServingPower(e.gnb_slot, e.beam, v);
    const double distance = links.geometry(e.gnb_slot, v).distance_m;
    bool take = !best.has_value();
    if (!take && association == Association::kNearest) {
      take = distance < best_distance || (distance == best_distance && power > best_power);
    } else if (!take) {
      take = power > best_power;
    }
    if (take) {
      best = static_cast<int>(b);
      best_power = power;
      best_distance = distance;
    }
  }
  return best;
}

std::vector<double> Schedule(std::span<const double> rates, Scheduler scheduler) {
  std::vector<double> out(rates.size(), 0.0);
  if (rates.empty()) return out;
  if (scheduler == Scheduler::kEqualShare) {
    // A vehicle reporting CQI 0 cannot decode anything and gets no share.
    const auto active = std::count_if(rates.begin(), rates.end(), [](double r) { return r > 0.0; });
    if (active == 0) return out;
    for (size_t i = 0; i < rates.size(); ++i) {
      if (rates[i] > 0.0) out[i] = 1.0 / static_cast<double>(active);
    }
    return out;
  }
  const auto best = std::max_element(rates.begin(), rates.end());  // first on ties
  if (*best > 0.0) out[static_cast<size_t>(best - rates.begin())] = 1.0;
  return out;
}

std::vector<BeamConfig> DesignStep(const Scenario& scenario, const RunConfig& config, int step,
                                   const std::vector<BeamConfig>& static_configs,
                                   const StepLinks* links) {
  std::vector<BeamConfig> out;
  if (config.strategy == StrategyKind::kOptimum) {
    if (links == nullptr) throw Error("optimum design needs link state");
    OptimumResult r = BruteForceOptimum(*links, config.optimum);
    return std::move(r.assignment.configs);
  }
  for (const GnbSite& site : scenario.gnbs()) {
    try {
      switch (config.strategy) {
        case StrategyKind::kStatic: {
          const auto it = std::find_if(static_configs.begin(), static_configs.end(),
                                       [&](const auto& c) { return c.gnb_id == site.gnb_id; });
          BeamConfig c = it == static_configs.end()
                             ? StaticDesign(scenario, site.gnb_id, config.strategy_params)
                             : *it;
          c.step = step;
          out.push_back(std::move(c));
          break;
        }
        case StrategyKind::kDynamic:
          out.push_back(DynamicDesign(scenario, site.gnb_id, step, config.strategy_params));
          break;
        case StrategyKind::kTrafficLight:
          out.push_back(TrafficLightDesign(scenario, site.gnb_id, step, config.strategy_params));
          break;
        case StrategyKind::kOptimum:
          break;
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw Error("gnb " + std::to_string(site.gnb_id) + ": " + e.what());
    }
  }
  return out;
}

MetricsLedger Run(const Scenario& scenario, const RunConfig& config) {
  if (config.strategy == StrategyKind::kOptimum) {
    if (static_cast<int>(scenario.gnbs().size()) > kOptimumMaxGnbs) {
      throw ConfigError("optimum strategy needs at most 2 gNBs");
    }
    for (const GnbSite& s : scenario.gnbs()) {
      if (s.n_beams_max > kOptimumMaxBeams) {
        throw ConfigError("optimum strategy needs at most 4 beams per gNB");
      }
    }
  }
  if (config.strategy == StrategyKind::kTrafficLight) {
    for (const GnbSite& s : scenario.gnbs()) {
      if (!s.colocated_light_id) {
        throw ConfigError("traffic-light strategy: gNB " + std::to_string(s.gnb_id) +
                          " has no colocated light");
      }
    }
  }

  std::vector<BeamConfig> static_configs;
  if (config.strategy == StrategyKind::kStatic) {
    for (const GnbSite& s : scenario.gnbs()) {
      static_configs.push_back(StaticDesign(scenario, s.gnb_id, config.strategy_params));
    }
  }

  const int steps = std::max(0, scenario.step_count());
  std::vector<StepResult> results(static_cast<size_t>(steps));
  std::vector<std::exception_ptr> errors(static_cast<size_t>(steps));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < steps; i = next.fetch_add(1)) {
      try {
        results[static_cast<size_t>(i)] =
            ProcessStep(scenario, config, static_configs, scenario.first_step() + i);
      } catch (...) {
        errors[static_cast<size_t>(i)] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(config.workers, 1, std::max(1, steps));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (int i = 0; i < steps; ++i) {
    if (!errors[static_cast<size_t>(i)]) continue;
    const std::string where = "step " + std::to_string(scenario.first_step() + i) + ": ";
    try {
      std::rethrow_exception(errors[static_cast<size_t>(i)]);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const std::exception& e) {
      throw Error(where + e.what());
    }
  }

  MetricsLedger ledger;
  std::map<std::string, VehicleMetrics> per_vehicle;
  for (const std::string& id : scenario.vehicle_ids()) {
    per_vehicle[id] = {id, scenario.PresenceTime(id), 0.0, 0.0};
  }
  const double dt = scenario.step_duration_s();
  for (StepResult& r : results) {
    for (const auto& [v, bits] : r.delivered) {
      per_vehicle[r.vehicle_ids[static_cast<size_t>(v)]].delivered_bit += bits;
    }
    std::sort(r.served.begin(), r.served.end());
    r.served.erase(std::unique(r.served.begin(), r.served.end()), r.served.end());
    for (int v : r.served) per_vehicle[r.vehicle_ids[static_cast<size_t>(v)]].served_time_s += dt;
    ledger.objective_bit += r.objective_bit;
    ledger.samples.insert(ledger.samples.end(), r.samples.begin(), r.samples.end());
    for (auto& c : r.configs) ledger.configs.push_back(std::move(c));
  }
  for (auto& [id, m] : per_vehicle) {
    ledger.total_bit += m.delivered_bit;
    ledger.vehicles.push_back(std::move(m));
  }
  return ledger;
}

}  // namespace mmbeam
