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

#include "mmbeam/optimum.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "mmbeam/error.h"

namespace mmbeam {
namespace {

// Pruning keeps a relative margin so that rounding in the bound can never
// discard a configuration that ties the incumbent.
constexpr double kPruneMargin = 1e-9;

struct Candidate {
  int slot = 0;
  Beam beam;
  double standalone_bit = 0.0;  // value if it were the only beam
  std::vector<int> covered;     // vehicle slots inside the beam
  std::vector<double> signal;   // P * a * G per covered vehicle
};

struct Solution {
  double value = -1.0;
  std::vector<int> key;  // candidate ids ascending, then encoded pairings

  bool BetterThan(const Solution& other) const {
    if (value != other.value) return value > other.value;
    return key < other.key;
  }
};

class Search {
 public:
  Search(const StepLinks& links, const OptimumOptions& options)
      : links_(links), options_(options), dt_(links.scenario().step_duration_s()) {
    BuildCandidates();
    BuildInterference();
  }

  OptimumResult Run() {
    std::vector<Solution> locals;
    std::int64_t nodes = 0;
    if (options_.enable_comp_abs) {
      Solution best;
      std::vector<int> chosen;
      Exhaustive(0, 0, &chosen, &best, &nodes);
      locals.push_back(best);
    } else {
      locals = RunPartitions(&nodes);
    }
    Solution best = locals.front();
    for (const Solution& s : locals) {
      if (s.BetterThan(best)) best = s;
    }
    return Assemble(best, nodes);
  }

 private:
  void BuildCandidates() {
    const int gnbs = links_.gnb_count();
    order_.assign(static_cast<size_t>(gnbs), {});
    const int grid_points = static_cast<int>(std::lround(360.0 / options_.grid_step_deg));
    for (int g = 0; g < gnbs; ++g) {
      const GnbSite& site = links_.site(g);
      std::vector<double> widths = options_.width_choices;
      if (widths.empty()) widths.push_back(site.max_width_deg);
      std::sort(widths.begin(), widths.end());
      widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
      const double elevation = BeamElevation(links_.scenario(), site, options_.strategy);
      for (int i = 0; i < grid_points; ++i) {
        const double azimuth = WrapDegrees(i * options_.grid_step_deg);
        for (double w : widths) {
          if (!(w > 0.0) || w > site.max_width_deg) continue;
          Candidate c;
          c.slot = g;
          c.beam = {azimuth, elevation, w, PerBeamPower(site)};
          double best = 0.0;
          for (int v = 0; v < links_.vehicle_count(); ++v) {
            if (!links_.Covers(g, c.beam, v)) continue;
            const double s =
                c.beam.power_w * links_.ChannelGain(g, c.beam, v, Alignment::kFullyAligned);
            c.covered.push_back(v);
            c.signal.push_back(s);
            best = std::max(best, links_.RateFor(SinrFromTerms(s, {}, links_.noise_w())));
          }
          if (best <= 0.0) continue;
          c.standalone_bit = best * dt_;
          candidates_.push_back(std::move(c));
        }
      }
    }
    // Candidate ids follow the canonical beam order.
    std::sort(candidates_.begin(), candidates_.end(), [](const auto& a, const auto& b) {
      return CanonicalLess({a.slot, a.beam}, {b.slot, b.beam});
    });
    for (size_t i = 0; i < candidates_.size(); ++i) {
      order_[static_cast<size_t>(candidates_[i].slot)].push_back(static_cast<int>(i));
    }
    prefix_.assign(order_.size(), {});
    for (size_t g = 0; g < order_.size(); ++g) {
      auto& ids = order_[g];
      std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        return candidates_[static_cast<size_t>(a)].standalone_bit >
               candidates_[static_cast<size_t>(b)].standalone_bit;
      });
      prefix_[g].push_back(0.0);
      for (int id : ids) {
        prefix_[g].push_back(prefix_[g].back() + candidates_[static_cast<size_t>(id)].standalone_bit);
      }
    }
  }

  void BuildInterference() {
    const size_t n = candidates_.size();
    const size_t v_count = static_cast<size_t>(links_.vehicle_count());
    const size_t g_count = static_cast<size_t>(links_.gnb_count());
    std::vector<std::vector<bool>> needed(g_count, std::vector<bool>(v_count, false));
    for (const Candidate& c : candidates_) {
      for (int v : c.covered) needed[static_cast<size_t>(c.slot)][static_cast<size_t>(v)] = true;
    }
    interference_.assign(n * v_count * g_count, 0.0);
    for (size_t c = 0; c < n; ++c) {
      const Candidate& cand = candidates_[c];
      for (size_t gs = 0; gs < g_count; ++gs) {
        for (size_t v = 0; v < v_count; ++v) {
          if (!needed[gs][v] || !links_.geometry(cand.slot, static_cast<int>(v)).in_range) continue;
          const Alignment a = links_.InterfererAlignment(static_cast<int>(gs), cand.slot,
                                                         cand.beam, static_cast<int>(v));
          interference_[(c * v_count + v) * g_count + gs] =
              cand.beam.power_w * links_.ChannelGain(cand.slot, cand.beam, static_cast<int>(v), a);
        }
      }
    }
  }

  double Interference(int c, int v, int serving_slot) const {
    const size_t v_count = static_cast<size_t>(links_.vehicle_count());
    const size_t g_count = static_cast<size_t>(links_.gnb_count());
    return interference_[(static_cast<size_t>(c) * v_count + static_cast<size_t>(v)) * g_count +
                         static_cast<size_t>(serving_slot)];
  }

  // Objective of the beam set `sorted_ids` (ascending candidate ids).
  double Value(const std::vector<int>& sorted_ids) const {
    double total = 0.0;
    for (int b : sorted_ids) {
      const Candidate& cand = candidates_[static_cast<size_t>(b)];
      double best = 0.0;
      for (size_t i = 0; i < cand.covered.size(); ++i) {
        const int v = cand.covered[i];
        double denominator = links_.noise_w();
        for (int c : sorted_ids) {
          if (c != b) denominator += Interference(c, v, cand.slot);
        }
        best = std::max(best, links_.RateFor(cand.signal[i] / denominator));
      }
      total += best * dt_;
    }
    return total;
  }

  bool Overlaps(const std::vector<int>& chosen, int id) const {
    const Candidate& c = candidates_[static_cast<size_t>(id)];
    for (int o : chosen) {
      const Candidate& d = candidates_[static_cast<size_t>(o)];
      if (d.slot != c.slot) continue;
      if (CircularDistance(c.beam.azimuth_deg, d.beam.azimuth_deg) <
          0.5 * (c.beam.width_deg + d.beam.width_deg)) {
        return true;
      }
    }
    return false;
  }

  int CountOn(const std::vector<int>& chosen, int slot) const {
    int n = 0;
    for (int o : chosen) n += candidates_[static_cast<size_t>(o)].slot == slot ? 1 : 0;
    return n;
  }

  // Best possible gain from `slots` more beams of gNB g taken from
  // order_[g][pos...], plus full allowances of later gNBs.
  double RestBound(int g, size_t pos, int slots) const {
    double rest = 0.0;
    const auto& pre = prefix_[static_cast<size_t>(g)];
    const size_t end = std::min(pre.size() - 1, pos + static_cast<size_t>(std::max(slots, 0)));
    if (end > pos) rest += pre[end] - pre[pos];
    for (int h = g + 1; h < links_.gnb_count(); ++h) {
      const auto& ph = prefix_[static_cast<size_t>(h)];
      rest += ph[std::min(ph.size() - 1, static_cast<size_t>(links_.site(h).n_beams_max))];
    }
    return rest;
  }

  double Threshold() const {
    const double best = best_value_.load(std::memory_order_relaxed);
    return best - kPruneMargin * std::abs(best);
  }

  void Offer(double value, const std::vector<int>& chosen, Solution* local) {
    Solution s{value, chosen};
    std::sort(s.key.begin(), s.key.end());
    if (s.BetterThan(*local)) *local = std::move(s);
    double seen = best_value_.load(std::memory_order_relaxed);
    while (value > seen && !best_value_.compare_exchange_weak(seen, value)) {
    }
  }

  static std::vector<int> Sorted(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  // `value` is the objective of `chosen`, already offered.
  void Dfs(int g, size_t pos, double value, std::vector<int>* chosen, Solution* local,
           std::int64_t* nodes) {
    ++*nodes;
    const auto& ids = order_[static_cast<size_t>(g)];
    const int limit = links_.site(g).n_beams_max;
    const int used = CountOn(*chosen, g);
    if (value + RestBound(g, pos, limit - used) < Threshold()) return;
    if (used < limit) {
      for (size_t i = pos; i < ids.size(); ++i) {
        const int id = ids[i];
        const double child_bound = value + candidates_[static_cast<size_t>(id)].standalone_bit +
                                   RestBound(g, i + 1, limit - used - 1);
        if (child_bound < Threshold()) break;  // bounds only shrink further on
        if (Overlaps(*chosen, id)) continue;
        chosen->push_back(id);
        const double child_value = Value(Sorted(*chosen));
        Offer(child_value, *chosen, local);
        Dfs(g, i + 1, child_value, chosen, local, nodes);
        chosen->pop_back();
      }
    }
    if (g + 1 < links_.gnb_count()) Dfs(g + 1, 0, value, chosen, local, nodes);
  }

  std::vector<Solution> RunPartitions(std::int64_t* nodes_out) {
    // Task 0 leaves the first gNB without the beams of the other tasks;
    // task i + 1 makes order_[0][i] the first gNB's best-ranked beam.
    const size_t tasks = links_.gnb_count() == 0 ? 1 : order_[0].size() + 1;
    std::vector<Solution> locals(tasks);
    std::vector<std::int64_t> nodes(tasks, 0);
    std::atomic<size_t> next{0};
    best_value_.store(0.0);
    auto worker = [&]() {
      for (size_t t = next.fetch_add(1); t < tasks; t = next.fetch_add(1)) {
        std::vector<int> chosen;
        if (t == 0) {
          Offer(0.0, chosen, &locals[t]);
          if (links_.gnb_count() > 1) Dfs(1, 0, 0.0, &chosen, &locals[t], &nodes[t]);
          continue;
        }
        const int id = order_[0][t - 1];
        chosen.push_back(id);
        const double v = Value(chosen);
        Offer(v, chosen, &locals[t]);
        Dfs(0, t, v, &chosen, &locals[t], &nodes[t]);
      }
    };
    const int threads = std::max(1, std::min<int>(options_.threads, static_cast<int>(tasks)));
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    for (std::int64_t n : nodes) *nodes_out += n;
    return locals;
  }

  // Plain enumeration with pairings; used only when pairings are enabled.
  void Exhaustive(int g, size_t pos, std::vector<int>* chosen, Solution* best,
                  std::int64_t* nodes) {
    ++*nodes;
    if (g >= links_.gnb_count()) {
      EvaluateWithPairings(*chosen, best);
      return;
    }
    const auto& ids = order_[static_cast<size_t>(g)];
    if (CountOn(*chosen, g) < links_.site(g).n_beams_max) {
      for (size_t i = pos; i < ids.size(); ++i) {
        if (Overlaps(*chosen, ids[i])) continue;
        chosen->push_back(ids[i]);
        Exhaustive(g, i + 1, chosen, best, nodes);
        chosen->pop_back();
      }
    }
    Exhaustive(g + 1, 0, chosen, best, nodes);
  }

  void EvaluateWithPairings(const std::vector<int>& chosen, Solution* best) {
    const std::vector<int> ids = Sorted(chosen);
    std::vector<int> first, second;
    for (int id : ids) {
      (candidates_[static_cast<size_t>(id)].slot == 0 ? first : second).push_back(id);
    }
    // Each entry: (first id, second id, kind).
    std::vector<std::tuple<int, int, int>> pairs;
    std::vector<bool> used(second.size(), false);
    auto recurse = [&](auto&& self, size_t i) -> void {
      if (i == first.size()) {
        GlobalAssignment a = Build(ids, pairs);
        a.schedule = BestVehicleSchedule(a, links_);
        Solution s{ObjectiveValue(a, links_), ids};
        for (const auto& [x, y, k] : pairs) {
          s.key.push_back(1 << 20);
          s.key.push_back(x);
          s.key.push_back(y);
          s.key.push_back(k);
        }
        if (s.BetterThan(*best)) *best = std::move(s);
        return;
      }
      self(self, i + 1);
      for (size_t j = 0; j < second.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        for (int kind = 0; kind < 2; ++kind) {
          pairs.emplace_back(first[i], second[j], kind);
          self(self, i + 1);
          pairs.pop_back();
        }
        used[j] = false;
      }
    };
    recurse(recurse, 0);
  }

  GlobalAssignment Build(const std::vector<int>& ids,
                         const std::vector<std::tuple<int, int, int>>& pairs) const {
    GlobalAssignment a;
    a.step = links_.step();
    std::vector<BeamRef> refs(candidates_.size());
    for (int g = 0; g < links_.gnb_count(); ++g) {
      BeamConfig config{links_.site(g).gnb_id, links_.step(), {}};
      for (int id : ids) {  // ascending ids are azimuth-sorted within a gNB
        const Candidate& c = candidates_[static_cast<size_t>(id)];
        if (c.slot != g) continue;
        refs[static_cast<size_t>(id)] = {config.gnb_id, static_cast<int>(config.beams.size())};
        config.beams.push_back(c.beam);
      }
      a.configs.push_back(std::move(config));
    }
    for (const auto& [x, y, k] : pairs) {
      a.pairings.push_back({refs[static_cast<size_t>(x)], refs[static_cast<size_t>(y)],
                            k == 0 ? PairingKind::kCoordinated : PairingKind::kBlanking});
    }
    return a;
  }

  OptimumResult Assemble(const Solution& best, std::int64_t nodes) const {
    std::vector<int> ids;
    std::vector<std::tuple<int, int, int>> pairs;
    size_t i = 0;
    for (; i < best.key.size() && best.key[i] != (1 << 20); ++i) ids.push_back(best.key[i]);
    for (; i + 3 < best.key.size(); i += 4) {
      pairs.emplace_back(best.key[i + 1], best.key[i + 2], best.key[i + 3]);
    }
    OptimumResult result;
    result.assignment = Build(ids, pairs);
    result.assignment.schedule = BestVehicleSchedule(result.assignment, links_);
    result.objective_bit = ObjectiveValue(result.assignment, links_);
    result.nodes = nodes;
    return result;
  }

  const StepLinks& links_;
  const OptimumOptions& options_;
  double dt_;
  std::vector<Candidate> candidates_;
  std::vector<std::vector<int>> order_;
  std::vector<std::vector<double>> prefix_;
  std::vector<double> interference_;
  std::atomic<double> best_value_{0.0};
};

}  // namespace

OptimumResult BruteForceOptimum(const StepLinks& links, const OptimumOptions& options) {
  if (links.gnb_count() > kOptimumMaxGnbs) {
    throw ConfigError("exhaustive search supports at most " + std::to_string(kOptimumMaxGnbs) +
                      " gNBs, got " + std::to_string(links.gnb_count()));
  }
  for (int g = 0; g < links.gnb_count(); ++g) {
    if (links.site(g).n_beams_max > kOptimumMaxBeams) {
      throw ConfigError("exhaustive search supports at most " +
                        std::to_string(kOptimumMaxBeams) + " beams per gNB");
    }
  }
  if (!(options.grid_step_deg > 0.0) || options.grid_step_deg > 360.0) {
    throw ConfigError("direction grid step must be in (0, 360]");
  }
  Search search(links, options);
  return search.Run();
}

}  // namespace mmbeam
