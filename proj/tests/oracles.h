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

#ifndef MMBEAM_TESTS_ORACLES_H_
#define MMBEAM_TESTS_ORACLES_H_

// Slow reference implementations used as test oracles. Each one re-derives
// the answer of the library routine it checks by brute force.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mmbeam/constraints.h"
#include "mmbeam/link_model.h"
#include "mmbeam/scenario.h"
#include "mmbeam/strategies.h"

namespace mmbeam::oracle {

inline double ArcDistance(double a, double b) {
  double d = std::fabs(a - b);
  while (d >= 360.0) d -= 360.0;
  return std::min(d, 360.0 - d);
}

// Textbook agglomerative complete linkage: every round recomputes every
// inter-cluster diameter from scratch (O(n^3) per round). Ties go to the
// pair with the smallest (first member, first member).
inline std::vector<std::vector<int>> NaiveCompleteLinkage(const std::vector<double>& az,
                                                          double max_diameter) {
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < static_cast<int>(az.size()); ++i) clusters.push_back({i});
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    size_t bi = 0;
    size_t bj = 0;
    for (size_t i = 0; i < clusters.size(); ++i) {
      for (size_t j = i + 1; j < clusters.size(); ++j) {
        double link = 0.0;
        for (int p : clusters[i]) {
          for (int q : clusters[j]) link = std::max(link, ArcDistance(az[p], az[q]));
        }
        // Clusters stay sorted by first member, so scanning order already
        // yields the lexicographically smallest pair among ties.
        if (link < best) {
          best = link;
          bi = i;
          bj = j;
        }
      }
    }
    if (best > max_diameter) break;
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(clusters[bi].begin(), clusters[bi].end());
    clusters.erase(clusters.begin() + static_cast<long>(bj));
  }
  return clusters;
}

// Each inequality of the beam-design problem written out directly. Sums of
// powers and fractions may exceed their bound by a relative 1e-12 before
// they count as violated; widths of exactly zero mark unused beams.
inline bool DirectFeasible(const GlobalAssignment& a, const Scenario& scenario) {
  constexpr double kTol = 1e-12;
  std::map<int, const BeamConfig*> configs;
  for (const BeamConfig& c : a.configs) {
    const GnbSite* site = nullptr;
    for (const GnbSite& g : scenario.gnbs()) {
      if (g.gnb_id == c.gnb_id) site = &g;
    }
    if (site == nullptr) return false;
    if (configs.count(c.gnb_id) != 0) return false;
    configs[c.gnb_id] = &c;
    if (static_cast<int>(c.beams.size()) > site->n_beams_max) return false;
    double power = 0.0;
    for (size_t i = 0; i < c.beams.size(); ++i) {
      const Beam& b = c.beams[i];
      if (b.width_deg < 0.0 || b.width_deg > site->max_width_deg) return false;
      if (b.power_w < 0.0) return false;
      if (b.width_deg == 0.0 && b.power_w != 0.0) return false;
      power += b.power_w;
      for (size_t j = i + 1; j < c.beams.size(); ++j) {
        const Beam& d = c.beams[j];
        if (b.width_deg == 0.0 || d.width_deg == 0.0) continue;
        if (ArcDistance(b.azimuth_deg, d.azimuth_deg) < (b.width_deg + d.width_deg) / 2.0) {
          return false;
        }
      }
    }
    if (power > site->p_tot_w + site->p_tot_w * kTol) return false;
  }
  auto beam_of = [&](const BeamRef& r) -> const Beam* {
    const auto it = configs.find(r.gnb_id);
    if (it == configs.end()) return nullptr;
    if (r.beam < 0 || r.beam >= static_cast<int>(it->second->beams.size())) return nullptr;
    return &it->second->beams[static_cast<size_t>(r.beam)];
  };
  std::map<BeamRef, int> uses;
  for (const BeamPairing& p : a.pairings) {
    const Beam* x = beam_of(p.first);
    const Beam* y = beam_of(p.second);
    if (x == nullptr || y == nullptr) return false;
    if (!(x->width_deg > 0.0) || !(y->width_deg > 0.0)) return false;
    if (p.first.gnb_id == p.second.gnb_id) return false;
    if (++uses[p.first] > 1 || ++uses[p.second] > 1) return false;
  }
  std::map<BeamRef, double> sums;
  for (const ScheduleEntry& e : a.schedule) {
    const Beam* b = beam_of(e.beam);
    if (b == nullptr) return false;
    const VehicleSample* veh = nullptr;
    for (const VehicleSample& v : scenario.VehiclesAt(a.step)) {
      if (v.vehicle_id == e.vehicle_id) veh = &v;
    }
    if (veh == nullptr) return false;
    if (e.fraction < 0.0 || e.fraction > 1.0) return false;
    sums[e.beam] += e.fraction;
    if (e.fraction > 0.0) {
      const GnbSite& g = scenario.gnb(e.beam.gnb_id);
      const double bearing = std::atan2(veh->position.y - g.position.y,
                                        veh->position.x - g.position.x) *
                             180.0 / std::acos(-1.0);
      const double az = bearing < 0.0 ? bearing + 360.0 : bearing;
      if (ArcDistance(az, b->azimuth_deg) > b->width_deg / 2.0) return false;
    }
  }
  for (const auto& [ref, sum] : sums) {
    if (sum > 1.0 + kTol) return false;
  }
  return true;
}

// Enumerates every set of at most N(g) non-overlapping beams per gNB on the
// direction grid (width A(g), power P_tot / N, the library's elevation rule
// passed in), schedules each beam to its best vehicle and returns the
// largest objective.
inline double EnumeratedOptimum(const StepLinks& links, double grid_step_deg,
                                const StrategyParams& params) {
  const Scenario& scenario = links.scenario();
  std::vector<std::vector<std::vector<Beam>>> per_gnb;
  for (const GnbSite& site : scenario.gnbs()) {
    const double el = BeamElevation(scenario, site, params);
    std::vector<double> dirs;
    for (double d = 0.0; d < 360.0 - 1e-9; d += grid_step_deg) dirs.push_back(d);
    std::vector<std::vector<Beam>> sets{{}};
    std::function<void(size_t, std::vector<Beam>&)> grow = [&](size_t from,
                                                               std::vector<Beam>& cur) {
      if (static_cast<int>(cur.size()) == site.n_beams_max) return;
      for (size_t i = from; i < dirs.size(); ++i) {
        bool clash = false;
        for (const Beam& b : cur) {
          clash |= ArcDistance(b.azimuth_deg, dirs[i]) < site.max_width_deg;
        }
        if (clash) continue;
        cur.push_back({dirs[i], el, site.max_width_deg, site.p_tot_w / site.n_beams_max});
        sets.push_back(cur);
        grow(i + 1, cur);
        cur.pop_back();
      }
    };
    std::vector<Beam> cur;
    grow(0, cur);
    per_gnb.push_back(std::move(sets));
  }
  double best = 0.0;
  std::vector<size_t> pick(per_gnb.size(), 0);
  std::function<void(size_t)> visit = [&](size_t g) {
    if (g == per_gnb.size()) {
      GlobalAssignment a;
      a.step = links.step();
      for (size_t i = 0; i < per_gnb.size(); ++i) {
        a.configs.push_back({scenario.gnbs()[i].gnb_id, links.step(), per_gnb[i][pick[i]]});
      }
      a.schedule = BestVehicleSchedule(a, links);
      best = std::max(best, ObjectiveValue(a, links));
      return;
    }
    for (size_t i = 0; i < per_gnb[g].size(); ++i) {
      pick[g] = i;
      visit(g + 1);
    }
  };
  visit(0);
  return best;
}

}  // namespace mmbeam::oracle

#endif  // MMBEAM_TESTS_ORACLES_H_
