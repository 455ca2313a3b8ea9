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

#include "mmbeam/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

#include "mmbeam/error.h"

namespace mmbeam {

std::string ToString(LightState state) {
  switch (state) {
    case LightState::kRed:
      return "RED";
    case LightState::kYellow:
      return "YELLOW";
    case LightState::kGreen:
      return "GREEN";
  }
  return "?";
}

std::vector<double> DefaultSectorCenters(double first_deg) {
  return {WrapDegrees(first_deg), WrapDegrees(first_deg + 120.0),
          WrapDegrees(first_deg + 240.0)};
}

Scenario::Scenario(ScenarioData data) : data_(std::move(data)) {
  if (!(data_.step_duration_s > 0.0)) throw ConfigError("step duration must be > 0");
  if (!(data_.vehicle_antenna_height_m >= 0.0)) {
    throw ConfigError("vehicle antenna height must be >= 0");
  }
  try {
    data_.vehicle_upa.Validate();
    data_.physics.link.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(data_.physics.los_kappa_m > 0.0) || !(data_.physics.vehicle_beam_width_deg > 0.0)) {
    throw ConfigError("LoS kappa and vehicle beam width must be > 0");
  }

  std::set<std::string> light_ids;
  for (const LightPhase& phase : data_.lights) light_ids.insert(phase.light_id);

  std::set<int> gnb_ids;
  for (GnbSite& site : data_.gnbs) {
    if (site.gnb_id < 0 || site.gnb_id >= 256) throw ConfigError("gNB id must be in [0, 256)");
    if (!gnb_ids.insert(site.gnb_id).second) {
      throw ConfigError("duplicate gNB id " + std::to_string(site.gnb_id));
    }
    if (site.n_beams_max < 1) throw ConfigError("gNB needs N(g) >= 1");
    if (!(site.max_width_deg > 0.0)) throw ConfigError("gNB needs A(g) > 0");
    if (!(site.p_tot_w > 0.0)) throw ConfigError("gNB needs P_tot(g) > 0");
    try {
      site.upa.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    site.upa.element = data_.element;
    if (data_.element == ElementType::kSector3gpp) {
      if (site.sector_centers.empty()) site.sector_centers = DefaultSectorCenters();
      if (site.sector_centers.size() != 3) {
        throw ConfigError("3GPP sector elements need exactly 3 sector centers");
      }
      std::vector<double> sorted = site.sector_centers;
      for (double& c : sorted) c = WrapDegrees(c);
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < 3; ++i) {
        const double gap = CircularDistance(sorted[static_cast<size_t>(i)],
                                            sorted[static_cast<size_t>((i + 1) % 3)]);
        if (std::abs(gap - 120.0) > 1e-6) {
          throw ConfigError("sector centers must be 120 deg apart");
        }
      }
    }
    if (site.colocated_light_id && !light_ids.contains(*site.colocated_light_id)) {
      throw ConfigError("gNB " + std::to_string(site.gnb_id) +
                        " references unknown light '" + *site.colocated_light_id + "'");
    }
  }
  std::sort(data_.gnbs.begin(), data_.gnbs.end(),
            [](const GnbSite& a, const GnbSite& b) { return a.gnb_id < b.gnb_id; });

  auto by_step_id = [](const VehicleSample& a, const VehicleSample& b) {
    return std::tie(a.step, a.vehicle_id) < std::tie(b.step, b.vehicle_id);
  };
  std::sort(data_.samples.begin(), data_.samples.end(), by_step_id);
  for (size_t i = 1; i < data_.samples.size(); ++i) {
    if (data_.samples[i - 1].step == data_.samples[i].step &&
        data_.samples[i - 1].vehicle_id == data_.samples[i].vehicle_id) {
      throw ConfigError("duplicate sample for vehicle '" + data_.samples[i].vehicle_id +
                        "' at step " + std::to_string(data_.samples[i].step));
    }
  }

  if (!data_.bounding_box) {
    BoundingBox box{std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
    for (const auto& s : data_.samples) {
      box.xmin = std::min(box.xmin, s.position.x);
      box.ymin = std::min(box.ymin, s.position.y);
      box.xmax = std::max(box.xmax, s.position.x);
      box.ymax = std::max(box.ymax, s.position.y);
    }
    if (data_.samples.empty()) box = BoundingBox{};
    data_.bounding_box = box;
  }
  for (const auto& s : data_.samples) {
    if (!data_.bounding_box->Contains(s.position)) {
      throw ConfigError("vehicle '" + s.vehicle_id + "' at step " + std::to_string(s.step) +
                        " lies outside the bounding box");
    }
    if (s.speed < 0.0) throw ConfigError("negative speed for vehicle '" + s.vehicle_id + "'");
  }

  first_step_ = std::numeric_limits<int>::max();
  last_step_ = std::numeric_limits<int>::min();
  for (const auto& s : data_.samples) {
    first_step_ = std::min(first_step_, s.step);
    last_step_ = std::max(last_step_, s.step);
  }
  for (const auto& p : data_.lights) {
    first_step_ = std::min(first_step_, p.step);
    last_step_ = std::max(last_step_, p.step);
  }
  if (first_step_ > last_step_) {
    first_step_ = 0;
    last_step_ = -1;
  }

  step_ranges_.assign(static_cast<size_t>(std::max(0, step_count())), {0, 0});
  for (size_t i = 0; i < data_.samples.size();) {
    size_t j = i;
    while (j < data_.samples.size() && data_.samples[j].step == data_.samples[i].step) ++j;
    step_ranges_[static_cast<size_t>(data_.samples[i].step - first_step_)] = {i, j};
    i = j;
  }

  std::set<std::string> ids;
  for (const auto& s : data_.samples) {
    ids.insert(s.vehicle_id);
    ++presence_steps_[s.vehicle_id];
  }
  vehicle_ids_.assign(ids.begin(), ids.end());
  for (size_t i = 0; i < vehicle_ids_.size(); ++i) {
    vehicle_index_[vehicle_ids_[i]] = static_cast<std::uint32_t>(i);
  }

  for (size_t i = 0; i < data_.lights.size(); ++i) {
    LightPhase& phase = data_.lights[i];
    std::sort(phase.approaches.begin(), phase.approaches.end(),
              [](const ApproachState& a, const ApproachState& b) {
                return a.azimuth_deg < b.azimuth_deg;
              });
    if (!phase_index_.emplace(std::make_pair(phase.light_id, phase.step), i).second) {
      throw ConfigError("duplicate phase for light '" + phase.light_id + "' at step " +
                        std::to_string(phase.step));
    }
  }
  for (const std::string& light : light_ids) {
    const std::vector<int> approaches = Approaches(light);
    for (int k = first_step_; k <= last_step_; ++k) {
      const LightPhase* phase = Phase(k, light);
      if (phase == nullptr) {
        throw ConfigError("light '" + light + "' has no phase at step " + std::to_string(k));
      }
      if (phase->approaches.size() != approaches.size()) {
        throw ConfigError("light '" + light + "' misses an approach at step " +
                          std::to_string(k));
      }
    }
  }
}

const GnbSite& Scenario::gnb(int gnb_id) const {
  for (const GnbSite& site : data_.gnbs) {
    if (site.gnb_id == gnb_id) return site;
  }
  throw std::out_of_range("unknown gNB " + std::to_string(gnb_id));
}

std::span<const VehicleSample> Scenario::VehiclesAt(int step) const {
  if (step < first_step_ || step > last_step_) return {};
  const auto [begin, end] = step_ranges_[static_cast<size_t>(step - first_step_)];
  return std::span<const VehicleSample>(data_.samples).subspan(begin, end - begin);
}

std::uint32_t Scenario::VehicleIndex(const std::string& vehicle_id) const {
  return vehicle_index_.at(vehicle_id);
}

double Scenario::PresenceTime(const std::string& vehicle_id) const {
  const auto it = presence_steps_.find(vehicle_id);
  return it == presence_steps_.end() ? 0.0 : it->second * data_.step_duration_s;
}

const LightPhase* Scenario::Phase(int step, const std::string& light_id) const {
  const auto it = phase_index_.find({light_id, step});
  return it == phase_index_.end() ? nullptr : &data_.lights[it->second];
}

std::vector<int> Scenario::Approaches(const std::string& light_id) const {
  std::set<int> azimuths;
  for (const auto& phase : data_.lights) {
    if (phase.light_id != light_id) continue;
    for (const auto& a : phase.approaches) azimuths.insert(a.azimuth_deg);
  }
  return {azimuths.begin(), azimuths.end()};
}

Scenario Scenario::WithBeamLimits(int n_beams, double max_width_deg) const {
  ScenarioData copy = data_;
  for (GnbSite& site : copy.gnbs) {
    site.n_beams_max = n_beams;
    site.max_width_deg = max_width_deg;
  }
  return Scenario(std::move(copy));
}

Scenario Scenario::WithoutVehicles() const {
  ScenarioData copy = data_;
  copy.samples.clear();
  return Scenario(std::move(copy));
}

std::vector<GnbSite> ColocateGnbsAtDenseLights(
    std::span<const LightSite> lights, std::span<const VehicleSample> samples,
    int count, double radius_m, const GnbSite& site, double gnb_height_m) {
  std::vector<std::pair<long, std::string>> ranked;
  std::map<std::string, Point2> where;
  for (const LightSite& light : lights) {
    long hits = 0;
    for (const VehicleSample& s : samples) {
      if (std::hypot(s.position.x - light.position.x, s.position.y - light.position.y) <=
          radius_m) {
        ++hits;
      }
    }
    ranked.emplace_back(-hits, light.light_id);
    where[light.light_id] = light.position;
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<GnbSite> sites;
  for (int i = 0; i < count && i < static_cast<int>(ranked.size()); ++i) {
    GnbSite g = site;
    g.gnb_id = i;
    const Point2 p = where[ranked[static_cast<size_t>(i)].second];
    g.position = {p.x, p.y, gnb_height_m};
    g.colocated_light_id = ranked[static_cast<size_t>(i)].second;
    sites.push_back(g);
  }
  return sites;
}

}  // namespace mmbeam
