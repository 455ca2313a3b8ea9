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

#ifndef MMBEAM_SCENARIO_H_
#define MMBEAM_SCENARIO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmbeam/gain_tables.h"
#include "mmbeam/geometry.h"
#include "mmbeam/link_budget.h"

namespace mmbeam {

struct VehicleSample {
  int step = 0;
  std::string vehicle_id;
  Point2 position;
  double speed = 0.0;    // m/s
  double heading = 0.0;  // degrees, same frame as azimuths

  friend bool operator==(const VehicleSample&, const VehicleSample&) = default;
};

enum class LightState { kRed, kYellow, kGreen };

std::string ToString(LightState state);

struct ApproachState {
  int azimuth_deg = 0;  // quantized to whole degrees, [0, 360)
  LightState state = LightState::kRed;

  friend bool operator==(const ApproachState&, const ApproachState&) = default;
};

// State of every approach of one light at one step, sorted by azimuth.
struct LightPhase {
  int step = 0;
  std::string light_id;
  std::vector<ApproachState> approaches;

  friend bool operator==(const LightPhase&, const LightPhase&) = default;
};

// Where a traffic light stands; needed to colocate gNBs with lights.
struct LightSite {
  std::string light_id;
  Point2 position;
};

struct GnbSite {
  int gnb_id = 0;  // < 256
  Point3 position;
  int n_beams_max = 2;         // N(g)
  double p_tot_w = 1.0;        // P_tot(g)
  double max_width_deg = 5.0;  // A(g)
  UpaConfig upa{16, 16, ElementType::kIso, {}};
  std::vector<double> sector_centers;  // 3 azimuths 120 deg apart for 3GPP elements
  std::optional<std::string> colocated_light_id;
};

struct BoundingBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;
  bool Contains(const Point2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

// Physical constants and model knobs that travel with a scenario.
struct PhysicalConfig {
  LinkBudgetConfig link;
  double los_kappa_m = 50.0;
  double vehicle_beam_width_deg = 13.0;
  double interference_radius_m = 500.0;
};

struct ScenarioData {
  std::vector<GnbSite> gnbs;
  std::vector<VehicleSample> samples;
  std::vector<LightPhase> lights;
  std::vector<LightSite> light_sites;
  double step_duration_s = 1.0;
  ChannelFamily family = ChannelFamily::k3gpp;
  ElementType element = ElementType::kIso;
  std::optional<BoundingBox> bounding_box;  // derived from samples when unset
  double vehicle_antenna_height_m = 1.5;
  UpaConfig vehicle_upa{8, 8, ElementType::kIso, {}};
  PhysicalConfig physics;
};

// Immutable world description. Construction validates every invariant and
// throws ConfigError on violation; afterwards the object is read-only and
// safe to share across threads.
class Scenario {
 public:
  explicit Scenario(ScenarioData data);

  const ScenarioData& data() const { return data_; }
  std::span<const GnbSite> gnbs() const { return data_.gnbs; }
  const GnbSite& gnb(int gnb_id) const;
  const PhysicalConfig& physics() const { return data_.physics; }
  double step_duration_s() const { return data_.step_duration_s; }
  ChannelFamily family() const { return data_.family; }
  ElementType element() const { return data_.element; }
  const BoundingBox& bounding_box() const { return *data_.bounding_box; }
  double vehicle_height_m() const { return data_.vehicle_antenna_height_m; }
  int nt(const GnbSite& site) const { return site.upa.size(); }
  int nr() const { return data_.vehicle_upa.size(); }

  // Inclusive step range; empty scenarios have first_step() > last_step().
  int first_step() const { return first_step_; }
  int last_step() const { return last_step_; }
  int step_count() const { return last_step_ - first_step_ + 1; }

  // Samples at step k, sorted by vehicle id.
  std::span<const VehicleSample> VehiclesAt(int step) const;
  // Dense index of a vehicle id (its rank in sorted id order).
  std::uint32_t VehicleIndex(const std::string& vehicle_id) const;
  std::span<const std::string> vehicle_ids() const { return vehicle_ids_; }
  // Steps at which each vehicle appears, times the step duration.
  double PresenceTime(const std::string& vehicle_id) const;

  // Light phase for (step, light); nullptr when the scenario has none.
  const LightPhase* Phase(int step, const std::string& light_id) const;
  // Union of the light's approaches over all steps.
  std::vector<int> Approaches(const std::string& light_id) const;

  Point3 VehiclePosition(const VehicleSample& sample) const {
    return {sample.position.x, sample.position.y, data_.vehicle_antenna_height_m};
  }

  // Copy with N(g) and A(g) replaced on every gNB.
  Scenario WithBeamLimits(int n_beams, double max_width_deg) const;
  // Copy without any vehicle sample (lights and sites kept).
  Scenario WithoutVehicles() const;

 private:
  ScenarioData data_;
  int first_step_ = 0;
  int last_step_ = -1;
  std::vector<std::pair<std::size_t, std::size_t>> step_ranges_;  // [begin, end)
  std::vector<std::string> vehicle_ids_;
  std::map<std::string, std::uint32_t> vehicle_index_;
  std::map<std::string, int> presence_steps_;
  std::map<std::pair<std::string, int>, std::size_t> phase_index_;
};

// Places one gNB on each of the `count` lights with the most vehicle
// observations within `radius_m`, copying radio parameters from `site`.
// Ties go to the lower light id; gNB ids are assigned 0..count-1 in rank
// order. This density ranking is a reconstruction of how deployment sites are
// chosen in practice.
std::vector<GnbSite> ColocateGnbsAtDenseLights(
    std::span<const LightSite> lights, std::span<const VehicleSample> samples,
    int count, double radius_m, const GnbSite& site, double gnb_height_m = 10.0);

// Three sector centers 120 degrees apart starting at `first_deg`.
std::vector<double> DefaultSectorCenters(double first_deg = 0.0);

}  // namespace mmbeam

#endif  // MMBEAM_SCENARIO_H_
