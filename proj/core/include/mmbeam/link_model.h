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

#ifndef MMBEAM_LINK_MODEL_H_
#define MMBEAM_LINK_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mmbeam/channel_gain.h"
#include "mmbeam/gain_tables.h"
#include "mmbeam/link_budget.h"
#include "mmbeam/scenario.h"
#include "mmbeam/strategies.h"

namespace mmbeam {

// gNB-to-vehicle geometry and large-scale state at one step.
struct LinkGeometry {
  double distance_m = 0.0;
  double azimuth_deg = 0.0;       // vehicle seen from the gNB
  double elevation_deg = 0.0;     // vehicle seen from the gNB
  double back_azimuth_deg = 0.0;  // gNB seen from the vehicle
  bool los = false;
  double attenuation = 0.0;  // path loss as a linear factor
  bool in_range = false;     // within the interference radius
};

// A beam together with the scenario slot of the gNB emitting it.
struct EmittedBeam {
  int gnb_slot = 0;
  Beam beam;
};

// Order used whenever interference terms are summed: gNB slot, azimuth,
// width.
bool CanonicalLess(const EmittedBeam& a, const EmittedBeam& b);

struct LinkOutcome {
  double sinr = 0.0;
  double rate_bps = 0.0;
};

// Radio state of every gNB-vehicle link at one step. Random draws come from
// counter streams keyed by (seed, step, gNB, beam direction, vehicle), so a
// link sees the same numbers whatever else is configured. LoS is drawn once
// per gNB-vehicle pair.
//
// The vehicle points its receive beam at the gNB it is served by. Beams of
// other gNBs are classified by their geometry; other beams of the serving
// gNB count as misaligned.
class StepLinks {
 public:
  StepLinks(const Scenario& scenario, const GainTables& tables, const CqiTable& cqi,
            std::uint64_t seed, int step);

  const Scenario& scenario() const { return *scenario_; }
  int step() const { return step_; }
  int vehicle_count() const { return static_cast<int>(vehicles_.size()); }
  const VehicleSample& vehicle(int v) const { return vehicles_[static_cast<size_t>(v)]; }
  int gnb_count() const { return gnb_count_; }
  const GnbSite& site(int slot) const { return scenario_->gnbs()[static_cast<size_t>(slot)]; }
  const LinkGeometry& geometry(int slot, int v) const {
    return geometry_[static_cast<size_t>(slot) * vehicles_.size() + static_cast<size_t>(v)];
  }
  double noise_w() const { return noise_w_; }
  double bandwidth_hz() const { return bandwidth_hz_; }

  // Whether the vehicle lies inside the beam's half-power width.
  bool Covers(int slot, const Beam& beam, int v) const;
  MisalignmentAngles Misalignment(int slot, const Beam& beam, int v) const;
  Alignment InterfererAlignment(int serving_slot, int slot, const Beam& beam, int v) const;
  GainDistribution Distribution(int slot, const Beam& beam, int v, Alignment alignment) const;
  // Path loss times a sampled gain.
  double ChannelGain(int slot, const Beam& beam, int v, Alignment alignment) const;
  // P * a * E[G] for the fully aligned link; used for association.
  double ExpectedServingPower(int slot, const Beam& beam, int v) const;

  // SINR and CQI rate of `v` served by `serving` while every beam in
  // `others` (canonical order, serving excluded) transmits. A coherent
  // partner adds its amplitude to the signal instead of interfering.
  LinkOutcome Evaluate(const EmittedBeam& serving, std::span<const EmittedBeam> others, int v,
                       const EmittedBeam* coherent_partner = nullptr) const;

  double RateFor(double sinr) const;

 private:
  const Scenario* scenario_;
  const GainTables* tables_;
  const CqiTable* cqi_;
  std::uint64_t seed_;
  int step_;
  int gnb_count_;
  double noise_w_;
  double bandwidth_hz_;
  std::vector<VehicleSample> vehicles_;
  std::vector<std::uint32_t> vehicle_index_;
  std::vector<LinkGeometry> geometry_;
};

// SINR from already computed terms. Interference is summed in the given
// order after the noise, which keeps the result monotone in every term.
double SinrFromTerms(double signal_w, std::span<const double> interference_w, double noise_w);

}  // namespace mmbeam

#endif  // MMBEAM_LINK_MODEL_H_
