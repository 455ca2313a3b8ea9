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

#ifndef MMBEAM_STRATEGIES_H_
#define MMBEAM_STRATEGIES_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mmbeam/scenario.h"

namespace mmbeam {

struct Beam {
  double azimuth_deg = 0.0;    // pointing direction in the azimuth plane
  double elevation_deg = 0.0;  // fixed per beam, not optimized
  double width_deg = 0.0;      // half-power width
  double power_w = 0.0;

  friend bool operator==(const Beam&, const Beam&) = default;
};

// Active beams of one gNB at one step, sorted by azimuth.
struct BeamConfig {
  int gnb_id = 0;
  int step = 0;
  std::vector<Beam> beams;

  friend bool operator==(const BeamConfig&, const BeamConfig&) = default;
};

struct AngularObservation {
  double azimuth_deg = 0.0;
  int weight = 1;
};

enum class ElevationRule {
  kFarHalf,        // aim at a ground point inside the far half of the observed range
  kFixedDowntilt,  // constant downtilt below the horizon
};

struct StrategyParams {
  double observation_radius_m = 200.0;
  ElevationRule elevation_rule = ElevationRule::kFarHalf;
  // Aim point for kFarHalf as a fraction of the observation radius.
  double far_aim_fraction = 0.75;
  double fixed_downtilt_deg = 5.0;
  // Pooled observations are snapped to this grid before clustering. Zero
  // keeps every distinct bearing.
  double static_quantum_deg = 0.25;
  // Optional queue statistics per light: approach azimuth -> weight. Used by
  // the traffic-light design when red approaches outnumber beams.
  std::map<std::string, std::map<int, double>> approach_weights;
};

enum class StrategyKind { kStatic, kDynamic, kTrafficLight, kOptimum };

std::string ToString(StrategyKind kind);
// Accepts static, dynamic, tl and optimum in any case; throws ConfigError.
StrategyKind ParseStrategy(const std::string& name);

// Elevation shared by every beam of `site` under `params`.
double BeamElevation(const Scenario& scenario, const GnbSite& site,
                     const StrategyParams& params);

// Every beam of a gNB gets P_tot / N regardless of how many are active, so
// switching a beam off never raises the power of the others.
double PerBeamPower(const GnbSite& site);

// Bearings of vehicles within the observation radius at step k.
std::vector<AngularObservation> ObserveStep(const Scenario& scenario, const GnbSite& site,
                                            int step, const StrategyParams& params);
// Observations pooled over all steps; repeats are kept as weight.
std::vector<AngularObservation> ObserveAllSteps(const Scenario& scenario,
                                                const GnbSite& site,
                                                const StrategyParams& params);

// Clusters the observations with diameter A, keeps the N heaviest clusters
// (lower direction first on ties) and points one width-A beam at each. A
// cluster whose direction would overlap an already chosen beam is skipped.
std::vector<Beam> DesignFromObservations(std::span<const AngularObservation> observations,
                                         const GnbSite& site, double elevation_deg);

BeamConfig StaticDesign(const Scenario& scenario, int gnb_id, const StrategyParams& params);
BeamConfig DynamicDesign(const Scenario& scenario, int gnb_id, int step,
                         const StrategyParams& params);
// Beams at red approaches of the colocated light, then yellow, then green.
// Throws ConfigError when the gNB has no colocated light.
BeamConfig TrafficLightDesign(const Scenario& scenario, int gnb_id, int step,
                              const StrategyParams& params);

// One JSON object per line.
void WriteBeamConfigJsonl(std::ostream& out, const BeamConfig& config);
std::vector<BeamConfig> ReadBeamConfigJsonl(std::istream& in);

}  // namespace mmbeam

#endif  // MMBEAM_STRATEGIES_H_
