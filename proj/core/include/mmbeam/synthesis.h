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

#ifndef MMBEAM_SYNTHESIS_H_
#define MMBEAM_SYNTHESIS_H_

#include <cstdint>

#include "mmbeam/scenario.h"

namespace mmbeam {

enum class LightProgram {
  kAlternating,      // opposite arm pairs alternate green (with yellow) and red
  kAllRed,           // every approach red throughout
  kHoldFirstArmRed,  // arm 0 stays red; the remaining arms alternate
};

// Desk-scale stand-in for a city trace: one or two signalized intersections
// along the x axis, each with a gNB at its center colocated with its light.
struct IntersectionSpec {
  int arms = 4;  // 3 (arms at 0/90/180 deg) or 4 (0/90/180/270 deg)
  double arm_length_m = 200.0;
  double arrival_rate_per_s = 0.1;  // per inbound arm, Poisson
  int light_period_steps = 60;
  std::uint64_t seed = 1;
  int steps = 300;
  int intersections = 1;  // 1 or 2
  double spacing_m = 400.0;
  LightProgram light_program = LightProgram::kAlternating;
  int yellow_steps = 3;

  double stop_line_m = 10.0;  // stop line distance from the center
  double lane_offset_m = 1.5;
  double max_speed_mps = 13.9;
  double min_gap_m = 7.5;
  double step_duration_s = 1.0;

  // gNB radio parameters copied to every site.
  int n_beams = 2;
  double max_width_deg = 5.0;
  double p_tot_w = 1.0;
  double gnb_height_m = 10.0;
  UpaConfig gnb_upa{16, 16, ElementType::kIso, {}};
  ChannelFamily family = ChannelFamily::k3gpp;
  ElementType element = ElementType::kIso;
};

// Deterministic given the spec (including its seed). Vehicles follow a
// stop-at-red car-following rule: they queue behind the stop line while
// their approach is red or yellow and discharge on green. Throws ConfigError
// for unsupported arm or intersection counts or negative rates.
Scenario SynthesizeIntersection(const IntersectionSpec& spec);

}  // namespace mmbeam

#endif  // MMBEAM_SYNTHESIS_H_
