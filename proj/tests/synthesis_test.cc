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

#include "mmbeam/synthesis.h"

#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "mmbeam/error.h"
#include "mmbeam/scenario_io.h"

namespace mmbeam {
namespace {

double DistanceToCenter(const VehicleSample& s, const Point2& c) {
  return std::hypot(s.position.x - c.x, s.position.y - c.y);
}

TEST(SynthesisTest, ZeroRateHasNoVehicles) {
  IntersectionSpec spec;
  spec.arrival_rate_per_s = 0.0;
  spec.steps = 50;
  const Scenario s = SynthesizeIntersection(spec);
  EXPECT_TRUE(s.data().samples.empty());
  EXPECT_EQ(s.step_count(), 50);
  EXPECT_EQ(s.gnbs().size(), 1u);
}

TEST(SynthesisTest, AllRedQueuesOnlyGrow) {
  IntersectionSpec spec;
  spec.light_program = LightProgram::kAllRed;
  spec.arrival_rate_per_s = 0.3;
  spec.steps = 200;
  const Scenario s = SynthesizeIntersection(spec);
  size_t previous = 0;
  for (int k = s.first_step(); k <= s.last_step(); ++k) {
    const auto now = s.VehiclesAt(k);
    EXPECT_GE(now.size(), previous) << "step " << k;
    previous = now.size();
    for (const auto& v : now) {
      // Nobody enters the box while every approach is red.
      EXPECT_GE(DistanceToCenter(v, {0.0, 0.0}), spec.stop_line_m - 1e-9);
    }
  }
  EXPECT_GT(previous, 10u);
}

TEST(SynthesisTest, StoppedAtRedLine) {
  IntersectionSpec spec;
  spec.light_program = LightProgram::kAllRed;
  spec.arrival_rate_per_s = 0.2;
  spec.steps = 120;
  const Scenario s = SynthesizeIntersection(spec);
  // Speed is the mean over the step just travelled, so a car is at rest from
  // the step after it reaches the line and never moves again.
  std::map<std::string, VehicleSample> last;
  int checked = 0;
  for (const auto& v : s.data().samples) {
    const auto it = last.find(v.vehicle_id);
    if (it != last.end() && DistanceToCenter(it->second, {0.0, 0.0}) - spec.stop_line_m < 0.5) {
      EXPECT_EQ(v.position, it->second.position) << v.vehicle_id << " at step " << v.step;
      EXPECT_EQ(v.speed, 0.0) << v.vehicle_id << " at step " << v.step;
      ++checked;
    }
    last[v.vehicle_id] = v;
  }
  EXPECT_GT(checked, 0);
}

TEST(SynthesisTest, BoundsAndSpeeds) {
  IntersectionSpec spec;
  spec.arrival_rate_per_s = 0.4;
  spec.steps = 300;
  spec.intersections = 2;
  const Scenario s = SynthesizeIntersection(spec);
  ASSERT_EQ(s.gnbs().size(), 2u);
  const double reach = spec.arm_length_m + spec.lane_offset_m + 1e-9;
  for (const auto& v : s.data().samples) {
    EXPECT_GE(v.speed, 0.0);
    EXPECT_LE(v.speed, spec.max_speed_mps + 1e-9);
    const double d0 = DistanceToCenter(v, {0.0, 0.0});
    const double d1 = DistanceToCenter(v, {spec.spacing_m, 0.0});
    EXPECT_LE(std::min(d0, d1), reach) << v.vehicle_id;
  }
}

TEST(SynthesisTest, DischargesOnGreen) {
  IntersectionSpec spec;
  spec.arrival_rate_per_s = 0.3;
  spec.steps = 300;
  const Scenario s = SynthesizeIntersection(spec);
  // Vehicles leave the scenario, so some id is absent at the final step.
  std::map<std::string, int> last_seen;
  for (const auto& v : s.data().samples) last_seen[v.vehicle_id] = v.step;
  int departed = 0;
  for (const auto& [id, step] : last_seen) departed += step < s.last_step() ? 1 : 0;
  EXPECT_GT(departed, 0);
}

TEST(SynthesisTest, LightsMatchProgram) {
  IntersectionSpec spec;
  spec.light_program = LightProgram::kHoldFirstArmRed;
  spec.steps = 130;
  const Scenario s = SynthesizeIntersection(spec);
  const std::string light = *s.gnbs()[0].colocated_light_id;
  bool saw_green = false;
  for (int k = 0; k < spec.steps; ++k) {
    const LightPhase* phase = s.Phase(k, light);
    ASSERT_NE(phase, nullptr);
    ASSERT_EQ(phase->approaches.size(), 4u);
    EXPECT_EQ(phase->approaches[0].azimuth_deg, 0);
    EXPECT_EQ(phase->approaches[0].state, LightState::kRed);
    for (const auto& a : phase->approaches) saw_green |= a.state == LightState::kGreen;
  }
  EXPECT_TRUE(saw_green);
}

TEST(SynthesisTest, AlternatingIsPeriodic) {
  IntersectionSpec spec;
  spec.light_period_steps = 40;
  spec.steps = 120;
  const Scenario s = SynthesizeIntersection(spec);
  const std::string light = *s.gnbs()[0].colocated_light_id;
  for (int k = 0; k + 40 < spec.steps; ++k) {
    EXPECT_EQ(s.Phase(k, light)->approaches, s.Phase(k + 40, light)->approaches);
  }
}

TEST(SynthesisTest, FixedSeedBitIdentical) {
  IntersectionSpec spec;
  spec.arrival_rate_per_s = 0.25;
  spec.steps = 150;
  std::ostringstream a;
  std::ostringstream b;
  WriteMobility(a, SynthesizeIntersection(spec).data().samples);
  WriteMobility(b, SynthesizeIntersection(spec).data().samples);
  EXPECT_EQ(a.str(), b.str());
  spec.seed = 2;
  std::ostringstream c;
  WriteMobility(c, SynthesizeIntersection(spec).data().samples);
  EXPECT_NE(a.str(), c.str());
}

TEST(SynthesisTest, ThreeArms) {
  IntersectionSpec spec;
  spec.arms = 3;
  spec.steps = 60;
  const Scenario s = SynthesizeIntersection(spec);
  EXPECT_EQ(s.Approaches(*s.gnbs()[0].colocated_light_id), (std::vector<int>{0, 90, 180}));
}

TEST(SynthesisTest, RejectsBadSpecs) {
  IntersectionSpec spec;
  spec.arms = 5;
  EXPECT_THROW(SynthesizeIntersection(spec), ConfigError);
  spec = {};
  spec.intersections = 3;
  EXPECT_THROW(SynthesizeIntersection(spec), ConfigError);
  spec = {};
  spec.arrival_rate_per_s = -1.0;
  EXPECT_THROW(SynthesizeIntersection(spec), ConfigError);
  spec = {};
  spec.steps = 0;
  EXPECT_THROW(SynthesizeIntersection(spec), ConfigError);
  spec = {};
  spec.arm_length_m = 5.0;
  EXPECT_THROW(SynthesizeIntersection(spec), ConfigError);
}

TEST(SynthesisSpecJsonTest, KeysMirrorFields) {
  const IntersectionSpec spec = IntersectionSpecFromJson(
      R"({"arms": 3, "steps": 77, "seed": 9, "arrival_rate_per_s": 0.5,
          "light_program": "all_red", "gnb_upa": [8, 4], "channel": "nyu"})");
  EXPECT_EQ(spec.arms, 3);
  EXPECT_EQ(spec.steps, 77);
  EXPECT_EQ(spec.seed, 9u);
  EXPECT_DOUBLE_EQ(spec.arrival_rate_per_s, 0.5);
  EXPECT_EQ(spec.light_program, LightProgram::kAllRed);
  EXPECT_EQ(spec.gnb_upa.n1, 8);
  EXPECT_EQ(spec.gnb_upa.n2, 4);
  EXPECT_EQ(spec.family, ChannelFamily::kNyu);
  EXPECT_THROW(IntersectionSpecFromJson(R"({"lanes": 2})"), ConfigError);
  EXPECT_THROW(IntersectionSpecFromJson("[1]"), ConfigError);
  EXPECT_THROW(LightProgramFromName("blinking"), ConfigError);
}

}  // namespace
}  // namespace mmbeam
