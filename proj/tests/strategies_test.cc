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

#include "mmbeam/strategies.h"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mmbeam/constraints.h"
#include "mmbeam/error.h"
#include "mmbeam/synthesis.h"
#include "test_util.h"

namespace mmbeam {
namespace {

using testing::MakePhase;
using testing::MakeSite;
using testing::VehicleAt;

std::vector<double> Azimuths(const BeamConfig& config) {
  std::vector<double> out;
  for (const Beam& b : config.beams) out.push_back(b.azimuth_deg);
  return out;
}

ScenarioData OneSiteData(int n_beams, double width) {
  ScenarioData data;
  data.gnbs.push_back(MakeSite(0, 0.0, 0.0, n_beams, width));
  data.bounding_box = BoundingBox{-1000, -1000, 1000, 1000};
  return data;
}

TEST(DesignFromObservationsTest, OppositeBearingsOnOneRoad) {
  const GnbSite site = MakeSite(0, 0, 0, 2, 5.0);
  std::vector<AngularObservation> obs{{0.0, 6}, {1.0, 3}, {180.0, 4}, {179.0, 2}, {90.0, 1}};
  const auto beams = DesignFromObservations(obs, site, -3.0);
  ASSERT_EQ(beams.size(), 2u);
  EXPECT_NEAR(beams[0].azimuth_deg, 0.5, 1e-12);
  EXPECT_NEAR(beams[1].azimuth_deg, 179.5, 1e-12);
  for (const Beam& b : beams) {
    EXPECT_DOUBLE_EQ(b.width_deg, 5.0);
    EXPECT_DOUBLE_EQ(b.elevation_deg, -3.0);
    EXPECT_DOUBLE_EQ(b.power_w, 0.5);
  }
}

TEST(DesignFromObservationsTest, FewerClustersThanBeams) {
  const GnbSite site = MakeSite(0, 0, 0, 4, 5.0);
  std::vector<AngularObservation> obs{{10.0, 1}, {200.0, 1}};
  EXPECT_EQ(DesignFromObservations(obs, site, 0.0).size(), 2u);
  EXPECT_TRUE(DesignFromObservations({}, site, 0.0).empty());
}

TEST(DesignFromObservationsTest, SizeTieGoesToLowerAzimuth) {
  const GnbSite site = MakeSite(0, 0, 0, 1, 5.0);
  std::vector<AngularObservation> obs{{250.0, 2}, {40.0, 2}, {120.0, 1}};
  const auto beams = DesignFromObservations(obs, site, 0.0);
  ASSERT_EQ(beams.size(), 1u);
  EXPECT_DOUBLE_EQ(beams[0].azimuth_deg, 40.0);
}

TEST(DesignFromObservationsTest, HeavierClusterWins) {
  const GnbSite site = MakeSite(0, 0, 0, 1, 5.0);
  std::vector<AngularObservation> obs{{40.0, 2}, {250.0, 1}, {251.0, 2}};
  const auto beams = DesignFromObservations(obs, site, 0.0);
  ASSERT_EQ(beams.size(), 1u);
  EXPECT_DOUBLE_EQ(beams[0].azimuth_deg, 250.5);
}

TEST(DynamicDesignTest, SingleVehicle) {
  auto data = OneSiteData(2, 5.0);
  data.samples = {VehicleAt(0, "a", 0, 0, 37.0, 80.0)};
  const Scenario s(data);
  const BeamConfig config = DynamicDesign(s, 0, 0, StrategyParams{});
  ASSERT_EQ(config.beams.size(), 1u);
  EXPECT_NEAR(config.beams[0].azimuth_deg, 37.0, 1e-9);
  EXPECT_EQ(config.step, 0);
}

TEST(DynamicDesignTest, IdenticalVehiclesIdenticalBeams) {
  auto data = OneSiteData(2, 5.0);
  for (int k : {0, 1}) {
    data.samples.push_back(VehicleAt(k, "a", 0, 0, 37.0, 80.0));
    data.samples.push_back(VehicleAt(k, "b", 0, 0, 200.0, 50.0));
  }
  const Scenario s(data);
  EXPECT_EQ(DynamicDesign(s, 0, 0, {}).beams, DynamicDesign(s, 0, 1, {}).beams);
}

TEST(DynamicDesignTest, IgnoresVehiclesBeyondRadius) {
  auto data = OneSiteData(2, 5.0);
  data.samples = {VehicleAt(0, "far", 0, 0, 10.0, 250.0)};
  const Scenario s(data);
  EXPECT_TRUE(DynamicDesign(s, 0, 0, {}).beams.empty());
}

TEST(StaticDesignTest, DiffersFromInstantaneousInTwoPhaseScenario) {
  auto data = OneSiteData(1, 5.0);
  // Long phase with traffic at 60 deg, then a short burst at 300 deg.
  for (int k = 0; k < 10; ++k) {
    data.samples.push_back(VehicleAt(k, "x" + std::to_string(k), 0, 0, 60.0, 100.0));
  }
  for (int k = 10; k < 12; ++k) {
    data.samples.push_back(VehicleAt(k, "y" + std::to_string(k), 0, 0, 300.0, 100.0));
  }
  const Scenario s(data);
  const BeamConfig pooled = StaticDesign(s, 0, {});
  const BeamConfig burst = DynamicDesign(s, 0, 11, {});
  ASSERT_EQ(pooled.beams.size(), 1u);
  ASSERT_EQ(burst.beams.size(), 1u);
  EXPECT_NEAR(pooled.beams[0].azimuth_deg, 60.0, 0.25);
  EXPECT_NEAR(burst.beams[0].azimuth_deg, 300.0, 1e-9);
}

TEST(StaticDesignTest, InvariantUnderVehicleRelabeling) {
  IntersectionSpec spec;
  spec.steps = 120;
  spec.arrival_rate_per_s = 0.2;
  const Scenario base = SynthesizeIntersection(spec).WithBeamLimits(4, 10.0);
  auto data = base.data();
  std::mt19937_64 gen(5);
  std::shuffle(data.samples.begin(), data.samples.end(), gen);
  for (auto& s : data.samples) s.vehicle_id = "z" + s.vehicle_id;
  const Scenario relabeled(data);
  EXPECT_EQ(StaticDesign(base, 0, {}).beams, StaticDesign(relabeled, 0, {}).beams);
}

ScenarioData LightData(int n_beams, std::vector<ApproachState> approaches) {
  auto data = OneSiteData(n_beams, 5.0);
  data.gnbs[0].colocated_light_id = "L";
  data.lights = {MakePhase(0, "L", std::move(approaches))};
  data.light_sites = {{"L", {0, 0}}};
  return data;
}

TEST(TrafficLightDesignTest, RedApproachesFirst) {
  const Scenario s(LightData(2, {{0, LightState::kGreen},
                                 {90, LightState::kRed},
                                 {180, LightState::kGreen},
                                 {270, LightState::kRed}}));
  EXPECT_EQ(Azimuths(TrafficLightDesign(s, 0, 0, {})), (std::vector<double>{90.0, 270.0}));
}

TEST(TrafficLightDesignTest, AllGreenLowestAzimuths) {
  const Scenario s(LightData(2, {{0, LightState::kGreen},
                                 {90, LightState::kGreen},
                                 {180, LightState::kGreen},
                                 {270, LightState::kGreen}}));
  EXPECT_EQ(Azimuths(TrafficLightDesign(s, 0, 0, {})), (std::vector<double>{0.0, 90.0}));
}

TEST(TrafficLightDesignTest, FillsRemainingBeamsYellowThenGreen) {
  const Scenario s(LightData(3, {{0, LightState::kGreen},
                                 {90, LightState::kRed},
                                 {180, LightState::kYellow},
                                 {270, LightState::kRed}}));
  EXPECT_EQ(Azimuths(TrafficLightDesign(s, 0, 0, {})),
            (std::vector<double>{90.0, 180.0, 270.0}));
  const Scenario four(LightData(4, {{0, LightState::kGreen},
                                    {90, LightState::kRed},
                                    {180, LightState::kGreen},
                                    {270, LightState::kRed}}));
  const BeamConfig config = TrafficLightDesign(four, 0, 0, {});
  EXPECT_EQ(Azimuths(config), (std::vector<double>{0.0, 90.0, 180.0, 270.0}));
  for (const Beam& b : config.beams) {
    EXPECT_DOUBLE_EQ(b.width_deg, 5.0);
    EXPECT_DOUBLE_EQ(b.power_w, 0.25);
  }
}

TEST(TrafficLightDesignTest, QueueWeightsRankRedApproaches) {
  const Scenario s(LightData(1, {{0, LightState::kRed},
                                 {90, LightState::kRed},
                                 {180, LightState::kRed}}));
  EXPECT_EQ(Azimuths(TrafficLightDesign(s, 0, 0, {})), (std::vector<double>{0.0}));
  StrategyParams params;
  params.approach_weights["L"] = {{90, 1.0}, {180, 7.0}};
  EXPECT_EQ(Azimuths(TrafficLightDesign(s, 0, 0, params)), (std::vector<double>{180.0}));
}

TEST(TrafficLightDesignTest, SkipsOverlappingApproach) {
  const Scenario s(LightData(2, {{0, LightState::kRed},
                                 {3, LightState::kRed},
                                 {180, LightState::kGreen}}));
  EXPECT_EQ(Azimuths(TrafficLightDesign(s, 0, 0, {})), (std::vector<double>{0.0, 180.0}));
}

TEST(TrafficLightDesignTest, DependsOnlyOnLights) {
  IntersectionSpec spec;
  spec.steps = 90;
  spec.arrival_rate_per_s = 0.3;
  const Scenario s = SynthesizeIntersection(spec);
  const Scenario empty = s.WithoutVehicles();
  for (int k = 0; k < spec.steps; ++k) {
    EXPECT_EQ(TrafficLightDesign(s, 0, k, {}), TrafficLightDesign(empty, 0, k, {}));
  }
}

TEST(TrafficLightDesignTest, NeedsColocatedLight) {
  const Scenario s(OneSiteData(2, 5.0));
  EXPECT_THROW(TrafficLightDesign(s, 0, 0, {}), ConfigError);
}

TEST(BeamElevationTest, Rules) {
  const Scenario s(OneSiteData(2, 5.0));
  StrategyParams params;
  EXPECT_NEAR(BeamElevation(s, s.gnbs()[0], params),
              std::atan2(-8.5, 150.0) * 180.0 / std::acos(-1.0), 1e-12);
  params.elevation_rule = ElevationRule::kFixedDowntilt;
  params.fixed_downtilt_deg = 7.0;
  EXPECT_DOUBLE_EQ(BeamElevation(s, s.gnbs()[0], params), -7.0);
}

TEST(StrategyNamesTest, RoundTrip) {
  for (auto k : {StrategyKind::kStatic, StrategyKind::kDynamic, StrategyKind::kTrafficLight,
                 StrategyKind::kOptimum}) {
    EXPECT_EQ(ParseStrategy(ToString(k)), k);
  }
  EXPECT_EQ(ParseStrategy("TL"), StrategyKind::kTrafficLight);
  EXPECT_THROW(ParseStrategy("random"), ConfigError);
}

TEST(EmittedConfigsTest, AlwaysFeasible) {
  IntersectionSpec spec;
  spec.steps = 100;
  spec.arrival_rate_per_s = 0.3;
  spec.intersections = 2;
  for (auto [n, a] : {std::pair{2, 5.0}, std::pair{4, 15.0}, std::pair{3, 40.0}}) {
    const Scenario s = SynthesizeIntersection(spec).WithBeamLimits(n, a);
    std::vector<BeamConfig> statics;
    for (const auto& site : s.gnbs()) statics.push_back(StaticDesign(s, site.gnb_id, {}));
    for (int k = 0; k < spec.steps; ++k) {
      for (const auto& site : s.gnbs()) {
        for (const BeamConfig& config :
             {statics[static_cast<size_t>(site.gnb_id)], DynamicDesign(s, site.gnb_id, k, {}),
              TrafficLightDesign(s, site.gnb_id, k, {})}) {
          GlobalAssignment g;
          g.step = k;
          g.configs = {config};
          const Verdict v = CheckFeasible(g, s);
          ASSERT_TRUE(v.feasible) << "step " << k << " gNB " << site.gnb_id << " "
                                  << ToString(v.violations.front().kind);
        }
      }
    }
  }
}

TEST(BeamJsonlTest, RoundTripAndErrors) {
  const BeamConfig a{0, 3, {{10.0, -3.2, 5.0, 0.5}, {190.25, -3.2, 5.0, 0.5}}};
  const BeamConfig b{1, 3, {}};
  std::stringstream io;
  WriteBeamConfigJsonl(io, a);
  WriteBeamConfigJsonl(io, b);
  const auto back = ReadBeamConfigJsonl(io);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], a);
  EXPECT_EQ(back[1], b);

  std::istringstream bad("{\"gnb\":0,\"step\":0,\"beams\":[]}\nnot json\n");
  try {
    ReadBeamConfigJsonl(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace mmbeam
