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

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "mmbeam/error.h"
#include "mmbeam/rng.h"

namespace mmbeam {
namespace {

enum class Leg { kInbound, kCrossing, kOutbound };

struct Car {
  std::string id;
  int from_arm = 0;
  int to_arm = 0;
  Leg leg = Leg::kInbound;
  double along = 0.0;  // inbound: distance to stop line; crossing: progress; outbound: r
  Point2 position;
  double speed = 0.0;
  double heading = 0.0;
};

struct Arm {
  double azimuth = 0.0;
  Point2 dir;     // unit vector from the center outward
  Point2 normal;  // dir rotated +90 deg
};

int PoissonDraw(double lambda, RngStream& rng) {
  if (lambda <= 0.0) return 0;
  const double u = rng.Uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  int k = 0;
  while (u > cdf && k < 100) {
    ++k;
    p *= lambda / k;
    cdf += p;
  }
  return k;
}

class IntersectionSim {
 public:
  IntersectionSim(const IntersectionSpec& spec, int index, Point2 center)
      : spec_(spec), index_(index), center_(center), queues_(static_cast<size_t>(spec.arms)),
        backlog_(static_cast<size_t>(spec.arms), 0) {
    const std::vector<double> azimuths =
        spec.arms == 4 ? std::vector<double>{0, 90, 180, 270} : std::vector<double>{0, 90, 180};
    for (double az : azimuths) {
      const double rad = DegToRad(az);
      arms_.push_back({az, {std::cos(rad), std::sin(rad)}, {-std::sin(rad), std::cos(rad)}});
    }
  }

  std::string light_id() const { return "L" + std::to_string(index_); }
  Point2 center() const { return center_; }

  LightState StateOf(int arm, int step) const {
    const bool group_a = std::lround(arms_[static_cast<size_t>(arm)].azimuth) % 180 == 0;
    switch (spec_.light_program) {
      case LightProgram::kAllRed:
        return LightState::kRed;
      case LightProgram::kHoldFirstArmRed:
        if (arm == 0) return LightState::kRed;
        [[fallthrough]];
      case LightProgram::kAlternating: {
        const int period = std::max(2, spec_.light_period_steps);
        const int half = period / 2;
        // Later intersections run a quarter period behind.
        const int phase = ((step + index_ * period / 4) % period + period) % period;
        const bool a_green = phase < half;
        const int into_green = a_green ? phase : phase - half;
        const int green_len = a_green ? half : period - half;
        if (group_a != a_green) return LightState::kRed;
        return into_green >= green_len - spec_.yellow_steps ? LightState::kYellow
                                                            : LightState::kGreen;
      }
    }
    return LightState::kRed;
  }

  void Step(int step, std::vector<VehicleSample>* out) {
    const double dt = spec_.step_duration_s;
    const double travel = spec_.max_speed_mps * dt;
    const double entry = spec_.arm_length_m - spec_.stop_line_m;

    // Inbound lanes, leader first.
    for (size_t a = 0; a < queues_.size(); ++a) {
      const bool may_cross = StateOf(static_cast<int>(a), step) == LightState::kGreen;
      double limit = may_cross ? -1e300 : 0.0;
      std::deque<Car>& lane = queues_[a];
      while (!lane.empty()) {
        Car& car = lane.front();
        const double next = std::max(limit, car.along - travel);
        if (next >= 0.0) break;
        // Enters the box with the remaining travel as crossing progress.
        car.leg = Leg::kCrossing;
        car.along = -next;
        crossing_.push_back(std::move(car));
        lane.pop_front();
      }
      for (size_t i = 0; i < lane.size(); ++i) {
        Car& car = lane[i];
        if (i > 0) limit = lane[i - 1].along + spec_.min_gap_m;
        const double next = std::max(limit, car.along - travel);
        car.speed = std::max(0.0, car.along - next) / dt;
        car.along = std::max(next, 0.0);
      }
    }

    // Cars inside the box or leaving.
    std::vector<Car> still_crossing;
    for (Car& car : crossing_) {
      const double length = CrossingLength(car);
      if (car.along >= length) {
        car.leg = Leg::kOutbound;
        car.along = spec_.stop_line_m + (car.along - length);
        outbound_.push_back(std::move(car));
      } else {
        car.speed = spec_.max_speed_mps;
        still_crossing.push_back(std::move(car));
      }
    }
    crossing_.clear();
    for (Car& car : still_crossing) crossing_.push_back(std::move(car));

    std::vector<Car> kept;
    for (Car& car : outbound_) {
      if (car.along > spec_.arm_length_m) continue;
      kept.push_back(std::move(car));
    }
    outbound_ = std::move(kept);

    // Arrivals at the far end of each inbound lane.
    for (size_t a = 0; a < queues_.size(); ++a) {
      RngStream rng(spec_.seed, {static_cast<std::uint32_t>(step),
                                 static_cast<std::uint32_t>(index_),
                                 static_cast<std::uint32_t>(a), 0, DrawPurpose::kSynthesis});
      backlog_[a] += PoissonDraw(spec_.arrival_rate_per_s * dt, rng);
      std::deque<Car>& lane = queues_[a];
      if (backlog_[a] > 0 && (lane.empty() || lane.back().along <= entry - spec_.min_gap_m)) {
        --backlog_[a];
        Car car;
        car.id = "i" + std::to_string(index_) + "v" + std::to_string(serial_++);
        car.from_arm = static_cast<int>(a);
        const int others = spec_.arms - 1;
        const int pick = static_cast<int>(rng.Uniform() * others);
        car.to_arm = (car.from_arm + 1 + std::min(pick, others - 1)) % spec_.arms;
        car.along = entry;
        car.speed = spec_.max_speed_mps;
        lane.push_back(std::move(car));
      }
    }

    Emit(step, out);
  }

  // Advance crossing and outbound cars one step; called before Step's lane
  // update so every car moves once per step.
  void AdvanceFreeFlow() {
    const double travel = spec_.max_speed_mps * spec_.step_duration_s;
    for (Car& car : crossing_) car.along += travel;
    for (Car& car : outbound_) {
      car.along += travel;
      car.speed = spec_.max_speed_mps;
    }
  }

 private:
  Point2 EntryPoint(int arm) const {
    const Arm& a = arms_[static_cast<size_t>(arm)];
    return {center_.x + spec_.stop_line_m * a.dir.x + spec_.lane_offset_m * a.normal.x,
            center_.y + spec_.stop_line_m * a.dir.y + spec_.lane_offset_m * a.normal.y};
  }
  Point2 ExitPoint(int arm) const {
    const Arm& a = arms_[static_cast<size_t>(arm)];
    return {center_.x + spec_.stop_line_m * a.dir.x - spec_.lane_offset_m * a.normal.x,
            center_.y + spec_.stop_line_m * a.dir.y - spec_.lane_offset_m * a.normal.y};
  }
  double CrossingLength(const Car& car) const {
    const Point2 p = EntryPoint(car.from_arm);
    const Point2 q = ExitPoint(car.to_arm);
    return std::hypot(q.x - p.x, q.y - p.y);
  }

  void Emit(int step, std::vector<VehicleSample>* out) {
    auto push = [&](const Car& car, Point2 pos, double heading) {
      out->push_back({step, car.id, pos, car.speed, WrapDegrees(heading)});
    };
    for (size_t a = 0; a < queues_.size(); ++a) {
      const Arm& arm = arms_[a];
      for (const Car& car : queues_[a]) {
        const double r = spec_.stop_line_m + car.along;
        push(car,
             {center_.x + r * arm.dir.x + spec_.lane_offset_m * arm.normal.x,
              center_.y + r * arm.dir.y + spec_.lane_offset_m * arm.normal.y},
             arm.azimuth + 180.0);
      }
    }
    for (const Car& car : crossing_) {
      const Point2 p = EntryPoint(car.from_arm);
      const Point2 q = ExitPoint(car.to_arm);
      const double f = std::clamp(car.along / CrossingLength(car), 0.0, 1.0);
      push(car, {p.x + f * (q.x - p.x), p.y + f * (q.y - p.y)},
           RadToDeg(std::atan2(q.y - p.y, q.x - p.x)));
    }
    for (const Car& car : outbound_) {
      const Arm& arm = arms_[static_cast<size_t>(car.to_arm)];
      push(car,
           {center_.x + car.along * arm.dir.x - spec_.lane_offset_m * arm.normal.x,
            center_.y + car.along * arm.dir.y - spec_.lane_offset_m * arm.normal.y},
           arm.azimuth);
    }
  }

  const IntersectionSpec& spec_;
  int index_;
  Point2 center_;
  std::vector<Arm> arms_;
  std::vector<std::deque<Car>> queues_;
  std::vector<int> backlog_;
  std::vector<Car> crossing_;
  std::vector<Car> outbound_;
  long serial_ = 0;
};

}  // namespace

Scenario SynthesizeIntersection(const IntersectionSpec& spec) {
  if (spec.arms != 3 && spec.arms != 4) throw ConfigError("arms must be 3 or 4");
  if (spec.intersections != 1 && spec.intersections != 2) {
    throw ConfigError("intersections must be 1 or 2");
  }
  if (!(spec.arrival_rate_per_s >= 0.0)) throw ConfigError("arrival rate must be >= 0");
  if (spec.steps < 1) throw ConfigError("steps must be >= 1");
  if (!(spec.arm_length_m > spec.stop_line_m)) {
    throw ConfigError("arm length must exceed the stop-line distance");
  }

  std::vector<IntersectionSim> sims;
  for (int i = 0; i < spec.intersections; ++i) {
    sims.emplace_back(spec, i, Point2{i * spec.spacing_m, 0.0});
  }

  ScenarioData data;
  data.step_duration_s = spec.step_duration_s;
  data.family = spec.family;
  data.element = spec.element;
  const double margin = spec.arm_length_m + spec.lane_offset_m + 1.0;
  data.bounding_box = BoundingBox{-margin, -margin,
                                  (spec.intersections - 1) * spec.spacing_m + margin, margin};

  for (int k = 0; k < spec.steps; ++k) {
    for (auto& sim : sims) {
      sim.AdvanceFreeFlow();
      sim.Step(k, &data.samples);
      LightPhase phase{k, sim.light_id(), {}};
      const std::vector<double> azimuths =
          spec.arms == 4 ? std::vector<double>{0, 90, 180, 270} : std::vector<double>{0, 90, 180};
      for (int a = 0; a < spec.arms; ++a) {
        phase.approaches.push_back(
            {static_cast<int>(azimuths[static_cast<size_t>(a)]), sim.StateOf(a, k)});
      }
      data.lights.push_back(std::move(phase));
    }
  }

  for (int i = 0; i < spec.intersections; ++i) {
    const auto& sim = sims[static_cast<size_t>(i)];
    data.light_sites.push_back({sim.light_id(), sim.center()});
    GnbSite site;
    site.gnb_id = i;
    site.position = {sim.center().x, sim.center().y, spec.gnb_height_m};
    site.n_beams_max = spec.n_beams;
    site.max_width_deg = spec.max_width_deg;
    site.p_tot_w = spec.p_tot_w;
    site.upa = spec.gnb_upa;
    site.colocated_light_id = sim.light_id();
    data.gnbs.push_back(site);
  }
  return Scenario(std::move(data));
}

}  // namespace mmbeam
