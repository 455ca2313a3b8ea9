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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "mmbeam/clustering.h"
#include "mmbeam/error.h"
#include "text_format.h"

namespace mmbeam {
namespace {

using nlohmann::json;

bool OverlapsAny(const std::vector<Beam>& chosen, double azimuth, double width) {
  for (const Beam& b : chosen) {
    if (CircularDistance(b.azimuth_deg, azimuth) < 0.5 * (b.width_deg + width)) return true;
  }
  return false;
}

void SortByAzimuth(std::vector<Beam>* beams) {
  std::sort(beams->begin(), beams->end(),
            [](const Beam& a, const Beam& b) { return a.azimuth_deg < b.azimuth_deg; });
}

}  // namespace

std::string ToString(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kStatic:
      return "static";
    case StrategyKind::kDynamic:
      return "dynamic";
    case StrategyKind::kTrafficLight:
      return "tl";
    case StrategyKind::kOptimum:
      return "optimum";
  }
  return "?";
}

StrategyKind ParseStrategy(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "static") return StrategyKind::kStatic;
  if (lower == "dynamic") return StrategyKind::kDynamic;
  if (lower == "tl" || lower == "traffic_light") return StrategyKind::kTrafficLight;
  if (lower == "optimum") return StrategyKind::kOptimum;
  throw ConfigError("unknown strategy '" + name + "'");
}

double BeamElevation(const Scenario& scenario, const GnbSite& site,
                     const StrategyParams& params) {
  if (params.elevation_rule == ElevationRule::kFixedDowntilt) {
    return -params.fixed_downtilt_deg;
  }
  const double ground = params.far_aim_fraction * params.observation_radius_m;
  return RadToDeg(std::atan2(scenario.vehicle_height_m() - site.position.z, ground));
}

double PerBeamPower(const GnbSite& site) { return site.p_tot_w / site.n_beams_max; }

std::vector<AngularObservation> ObserveStep(const Scenario& scenario, const GnbSite& site,
                                            int step, const StrategyParams& params) {
  std::vector<AngularObservation> out;
  const Point2 origin{site.position.x, site.position.y};
  for (const VehicleSample& s : scenario.VehiclesAt(step)) {
    const double d = std::hypot(s.position.x - origin.x, s.position.y - origin.y);
    if (d > params.observation_radius_m || d == 0.0) continue;
    out.push_back({BearingDeg(origin, s.position), 1});
  }
  // Merge exact duplicates only.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.azimuth_deg < b.azimuth_deg;
  });
  std::vector<AngularObservation> merged;
  for (const auto& o : out) {
    if (!merged.empty() && merged.back().azimuth_deg == o.azimuth_deg) {
      merged.back().weight += o.weight;
    } else {
      merged.push_back(o);
    }
  }
  return merged;
}

std::vector<AngularObservation> ObserveAllSteps(const Scenario& scenario,
                                                const GnbSite& site,
                                                const StrategyParams& params) {
  std::map<double, int> pooled;
  for (int k = scenario.first_step(); k <= scenario.last_step(); ++k) {
    for (const auto& o : ObserveStep(scenario, site, k, params)) {
      double az = o.azimuth_deg;
      if (params.static_quantum_deg > 0.0) {
        az = WrapDegrees(std::round(az / params.static_quantum_deg) *
                         params.static_quantum_deg);
      }
      pooled[az] += o.weight;
    }
  }
  std::vector<AngularObservation> out;
  for (const auto& [az, w] : pooled) out.push_back({az, w});
  return out;
}

std::vector<Beam> DesignFromObservations(std::span<const AngularObservation> observations,
                                         const GnbSite& site, double elevation_deg) {
  if (observations.empty()) return {};
  std::vector<double> azimuths;
  azimuths.reserve(observations.size());
  for (const auto& o : observations) azimuths.push_back(o.azimuth_deg);
  const double width = site.max_width_deg;
  struct Candidate {
    long weight;
    double direction;
  };
  std::vector<Candidate> candidates;
  for (const Cluster& c : CompleteLinkageCluster(azimuths, width)) {
    long weight = 0;
    for (int i : c) weight += observations[static_cast<size_t>(i)].weight;
    candidates.push_back({weight, ClusterDirection(azimuths, c)});
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.direction < b.direction;
  });
  std::vector<Beam> beams;
  for (const auto& c : candidates) {
    if (static_cast<int>(beams.size()) >= site.n_beams_max) break;
    if (OverlapsAny(beams, c.direction, width)) continue;
    beams.push_back({c.direction, elevation_deg, width, PerBeamPower(site)});
  }
  SortByAzimuth(&beams);
  return beams;
}

BeamConfig StaticDesign(const Scenario& scenario, int gnb_id, const StrategyParams& params) {
  const GnbSite& site = scenario.gnb(gnb_id);
  const auto observations = ObserveAllSteps(scenario, site, params);
  if (observations.empty()) spdlog::info("gNB {} observes no vehicles; no beams", gnb_id);
  return {gnb_id, scenario.first_step(),
          DesignFromObservations(observations, site, BeamElevation(scenario, site, params))};
}

BeamConfig DynamicDesign(const Scenario& scenario, int gnb_id, int step,
                         const StrategyParams& params) {
  const GnbSite& site = scenario.gnb(gnb_id);
  const auto observations = ObserveStep(scenario, site, step, params);
  return {gnb_id, step,
          DesignFromObservations(observations, site, BeamElevation(scenario, site, params))};
}

BeamConfig TrafficLightDesign(const Scenario& scenario, int gnb_id, int step,
                              const StrategyParams& params) {
  const GnbSite& site = scenario.gnb(gnb_id);
  if (!site.colocated_light_id) {
    throw ConfigError("gNB " + std::to_string(gnb_id) + " has no colocated light");
  }
  const std::string& light = *site.colocated_light_id;
  const LightPhase* phase = scenario.Phase(step, light);
  BeamConfig config{gnb_id, step, {}};
  if (phase == nullptr) return config;

  const auto weights_it = params.approach_weights.find(light);
  auto weight_of = [&](int az) {
    if (weights_it == params.approach_weights.end()) return 0.0;
    const auto w = weights_it->second.find(az);
    return w == weights_it->second.end() ? 0.0 : w->second;
  };
  const double elevation = BeamElevation(scenario, site, params);
  const double width = site.max_width_deg;
  for (LightState state : {LightState::kRed, LightState::kYellow, LightState::kGreen}) {
    std::vector<int> group;
    for (const auto& a : phase->approaches) {
      if (a.state == state) group.push_back(a.azimuth_deg);
    }
    std::stable_sort(group.begin(), group.end(), [&](int a, int b) {
      const double wa = weight_of(a), wb = weight_of(b);
      if (wa != wb) return wa > wb;
      return a < b;
    });
    for (int az : group) {
      if (static_cast<int>(config.beams.size()) >= site.n_beams_max) break;
      if (OverlapsAny(config.beams, az, width)) continue;
      config.beams.push_back({static_cast<double>(az), elevation, width, PerBeamPower(site)});
    }
  }
  SortByAzimuth(&config.beams);
  return config;
}

void WriteBeamConfigJsonl(std::ostream& out, const BeamConfig& config) {
  using internal::FormatDouble;
  out << "{\"gnb\":" << config.gnb_id << ",\"step\":" << config.step << ",\"beams\":[";
  for (size_t i = 0; i < config.beams.size(); ++i) {
    const Beam& b = config.beams[i];
    if (i > 0) out << ',';
    out << "{\"azimuth_deg\":" << FormatDouble(b.azimuth_deg)
        << ",\"elevation_deg\":" << FormatDouble(b.elevation_deg)
        << ",\"width_deg\":" << FormatDouble(b.width_deg)
        << ",\"power_w\":" << FormatDouble(b.power_w) << '}';
  }
  out << "]}\n";
}

std::vector<BeamConfig> ReadBeamConfigJsonl(std::istream& in) {
  std::vector<BeamConfig> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      BeamConfig c;
      c.gnb_id = j.at("gnb").get<int>();
      c.step = j.at("step").get<int>();
      for (const auto& b : j.at("beams")) {
        c.beams.push_back({b.at("azimuth_deg").get<double>(), b.at("elevation_deg").get<double>(),
                           b.at("width_deg").get<double>(), b.at("power_w").get<double>()});
      }
      out.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad beam config: ") + e.what(), line_no);
    }
  }
  return out;
}

}  // namespace mmbeam
