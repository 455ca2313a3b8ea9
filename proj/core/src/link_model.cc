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

#include "mmbeam/link_model.h"

#include <cmath>
#include <tuple>

#include "mmbeam/rng.h"

namespace mmbeam {

bool CanonicalLess(const EmittedBeam& a, const EmittedBeam& b) {
  return std::tie(a.gnb_slot, a.beam.azimuth_deg, a.beam.width_deg) <
         std::tie(b.gnb_slot, b.beam.azimuth_deg, b.beam.width_deg);
}

double SinrFromTerms(double signal_w, std::span<const double> interference_w, double noise_w) {
  double denominator = noise_w;
  for (double i : interference_w) denominator += i;
  return signal_w / denominator;
}

StepLinks::StepLinks(const Scenario& scenario, const GainTables& tables, const CqiTable& cqi,
                     std::uint64_t seed, int step)
    : scenario_(&scenario),
      tables_(&tables),
      cqi_(&cqi),
      seed_(seed),
      step_(step),
      gnb_count_(static_cast<int>(scenario.gnbs().size())),
      noise_w_(scenario.physics().link.NoisePowerW()),
      bandwidth_hz_(scenario.physics().link.bandwidth_hz) {
  const auto samples = scenario.VehiclesAt(step);
  vehicles_.assign(samples.begin(), samples.end());
  for (const auto& s : vehicles_) vehicle_index_.push_back(scenario.VehicleIndex(s.vehicle_id));
  const PhysicalConfig& phys = scenario.physics();
  geometry_.resize(static_cast<size_t>(gnb_count_) * vehicles_.size());
  for (int g = 0; g < gnb_count_; ++g) {
    const GnbSite& gs = site(g);
    for (size_t v = 0; v < vehicles_.size(); ++v) {
      const Point3 pos = scenario.VehiclePosition(vehicles_[v]);
      LinkGeometry& geo = geometry_[static_cast<size_t>(g) * vehicles_.size() + v];
      const AnglePair bearing = RelativeBearing(gs.position, pos);
      geo.distance_m = Distance(gs.position, pos);
      geo.azimuth_deg = bearing.azimuth();
      geo.elevation_deg = bearing.elevation();
      geo.back_azimuth_deg = WrapDegrees(bearing.azimuth() + 180.0);
      RngStream rng(seed, {static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(gs.gnb_id),
                           0, vehicle_index_[v], DrawPurpose::kLineOfSight});
      geo.los = DrawLineOfSight(geo.distance_m, phys.los_kappa_m, rng);
      geo.attenuation = PathLoss(geo.distance_m, geo.los, phys.link.carrier_ghz);
      geo.in_range = geo.distance_m <= phys.interference_radius_m;
    }
  }
}

bool StepLinks::Covers(int slot, const Beam& beam, int v) const {
  return CircularDistance(beam.azimuth_deg, geometry(slot, v).azimuth_deg) <=
         0.5 * beam.width_deg;
}

MisalignmentAngles StepLinks::Misalignment(int slot, const Beam& beam, int v) const {
  MisalignmentAngles mis;
  mis.delta2 = std::abs(beam.elevation_deg - geometry(slot, v).elevation_deg);
  if (scenario_->element() == ElementType::kSector3gpp) {
    mis.delta1 = SectorOffsetDeg(beam.azimuth_deg, site(slot).sector_centers);
  }
  return mis;
}

Alignment StepLinks::InterfererAlignment(int serving_slot, int slot, const Beam& beam,
                                         int v) const {
  if (slot == serving_slot) return Alignment::kMisaligned;
  const LinkGeometry& geo = geometry(slot, v);
  return ClassifyAlignment(beam.azimuth_deg, beam.width_deg, geo.azimuth_deg,
                           geometry(serving_slot, v).back_azimuth_deg,
                           scenario_->physics().vehicle_beam_width_deg, geo.back_azimuth_deg);
}

GainDistribution StepLinks::Distribution(int slot, const Beam& beam, int v,
                                         Alignment alignment) const {
  return SelectGainDistribution(*tables_, scenario_->family(), scenario_->element(),
                                {geometry(slot, v).los, alignment},
                                scenario_->nt(site(slot)), scenario_->nr(),
                                Misalignment(slot, beam, v));
}

double StepLinks::ChannelGain(int slot, const Beam& beam, int v, Alignment alignment) const {
  RngStream rng(seed_, {static_cast<std::uint32_t>(step_),
                        static_cast<std::uint32_t>(site(slot).gnb_id),
                        BeamStreamId(beam.azimuth_deg), vehicle_index_[static_cast<size_t>(v)],
                        DrawPurpose::kGain});
  return geometry(slot, v).attenuation * SampleGain(Distribution(slot, beam, v, alignment), rng);
}

double StepLinks::ExpectedServingPower(int slot, const Beam& beam, int v) const {
  return beam.power_w * geometry(slot, v).attenuation *
         Mean(Distribution(slot, beam, v, Alignment::kFullyAligned));
}

double StepLinks::RateFor(double sinr) const { return EffectiveRate(sinr, bandwidth_hz_, *cqi_); }

LinkOutcome StepLinks::Evaluate(const EmittedBeam& serving, std::span<const EmittedBeam> others,
                                int v, const EmittedBeam* coherent_partner) const {
  double signal = serving.beam.power_w *
                  ChannelGain(serving.gnb_slot, serving.beam, v, Alignment::kFullyAligned);
  if (coherent_partner != nullptr) {
    const Alignment a =
        InterfererAlignment(serving.gnb_slot, coherent_partner->gnb_slot, coherent_partner->beam, v);
    const double partner = coherent_partner->beam.power_w *
                           ChannelGain(coherent_partner->gnb_slot, coherent_partner->beam, v, a);
    const double amp = std::sqrt(signal) + std::sqrt(partner);
    signal = amp * amp;
  }
  std::vector<double> terms;
  terms.reserve(others.size());
  for (const EmittedBeam& o : others) {
    if (coherent_partner != nullptr && o.gnb_slot == coherent_partner->gnb_slot &&
        o.beam == coherent_partner->beam) {
      continue;
    }
    if (!geometry(o.gnb_slot, v).in_range) continue;
    const Alignment a = InterfererAlignment(serving.gnb_slot, o.gnb_slot, o.beam, v);
    terms.push_back(o.beam.power_w * ChannelGain(o.gnb_slot, o.beam, v, a));
  }
  LinkOutcome out;
  out.sinr = SinrFromTerms(signal, terms, noise_w_);
  out.rate_bps = RateFor(out.sinr);
  return out;
}

}  // namespace mmbeam
