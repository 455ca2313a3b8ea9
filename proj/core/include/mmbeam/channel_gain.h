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

#ifndef MMBEAM_CHANNEL_GAIN_H_
#define MMBEAM_CHANNEL_GAIN_H_

#include <span>
#include <string>
#include <variant>

#include "mmbeam/gain_tables.h"
#include "mmbeam/geometry.h"
#include "mmbeam/rng.h"

namespace mmbeam {

enum class Alignment { kFullyAligned, kPartialTx, kPartialRx, kMisaligned };

struct LinkRegime {
  bool los = true;
  Alignment alignment = Alignment::kFullyAligned;

  friend bool operator==(const LinkRegime&, const LinkRegime&) = default;
};

std::string ToString(Alignment alignment);
std::string ToString(ChannelFamily family);
std::string ToString(ElementType element);

// Beam-to-sector-center azimuth offset (delta1, 3GPP sector elements only)
// and elevation misalignment (delta2), in degrees.
struct MisalignmentAngles {
  double delta1 = 0.0;
  double delta2 = 0.0;
};

// Gaussian truncated at zero. `mean`/`stddev` are those of the parent normal.
struct TruncatedGaussian {
  double mean = 0.0;
  double stddev = 1.0;
};

struct Exponential {
  double mean = 1.0;
};

// ln(G) follows a logistic law with the given location and scale.
struct LogLogistic {
  double location = 0.0;
  double scale = 1.0;
};

using GainDistribution = std::variant<TruncatedGaussian, Exponential, LogLogistic>;

// Closed-form mean of the distribution as sampled (infinite for a
// log-logistic with scale >= 1).
double Mean(const GainDistribution& dist);
double Median(const GainDistribution& dist);

// Alignment class of a (beam, vehicle) pair: an end is aligned when the other
// end lies within its half-power half-width.
Alignment ClassifyAlignment(double beam_dir_deg, double beam_width_deg,
                            double veh_bearing_from_gnb_deg,
                            double veh_beam_dir_deg, double veh_beam_width_deg,
                            double gnb_bearing_from_veh_deg);

// exp(-distance / kappa). Throws std::invalid_argument for distance <= 0.
double LosProbability(double distance_m, double kappa_m = 50.0);

// One Bernoulli draw against LosProbability from `rng`.
bool DrawLineOfSight(double distance_m, double kappa_m, RngStream& rng);

// Free-space-anchored path loss in dB: 32.4 + 20 log10(fc) plus 20 log10(d)
// under LoS or 30 log10(d) otherwise. Distances below 1 m are clamped to 1 m
// with a warning.
double PathLossDb(double distance_m, bool los, double carrier_ghz);
// Linear attenuation 10^(-PL/10).
double PathLoss(double distance_m, bool los, double carrier_ghz);

// 10^(-1.2 (delta1 / 65)^2).
double SectorAttenuation(double delta1_deg);

// Smallest azimuth offset between a beam and any of the sector centers.
double SectorOffsetDeg(double beam_azimuth_deg,
                       std::span<const double> sector_centers_deg);

// Fitted gain distribution for one link. Nonexact table columns are
// substituted by the nearest Nt*Nr with a warning. Throws
// std::invalid_argument for invalid misalignment angles or antenna counts.
GainDistribution SelectGainDistribution(const GainTables& tables,
                                        ChannelFamily family,
                                        ElementType element,
                                        const LinkRegime& regime, int nt,
                                        int nr, const MisalignmentAngles& mis);

// Draws G >= 0. Truncated Gaussians are sampled by rejection; log-logistic by
// inverse CDF exp(m + s ln(u / (1 - u))).
double SampleGain(const GainDistribution& dist, RngStream& rng);

// Everything needed to realize |h|^2 = a * G for one link.
struct LinkGainQuery {
  double distance_m = 1.0;
  bool los = true;
  Alignment alignment = Alignment::kFullyAligned;
  MisalignmentAngles mis;
  ChannelFamily family = ChannelFamily::k3gpp;
  ElementType element = ElementType::kIso;
  int nt = 256;
  int nr = 64;
  double carrier_ghz = 76.0;
};

struct LinkGainSample {
  double attenuation = 0.0;  // a
  double gain = 0.0;         // G
  double channel_gain = 0.0; // a * G
};

LinkGainSample LinkGain(const LinkGainQuery& query, const GainTables& tables,
                        RngStream& rng);

}  // namespace mmbeam

#endif  // MMBEAM_CHANNEL_GAIN_H_
