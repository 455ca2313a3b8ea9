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

#include "mmbeam/channel_gain.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <spdlog/spdlog.h>

namespace mmbeam {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

TabulatedRegime TableFor(const LinkRegime& regime) {
  switch (regime.alignment) {
    case Alignment::kFullyAligned:
      return TabulatedRegime::kNlosAligned;
    case Alignment::kPartialTx:
      return TabulatedRegime::kPartialTx;
    case Alignment::kPartialRx:
      return TabulatedRegime::kPartialRx;
    case Alignment::kMisaligned:
      return TabulatedRegime::kMisaligned;
  }
  throw std::logic_error("unhandled alignment");
}

double SampleTruncatedGaussian(const TruncatedGaussian& g, RngStream& rng) {
  const double lower = -g.mean / g.stddev;  // truncation point in z units
  if (lower < 3.0) {
    for (;;) {
      const double z = rng.Normal();
      if (z >= lower) return g.mean + g.stddev * z;
    }
  }
  // Deep tail: Robert (1995) translated-exponential proposal.
  const double rate = 0.5 * (lower + std::sqrt(lower * lower + 4.0));
  for (;;) {
    const double z = lower - std::log(rng.Uniform()) / rate;
    const double accept = std::exp(-0.5 * (z - rate) * (z - rate));
    if (rng.Uniform() <= accept) return g.mean + g.stddev * z;
  }
}

}  // namespace

std::string ToString(Alignment alignment) {
  switch (alignment) {
    case Alignment::kFullyAligned:
      return "fully_aligned";
    case Alignment::kPartialTx:
      return "partial_tx";
    case Alignment::kPartialRx:
      return "partial_rx";
    case Alignment::kMisaligned:
      return "misaligned";
  }
  return "?";
}

std::string ToString(ChannelFamily family) {
  return family == ChannelFamily::k3gpp ? "3gpp" : "nyu";
}

std::string ToString(ElementType element) {
  return element == ElementType::kIso ? "iso" : "3gpp";
}

double Mean(const GainDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const TruncatedGaussian& g) {
            const boost::math::normal_distribution<double> unit;
            const double lower = -g.mean / g.stddev;
            const double tail = boost::math::cdf(boost::math::complement(unit, lower));
            return g.mean + g.stddev * boost::math::pdf(unit, lower) / tail;
          },
          [](const Exponential& e) { return e.mean; },
          [](const LogLogistic& l) {
            if (l.scale >= 1.0) return std::numeric_limits<double>::infinity();
            const double ps = kPi * l.scale;
            return std::exp(l.location) * ps / std::sin(ps);
          },
      },
      dist);
}

double Median(const GainDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const TruncatedGaussian& g) {
            const boost::math::normal_distribution<double> unit;
            const double lower = -g.mean / g.stddev;
            const double tail = boost::math::cdf(boost::math::complement(unit, lower));
            // Half of the surviving mass lies above the median.
            const double z = boost::math::quantile(
                boost::math::complement(unit, 0.5 * tail));
            return g.mean + g.stddev * z;
          },
          [](const Exponential& e) { return e.mean * std::log(2.0); },
          [](const LogLogistic& l) { return std::exp(l.location); },
      },
      dist);
}

Alignment ClassifyAlignment(double beam_dir_deg, double beam_width_deg,
                            double veh_bearing_from_gnb_deg,
                            double veh_beam_dir_deg, double veh_beam_width_deg,
                            double gnb_bearing_from_veh_deg) {
  const bool tx = CircularDistance(beam_dir_deg, veh_bearing_from_gnb_deg) <=
                  beam_width_deg / 2.0;
  const bool rx = CircularDistance(veh_beam_dir_deg, gnb_bearing_from_veh_deg) <=
                  veh_beam_width_deg / 2.0;
  if (tx && rx) return Alignment::kFullyAligned;
  if (tx) return Alignment::kPartialTx;
  if (rx) return Alignment::kPartialRx;
  return Alignment::kMisaligned;
}

double LosProbability(double distance_m, double kappa_m) {
  if (!(distance_m > 0.0)) {
    throw std::invalid_argument("LoS probability needs a positive distance");
  }
  return std::exp(-distance_m / kappa_m);
}

bool DrawLineOfSight(double distance_m, double kappa_m, RngStream& rng) {
  return rng.Uniform() < LosProbability(distance_m, kappa_m);
}

double PathLossDb(double distance_m, bool los, double carrier_ghz) {
  if (distance_m < 1.0) {
    spdlog::warn("path loss distance {} m below 1 m, clamped", distance_m);
    distance_m = 1.0;
  }
  const double slope = los ? 20.0 : 30.0;
  return 32.4 + slope * std::log10(distance_m) + 20.0 * std::log10(carrier_ghz);
}

double PathLoss(double distance_m, bool los, double carrier_ghz) {
  return std::pow(10.0, -PathLossDb(distance_m, los, carrier_ghz) / 10.0);
}

double SectorAttenuation(double delta1_deg) {
  const double ratio = delta1_deg / kSectorElementHpbwDeg;
  return std::pow(10.0, -1.2 * ratio * ratio);
}

double SectorOffsetDeg(double beam_azimuth_deg,
                       std::span<const double> sector_centers_deg) {
  double best = 180.0;
  for (double center : sector_centers_deg) {
    best = std::min(best, CircularDistance(beam_azimuth_deg, center));
  }
  return best;
}

GainDistribution SelectGainDistribution(const GainTables& tables,
                                        ChannelFamily family,
                                        ElementType element,
                                        const LinkRegime& regime, int nt,
                                        int nr, const MisalignmentAngles& mis) {
  if (nt < 1 || nr < 1) throw std::invalid_argument("antenna counts must be >= 1");
  if (mis.delta2 < 0.0) throw std::invalid_argument("delta2 must be >= 0");
  if (element == ElementType::kSector3gpp &&
      (mis.delta1 < 0.0 || mis.delta1 > kSectorWidthDeg / 2.0)) {
    throw std::invalid_argument("delta1 must lie in [0, 60] inside a sector");
  }

  if (regime.los && regime.alignment == Alignment::kFullyAligned) {
    const double product = static_cast<double>(nt) * nr;
    const double sector = element == ElementType::kSector3gpp
                              ? SectorAttenuation(mis.delta1)
                              : 1.0;
    const double d2 = mis.delta2 * mis.delta2;
    if (family == ChannelFamily::k3gpp) {
      const double mu0 = tables.Law(family, element, LawParam::kMu0).Eval(product);
      const double sigma0 = tables.Law(family, element, LawParam::kSigma0).Eval(product);
      const double g_mu = tables.Law(family, element, LawParam::kGammaMu).Eval(product);
      const double g_sigma =
          tables.Law(family, element, LawParam::kGammaSigma).Eval(product);
      return TruncatedGaussian{mu0 * std::exp(-d2 / (g_mu * g_mu)) * sector,
                               sigma0 * std::exp(-d2 / (g_sigma * g_sigma))};
    }
    const double alpha0 = tables.Law(family, element, LawParam::kAlpha0).Eval(product);
    const double g_alpha =
        tables.Law(family, element, LawParam::kGammaAlpha).Eval(product);
    return Exponential{alpha0 * std::exp(-d2 / (g_alpha * g_alpha)) * sector};
  }

  const auto lookup = tables.FindCell(family, element, TableFor(regime), nt, nr);
  if (!lookup.exact) {
    spdlog::warn("no fitted column for Nt={} Nr={}; using Nt={} Nr={}", nt, nr,
                 lookup.cell.nt, lookup.cell.nr);
  }
  return LogLogistic{lookup.cell.location, lookup.cell.scale};
}

double SampleGain(const GainDistribution& dist, RngStream& rng) {
  return std::visit(
      Overloaded{
          [&](const TruncatedGaussian& g) { return SampleTruncatedGaussian(g, rng); },
          [&](const Exponential& e) { return -e.mean * std::log(rng.Uniform()); },
          [&](const LogLogistic& l) {
            const double u = rng.Uniform();
            return std::exp(l.location + l.scale * std::log(u / (1.0 - u)));
          },
      },
      dist);
}

LinkGainSample LinkGain(const LinkGainQuery& query, const GainTables& tables,
                        RngStream& rng) {
  const GainDistribution dist =
      SelectGainDistribution(tables, query.family, query.element,
                             {query.los, query.alignment}, query.nt, query.nr,
                             query.mis);
  LinkGainSample sample;
  sample.attenuation = PathLoss(query.distance_m, query.los, query.carrier_ghz);
  sample.gain = SampleGain(dist, rng);
  sample.channel_gain = sample.attenuation * sample.gain;
  return sample;
}

}  // namespace mmbeam
