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

#include "mmbeam/geometry.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmbeam {

double WrapDegrees(double deg) {
  double wrapped = std::fmod(deg, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  // fmod of a tiny negative number can round up to exactly 360.
  if (wrapped >= 360.0) wrapped -= 360.0;
  return wrapped;
}

double CircularDistance(double a_deg, double b_deg) {
  // |a - b| first: wrapping a negative difference into [0, 360) would round
  // it to the spacing of numbers near 360 and break symmetry.
  const double diff = std::fmod(std::fabs(a_deg - b_deg), 360.0);
  return diff > 180.0 ? 360.0 - diff : diff;
}

double Distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

AnglePair::AnglePair(double azimuth_deg, double elevation_deg)
    : azimuth_(WrapDegrees(azimuth_deg)), elevation_(elevation_deg) {
  if (!(elevation_deg >= -90.0 && elevation_deg <= 90.0)) {
    throw std::invalid_argument("elevation " + std::to_string(elevation_deg) +
                                " deg outside [-90, 90]");
  }
}

void UpaConfig::Validate() const {
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("UPA needs at least one element per dimension");
  }
}

namespace {

ComplexVector PhaseProfile(const UpaConfig& upa, const AnglePair& dir,
                           double scale) {
  upa.Validate();
  const double az = DegToRad(dir.azimuth());
  const double el = DegToRad(dir.elevation());
  const double u = std::cos(el) * std::sin(az);
  const double w = std::sin(el);
  ComplexVector out(static_cast<size_t>(upa.size()));
  for (int i1 = 0; i1 < upa.n1; ++i1) {
    for (int i2 = 0; i2 < upa.n2; ++i2) {
      const double phase = kPi * (i1 * u + i2 * w);
      out[static_cast<size_t>(i1 * upa.n2 + i2)] =
          std::polar(scale, phase);
    }
  }
  return out;
}

}  // namespace

ComplexVector SteeringVector(const UpaConfig& upa, const AnglePair& phi) {
  return PhaseProfile(upa, phi, 1.0 / std::sqrt(static_cast<double>(upa.size())));
}

ComplexVector ArrayResponse(const UpaConfig& upa, const AnglePair& theta) {
  return PhaseProfile(upa, theta, 1.0);
}

ComplexVector ReceiveWeights(const UpaConfig& upa, const AnglePair& phi) {
  return PhaseProfile(upa, phi, 1.0);
}

std::complex<double> EffectiveChannelOracle(std::complex<double> h_path,
                                            const UpaConfig& tx_upa,
                                            const AnglePair& theta_tx,
                                            const UpaConfig& rx_upa,
                                            const AnglePair& theta_rx,
                                            const ComplexVector& v,
                                            const ComplexVector& w) {
  if (v.size() != static_cast<size_t>(tx_upa.size()) ||
      w.size() != static_cast<size_t>(rx_upa.size())) {
    throw std::invalid_argument("beamforming vector size does not match array");
  }
  const ComplexVector a_tx = ArrayResponse(tx_upa, theta_tx);
  const ComplexVector a_rx = ArrayResponse(rx_upa, theta_rx);
  // Form H = h a_rx a_tx^H explicitly, then w^H H v.
  std::complex<double> total = 0.0;
  for (size_t r = 0; r < a_rx.size(); ++r) {
    std::complex<double> row = 0.0;
    for (size_t t = 0; t < a_tx.size(); ++t) {
      const std::complex<double> h_rt = h_path * a_rx[r] * std::conj(a_tx[t]);
      row += h_rt * v[t];
    }
    total += std::conj(w[r]) * row;
  }
  return total;
}

AnglePair RelativeBearing(const Point3& from, const Point3& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  const double dz = to.z - from.z;
  const double horizontal = std::hypot(dx, dy);
  if (horizontal == 0.0 && dz == 0.0) {
    throw std::invalid_argument("bearing between coincident points");
  }
  const double azimuth = horizontal == 0.0 ? 0.0 : RadToDeg(std::atan2(dy, dx));
  return AnglePair(azimuth, RadToDeg(std::atan2(dz, horizontal)));
}

double BearingDeg(const Point2& from, const Point2& to) {
  return WrapDegrees(RadToDeg(std::atan2(to.y - from.y, to.x - from.x)));
}

}  // namespace mmbeam
