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

#ifndef MMBEAM_GEOMETRY_H_
#define MMBEAM_GEOMETRY_H_

#include <complex>
#include <numbers>
#include <vector>

namespace mmbeam {

inline constexpr double kPi = std::numbers::pi;

// Half-power beamwidth of one 3GPP sector element, and the sector it serves.
inline constexpr double kSectorElementHpbwDeg = 65.0;
inline constexpr double kSectorWidthDeg = 120.0;

inline constexpr double DegToRad(double deg) { return deg * kPi / 180.0; }
inline constexpr double RadToDeg(double rad) { return rad * 180.0 / kPi; }

// Maps any angle to [0, 360).
double WrapDegrees(double deg);

// Shortest angular separation on the circle, in [0, 180].
double CircularDistance(double a_deg, double b_deg);

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

double Distance(const Point3& a, const Point3& b);

// Azimuth/elevation in degrees. Azimuth is counterclockwise from east (+x)
// and always stored in [0, 360); elevation is measured from the horizontal
// plane and must lie in [-90, 90].
class AnglePair {
 public:
  AnglePair() = default;
  // Throws std::invalid_argument when elevation is outside [-90, 90].
  AnglePair(double azimuth_deg, double elevation_deg);

  double azimuth() const { return azimuth_; }
  double elevation() const { return elevation_; }

 private:
  double azimuth_ = 0.0;
  double elevation_ = 0.0;
};

enum class ElementType { kIso, kSector3gpp };

// Uniform planar array of n1 x n2 half-wavelength-spaced elements.
struct UpaConfig {
  int n1 = 1;
  int n2 = 1;
  ElementType element = ElementType::kIso;
  AnglePair orientation;

  int size() const { return n1 * n2; }
  // Throws std::invalid_argument unless n1, n2 >= 1.
  void Validate() const;
};

using ComplexVector = std::vector<std::complex<double>>;

// Element n = n1 * N2 + n2 (0-based n1, n2) of every array vector below
// carries the phase pi * (n1 cos(phi2) sin(phi1) + n2 sin(phi2)), with phi
// the direction relative to the array orientation.

// Transmit beamforming vector, normalized to unit Euclidean norm.
ComplexVector SteeringVector(const UpaConfig& upa, const AnglePair& phi);

// Array response toward a path direction: unit-modulus entries, ||a||^2 = N.
ComplexVector ArrayResponse(const UpaConfig& upa, const AnglePair& theta);

// Analog receive weights: unit-modulus entries, ||w||^2 = N. Pointing the
// receiver back at the transmitter is the caller's job.
ComplexVector ReceiveWeights(const UpaConfig& upa, const AnglePair& phi);

// Exact effective scalar channel w^H (h a_rx(theta_rx) a_tx(theta_tx)^H) v
// for a single-path channel. Test-only reference for the aligned-gain
// ceiling; throws std::invalid_argument on dimension mismatch.
std::complex<double> EffectiveChannelOracle(std::complex<double> h_path,
                                            const UpaConfig& tx_upa,
                                            const AnglePair& theta_tx,
                                            const UpaConfig& rx_upa,
                                            const AnglePair& theta_rx,
                                            const ComplexVector& v,
                                            const ComplexVector& w);

// Direction of `to` as seen from `from`. Throws std::invalid_argument when
// the points coincide.
AnglePair RelativeBearing(const Point3& from, const Point3& to);

// Horizontal-plane azimuth of `to` seen from `from`, in [0, 360).
double BearingDeg(const Point2& from, const Point2& to);

}  // namespace mmbeam

#endif  // MMBEAM_GEOMETRY_H_
