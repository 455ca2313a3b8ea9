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
#include <complex>
#include <random>

#include <gtest/gtest.h>

namespace mmbeam {
namespace {

// Independent phase evaluation: separates the azimuth and elevation terms
// and sums with long double.
std::complex<long double> OracleEntry(int n2, int index, long double az_deg,
                                      long double el_deg) {
  const long double pi = std::acos(-1.0L);
  const long double az = az_deg * pi / 180.0L;
  const long double el = el_deg * pi / 180.0L;
  const int i1 = index / n2;
  const int i2 = index % n2;
  const long double phase = pi * (i1 * std::cos(el) * std::sin(az) + i2 * std::sin(el));
  return {std::cos(phase), std::sin(phase)};
}

TEST(SteeringVectorTest, SingleElementIsOne) {
  const UpaConfig upa{1, 1};
  for (double az : {0.0, 33.0, 271.5}) {
    const auto v = SteeringVector(upa, AnglePair(az, -12.0));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NEAR(v[0].real(), 1.0, 1e-15);
    EXPECT_NEAR(v[0].imag(), 0.0, 1e-15);
  }
}

TEST(SteeringVectorTest, BoresightEntriesAreQuarterFor16) {
  const auto v = SteeringVector(UpaConfig{4, 4}, AnglePair(0.0, 0.0));
  for (const auto& x : v) {
    EXPECT_DOUBLE_EQ(x.real(), 0.25);
    EXPECT_DOUBLE_EQ(x.imag(), 0.0);
  }
}

TEST(SteeringVectorTest, UnitNormAgainstHighPrecisionSum) {
  const UpaConfig upa{16, 16};
  const auto v = SteeringVector(upa, AnglePair(30.0, 5.0));
  long double norm2 = 0.0L;
  for (int i = 0; i < upa.size(); ++i) {
    const auto ref = OracleEntry(upa.n2, i, 30.0L, 5.0L) / 16.0L;
    norm2 += std::norm(ref);
    EXPECT_NEAR(v[static_cast<size_t>(i)].real(), static_cast<double>(ref.real()), 1e-12);
    EXPECT_NEAR(v[static_cast<size_t>(i)].imag(), static_cast<double>(ref.imag()), 1e-12);
  }
  double direct = 0.0;
  for (const auto& x : v) direct += std::norm(x);
  EXPECT_NEAR(direct, 1.0, 1e-12);
  EXPECT_NEAR(static_cast<double>(norm2), 1.0, 1e-15);
}

TEST(ArrayResponseTest, BoresightIsAllOnes) {
  for (const auto& x : ArrayResponse(UpaConfig{8, 8}, AnglePair(0.0, 0.0))) {
    EXPECT_DOUBLE_EQ(x.real(), 1.0);
    EXPECT_DOUBLE_EQ(x.imag(), 0.0);
  }
}

TEST(ArrayResponseTest, MatchedInnerProductIsN) {
  const UpaConfig upa{8, 8};
  const AnglePair theta(47.0, -8.0);
  const auto a = ArrayResponse(upa, theta);
  const auto v = SteeringVector(upa, theta);
  std::complex<double> inner = 0.0;
  for (size_t i = 0; i < a.size(); ++i) inner += std::conj(a[i]) * std::sqrt(64.0) * v[i];
  EXPECT_NEAR(inner.real(), 64.0, 1e-10);
  EXPECT_NEAR(inner.imag(), 0.0, 1e-10);
}

TEST(ArrayResponseTest, UnitModulusForRandomAngles) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> az(0.0, 360.0);
  std::uniform_real_distribution<double> el(-90.0, 90.0);
  const UpaConfig upa{8, 8};
  for (int trial = 0; trial < 100; ++trial) {
    double norm2 = 0.0;
    for (const auto& x : ArrayResponse(upa, AnglePair(az(gen), el(gen)))) {
      EXPECT_NEAR(std::abs(x), 1.0, 1e-12);
      norm2 += std::norm(x);
    }
    EXPECT_NEAR(norm2, 64.0, 1e-9);
  }
}

TEST(ReceiveWeightsTest, BoresightAndNorm) {
  for (const auto& x : ReceiveWeights(UpaConfig{4, 4}, AnglePair(0.0, 0.0))) {
    EXPECT_DOUBLE_EQ(x.real(), 1.0);
  }
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> az(0.0, 360.0);
  std::uniform_real_distribution<double> el(-60.0, 60.0);
  const UpaConfig upa{8, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const AnglePair phi(az(gen), el(gen));
    const auto w = ReceiveWeights(upa, phi);
    const auto v = SteeringVector(upa, phi);
    double norm2 = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      norm2 += std::norm(w[i]);
      EXPECT_NEAR(std::abs(w[i] - v[i] * 4.0), 0.0, 1e-12);
    }
    EXPECT_NEAR(norm2, 16.0, 1e-10);
  }
}

TEST(EffectiveChannelTest, FullyAlignedGain) {
  for (auto [nt, nr] : {std::pair{64, 16}, std::pair{64, 64}}) {
    const UpaConfig tx{8, nt / 8};
    const UpaConfig rx{4, nr / 4};
    const AnglePair t(20.0, -3.0);
    const AnglePair r(200.0, 3.0);
    const auto h = EffectiveChannelOracle(1.0, tx, t, rx, r, SteeringVector(tx, t),
                                          ReceiveWeights(rx, r));
    const double expected = static_cast<double>(nr) * nr * nt;
    EXPECT_NEAR(std::norm(h) / expected, 1.0, 1e-9);
  }
}

TEST(EffectiveChannelTest, ZeroPathGivesZero) {
  const UpaConfig upa{4, 4};
  const AnglePair t(10.0, 0.0);
  const auto h = EffectiveChannelOracle(0.0, upa, t, upa, t, SteeringVector(upa, t),
                                        ReceiveWeights(upa, t));
  EXPECT_EQ(std::norm(h), 0.0);
}

TEST(EffectiveChannelTest, OrthogonalCombinerGivesZero) {
  const UpaConfig tx{4, 4};
  const UpaConfig rx{4, 1};
  const AnglePair t(0.0, 0.0);
  const AnglePair r(30.0, 0.0);
  auto a = ArrayResponse(rx, r);
  // w = a with a sign flip on the second half is orthogonal to a only when
  // the halves carry equal energy, which holds for unit-modulus entries.
  ComplexVector w(a.size());
  for (size_t i = 0; i < a.size(); ++i) w[i] = i < a.size() / 2 ? a[i] : -a[i];
  const auto h = EffectiveChannelOracle(1.0, tx, t, rx, r, SteeringVector(tx, t), w);
  EXPECT_NEAR(std::abs(h), 0.0, 1e-10);
}

TEST(EffectiveChannelTest, SizeMismatchThrows) {
  const UpaConfig upa{2, 2};
  const AnglePair t(0.0, 0.0);
  EXPECT_THROW(EffectiveChannelOracle(1.0, upa, t, upa, t, ComplexVector(3), ComplexVector(4)),
               std::invalid_argument);
}

TEST(RelativeBearingTest, HandTrigonometry) {
  const AnglePair b = RelativeBearing({0, 0, 10}, {100, 0, 1.5});
  EXPECT_NEAR(b.azimuth(), 0.0, 1e-12);
  EXPECT_NEAR(b.elevation(), std::atan2(-8.5, 100.0) * 180.0 / std::acos(-1.0), 1e-12);
  EXPECT_NEAR(b.elevation(), -4.858, 1e-3);
}

TEST(RelativeBearingTest, DueNorth) {
  const AnglePair b = RelativeBearing({0, 0, 1.5}, {0, 40, 1.5});
  EXPECT_NEAR(b.azimuth(), 90.0, 1e-12);
  EXPECT_NEAR(b.elevation(), 0.0, 1e-12);
}

TEST(RelativeBearingTest, Antisymmetry) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> c(-500.0, 500.0);
  std::uniform_real_distribution<double> h(0.0, 30.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Point3 a{c(gen), c(gen), h(gen)};
    const Point3 b{c(gen), c(gen), h(gen)};
    const AnglePair ab = RelativeBearing(a, b);
    const AnglePair ba = RelativeBearing(b, a);
    EXPECT_NEAR(CircularDistance(ba.azimuth(), ab.azimuth() + 180.0), 0.0, 1e-9);
    EXPECT_NEAR(ba.elevation(), -ab.elevation(), 1e-9);
  }
}

TEST(RelativeBearingTest, CoincidentPointsThrow) {
  EXPECT_THROW(RelativeBearing({1, 2, 3}, {1, 2, 3}), std::invalid_argument);
}

TEST(AnglePairTest, AzimuthWrapsElevationChecked) {
  EXPECT_DOUBLE_EQ(AnglePair(-90.0, 0.0).azimuth(), 270.0);
  EXPECT_DOUBLE_EQ(AnglePair(720.0, 0.0).azimuth(), 0.0);
  EXPECT_THROW(AnglePair(0.0, 90.5), std::invalid_argument);
  EXPECT_THROW(AnglePair(0.0, std::nan("")), std::invalid_argument);
}

TEST(CircularDistanceTest, Wraparound) {
  EXPECT_DOUBLE_EQ(CircularDistance(359.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(CircularDistance(0.0, 180.0), 180.0);
  EXPECT_DOUBLE_EQ(CircularDistance(-10.0, 10.0), 20.0);
}

TEST(CircularDistanceTest, SymmetricAndExactForNearbyAngles) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> az(0.0, 360.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = az(gen);
    const double b = az(gen);
    ASSERT_EQ(CircularDistance(a, b), CircularDistance(b, a));
    if (std::fabs(a - b) <= 180.0) ASSERT_EQ(CircularDistance(a, b), std::fabs(a - b));
  }
}

}  // namespace
}  // namespace mmbeam
