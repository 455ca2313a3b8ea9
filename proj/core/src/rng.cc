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

#include "mmbeam/rng.h"

#include <cmath>
#include <stdexcept>

#include "mmbeam/geometry.h"

namespace mmbeam {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void MulHiLo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                    std::uint32_t* lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  *hi = static_cast<std::uint32_t>(product >> 32);
  *lo = static_cast<std::uint32_t>(product);
}

}  // namespace

PhiloxCounter Philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kPhiloxM0, ctr[0], &hi0, &lo0);
    MulHiLo(kPhiloxM1, ctr[2], &hi1, &lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t seed, const StreamId& id) {
  if (id.gnb >= (1u << 8) || id.beam >= (1u << 20) ||
      static_cast<std::uint32_t>(id.purpose) >= (1u << 4)) {
    throw std::out_of_range("stream id field exceeds its bit budget");
  }
  key_ = {static_cast<std::uint32_t>(seed),
          static_cast<std::uint32_t>(seed >> 32)};
  // Word 0 is the block counter within the stream.
  base_ = {0u, id.step, id.vehicle,
           (static_cast<std::uint32_t>(id.purpose) << 28) | (id.gnb << 20) |
               id.beam};
}

void RngStream::Refill() {
  PhiloxCounter ctr = base_;
  ctr[0] = block_index_++;
  buffer_ = Philox4x32(ctr, key_);
  buffered_ = 4;
}

std::uint32_t RngStream::NextU32() {
  if (buffered_ == 0) Refill();
  return buffer_[static_cast<size_t>(4 - buffered_--)];
}

double RngStream::Uniform() {
  const std::uint64_t hi = NextU32() >> 5;  // 27 bits
  const std::uint64_t lo = NextU32() >> 6;  // 26 bits
  const std::uint64_t bits = (hi << 26) | lo;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * kPi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

std::uint32_t BeamStreamId(double azimuth_deg) {
  const auto milli =
      static_cast<std::uint32_t>(std::llround(WrapDegrees(azimuth_deg) * 1000.0));
  return milli % 360000u;
}

}  // namespace mmbeam
