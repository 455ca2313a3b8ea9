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

#ifndef MMBEAM_RNG_H_
#define MMBEAM_RNG_H_

#include <array>
#include <cstdint>

namespace mmbeam {

// Philox4x32-10 block function (Salmon et al., SC'11). Pure: the same
// (counter, key) always yields the same four words.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter Philox4x32(PhiloxCounter counter, PhiloxKey key);

// What a stream of draws is used for. Part of the stream identity, so two
// purposes never share numbers.
enum class DrawPurpose : std::uint32_t {
  kLineOfSight = 1,
  kGain = 2,
  kSynthesis = 3,
  kTest = 15,
};

// Identity of one link-scoped stream. Every simulated random quantity is a
// pure function of (seed, StreamId, draw index), so results do not depend on
// evaluation order or on how work is split across threads.
struct StreamId {
  std::uint32_t step = 0;
  std::uint32_t gnb = 0;      // < 2^8
  std::uint32_t beam = 0;     // < 2^20
  std::uint32_t vehicle = 0;
  DrawPurpose purpose = DrawPurpose::kTest;
};

// Stateful cursor over one stream.
class RngStream {
 public:
  // Throws std::out_of_range when an id field exceeds its bit budget.
  RngStream(std::uint64_t seed, const StreamId& id);

  std::uint32_t NextU32();
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double Uniform();
  // Standard normal via Box-Muller; consumes two uniforms per pair.
  double Normal();

  // Philox blocks consumed so far.
  std::uint32_t blocks_used() const { return block_index_; }

 private:
  void Refill();

  PhiloxKey key_;
  PhiloxCounter base_;
  std::uint32_t block_index_ = 0;
  PhiloxCounter buffer_{};
  int buffered_ = 0;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// Millidegree beam identity used to key gain streams. Beams are keyed by
// direction so adding or removing another beam never reshuffles the draws
// of this one.
std::uint32_t BeamStreamId(double azimuth_deg);

}  // namespace mmbeam

#endif  // MMBEAM_RNG_H_
