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

#ifndef MMBEAM_OPTIMUM_H_
#define MMBEAM_OPTIMUM_H_

#include <cstdint>
#include <vector>

#include "mmbeam/constraints.h"
#include "mmbeam/link_model.h"
#include "mmbeam/strategies.h"

namespace mmbeam {

struct OptimumOptions {
  double grid_step_deg = 5.0;
  // Allowed beam widths; empty means {A(g)} per gNB. Widths above A(g) are
  // ignored for that gNB.
  std::vector<double> width_choices;
  bool enable_comp_abs = false;
  int threads = 1;
  StrategyParams strategy;  // supplies the beam elevation rule
};

// Largest instance the exhaustive search accepts.
inline constexpr int kOptimumMaxGnbs = 2;
inline constexpr int kOptimumMaxBeams = 4;

struct OptimumResult {
  GlobalAssignment assignment;
  double objective_bit = 0.0;
  std::int64_t nodes = 0;  // search nodes visited
};

// Exhaustive search over beam sets on a direction grid, every beam at
// P_tot / N, each beam given entirely to its best covered vehicle. Only
// directions that reach some vehicle with a positive rate are tried; any
// other beam adds nothing and can only interfere. Branch and bound prunes
// with the interference-free rates of the beams still to be chosen.
//
// Ties go to the lexicographically smallest beam list ordered by (gNB,
// azimuth, width), so the answer does not depend on the thread count.
// Throws ConfigError above kOptimumMaxGnbs gNBs or kOptimumMaxBeams beams.
OptimumResult BruteForceOptimum(const StepLinks& links, const OptimumOptions& options);

}  // namespace mmbeam

#endif  // MMBEAM_OPTIMUM_H_
