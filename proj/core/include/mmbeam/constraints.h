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

#ifndef MMBEAM_CONSTRAINTS_H_
#define MMBEAM_CONSTRAINTS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "mmbeam/link_model.h"
#include "mmbeam/scenario.h"
#include "mmbeam/strategies.h"

namespace mmbeam {

// Identifies beam `beam` (index into that gNB's config) of gNB `gnb_id`.
struct BeamRef {
  int gnb_id = 0;
  int beam = 0;

  friend auto operator<=>(const BeamRef&, const BeamRef&) = default;
};

struct ScheduleEntry {
  BeamRef beam;
  std::string vehicle_id;
  double fraction = 0.0;  // sigma(b, k, v)
};

enum class PairingKind { kCoordinated, kBlanking };

// Two beams of different gNBs transmitting jointly (coordinated) or taking
// turns (blanking).
struct BeamPairing {
  BeamRef first;
  BeamRef second;
  PairingKind kind = PairingKind::kCoordinated;
};

struct GlobalAssignment {
  int step = 0;
  std::vector<BeamConfig> configs;  // at most one per gNB
  std::vector<ScheduleEntry> schedule;
  std::vector<BeamPairing> pairings;
};

enum class ConstraintKind {
  kBeamOwnership,  // config for an unknown gNB or a second config for the same gNB
  kBeamCount,      // more beams than N(g)
  kBeamWidth,      // width outside (0, A(g)]
  kNonOverlap,     // two beams of one gNB closer than half their summed widths
  kPowerBudget,    // sum of beam powers above P_tot(g)
  kIdlePower,      // negative power, or power on a beam with zero width
  kPairing,        // beam in more than one pairing, or a malformed pairing
  kScheduleSum,    // fractions of a beam sum above one
  kFractionRange,  // fraction outside [0, 1]
  kCoverage,       // positive fraction for a vehicle outside the beam
  kUnknownReference,
};

std::string ToString(ConstraintKind kind);

struct Violation {
  ConstraintKind kind;
  std::string where;  // identifiers involved
  double slack = 0.0;  // signed margin; negative means violated by that much
};

struct Verdict {
  bool feasible = true;
  std::vector<Violation> violations;
};

// Coverage indicator: the vehicle's bearing lies within half the width.
bool CoversVehicle(const Beam& beam, const GnbSite& site, const Point2& vehicle);

// Checks every constraint of the beam-design problem at the assignment's
// step and reports each violation with its identifiers and slack. Widths of
// exactly zero mark unused beams, which may only carry zero power.
Verdict CheckFeasible(const GlobalAssignment& assignment, const Scenario& scenario);

// Beams with positive width, in canonical order, with their references.
struct ActiveBeams {
  std::vector<EmittedBeam> beams;
  std::vector<BeamRef> refs;
};
ActiveBeams CollectBeams(const GlobalAssignment& assignment, const Scenario& scenario);

// Rate of each vehicle if it were served by each active beam with every
// other active beam interfering, indexed [beam][vehicle slot]. Uncovered
// pairs get 0. A coordinated partner adds to the signal; blanking partners
// stop interfering with each other and share time equally.
std::vector<std::vector<double>> ExclusiveRates(const ActiveBeams& active,
                                                const std::vector<BeamPairing>& pairings,
                                                const StepLinks& links);

// Sum over beams of sigma * R * step duration, in bits. Throws Error when
// the assignment is infeasible.
double ObjectiveValue(const GlobalAssignment& assignment, const StepLinks& links);

// Gives each beam entirely to its best covered vehicle (lowest vehicle id
// on ties). Vehicles with zero rate are never scheduled.
std::vector<ScheduleEntry> BestVehicleSchedule(const GlobalAssignment& assignment,
                                               const StepLinks& links);

void WriteVerdictJsonl(std::ostream& out, int step, const Verdict& verdict);
void WriteAssignmentJsonl(std::ostream& out, const GlobalAssignment& assignment,
                          double objective_bit);

}  // namespace mmbeam

#endif  // MMBEAM_CONSTRAINTS_H_
