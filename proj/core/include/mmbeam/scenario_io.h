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

#ifndef MMBEAM_SCENARIO_IO_H_
#define MMBEAM_SCENARIO_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmbeam/scenario.h"
#include "mmbeam/synthesis.h"

namespace mmbeam {

// Mobility CSV: optional "# mmbeam-mobility v1" line, then a header naming at
// least t,veh_id,x,y,speed,heading (extra columns are ignored). `t` is the
// step index; SUMO floating-car data maps as t = timestep@time / step
// duration, veh_id = vehicle@id, x/y/speed as-is, heading = 90 - angle.
// Rows must be non-decreasing in t. Returns samples sorted by (t, veh_id).
// Throws ParseError with the offending line number.
std::vector<VehicleSample> ParseMobility(std::istream& in);
void WriteMobility(std::ostream& out, const std::vector<VehicleSample>& samples);

// Lights CSV: optional "# mmbeam-lights v1" line, header
// t,light_id,approach_azimuth,state with state in {RED, YELLOW, GREEN}.
// Azimuths are rounded to whole degrees. Every light must list every one of
// its approaches at every step of the file's step range.
std::vector<LightPhase> ParseLights(std::istream& in);
void WriteLights(std::ostream& out, const std::vector<LightPhase>& phases);

// Scenario descriptor (JSON, "format": "mmbeam-scenario v1"). Relative CSV
// paths resolve against the descriptor's directory. Throws ConfigError or
// ParseError.
Scenario LoadScenario(const std::filesystem::path& descriptor);

// Writes descriptor.json, mobility.csv and lights.csv into `dir`.
void SaveScenario(const Scenario& scenario, const std::filesystem::path& dir);

// Synthesis parameters from a JSON object whose keys mirror the
// IntersectionSpec fields (gnb_upa as [n1, n2], channel and element as in
// the descriptor, light_program as alternating, all_red or
// hold_first_arm_red). Unknown keys are rejected with ConfigError.
IntersectionSpec IntersectionSpecFromJson(const std::string& text);
LightProgram LightProgramFromName(const std::string& name);
// "3gpp" or "nyu"; "iso" or "3gpp". Throw ConfigError otherwise.
ChannelFamily ParseChannelFamily(const std::string& name);
ElementType ParseElementType(const std::string& name);

}  // namespace mmbeam

#endif  // MMBEAM_SCENARIO_IO_H_
