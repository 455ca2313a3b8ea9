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

#include "mmbeam/scenario_io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include <json.hpp>

#include "mmbeam/channel_gain.h"
#include "mmbeam/error.h"
#include "text_format.h"

namespace mmbeam {
namespace {

using nlohmann::json;

constexpr const char* kMobilityVersion = "# mmbeam-mobility v1";
constexpr const char* kLightsVersion = "# mmbeam-lights v1";
constexpr const char* kScenarioFormat = "mmbeam-scenario v1";

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, std::size_t line, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ParseError(std::string("bad ") + what + " '" + s + "'", line);
  }
  return value;
}

int ParseStep(const std::string& s, std::size_t line) {
  const double t = ParseDouble(s, line, "time");
  const double rounded = std::round(t);
  if (std::abs(t - rounded) > 1e-9 || std::abs(rounded) > 1e9) {
    throw ParseError("time '" + s + "' is not a whole step index", line);
  }
  return static_cast<int>(rounded);
}

using internal::FormatDouble;

// Reads the version line (if any) and the header; returns column positions
// of `required`. `version` must match when present.
struct CsvReader {
  std::istream& in;
  std::size_t line_no = 0;
  std::vector<std::string> header;

  bool NextRow(std::vector<std::string>* fields) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (Trim(raw).empty() || raw[0] == '#') continue;
      *fields = SplitCsv(raw);
      return true;
    }
    return false;
  }
};

std::map<std::string, size_t> ReadHeader(CsvReader& reader, const char* version,
                                         const std::vector<std::string>& required,
                                         bool* empty) {
  std::string raw;
  std::vector<std::string> fields;
  *empty = false;
  while (std::getline(reader.in, raw)) {
    ++reader.line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.rfind("# mmbeam-", 0) == 0) {
      if (raw != version) throw ParseError("unsupported format line '" + raw + "'", reader.line_no);
      continue;
    }
    if (Trim(raw).empty() || raw[0] == '#') continue;
    fields = SplitCsv(raw);
    break;
  }
  if (fields.empty()) {
    *empty = true;
    return {};
  }
  std::map<std::string, size_t> columns;
  for (size_t i = 0; i < fields.size(); ++i) columns.emplace(fields[i], i);
  for (const auto& name : required) {
    if (!columns.contains(name)) {
      throw ParseError("header lacks column '" + name + "'", reader.line_no);
    }
  }
  reader.header = fields;
  return columns;
}

LightState ParseState(std::string token, std::size_t line) {
  std::transform(token.begin(), token.end(), token.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (token == "RED") return LightState::kRed;
  if (token == "YELLOW") return LightState::kYellow;
  if (token == "GREEN") return LightState::kGreen;
  throw ParseError("unknown light state '" + token + "'", line);
}

ChannelFamily FamilyFromJson(const std::string& s) {
  if (s == "3gpp") return ChannelFamily::k3gpp;
  if (s == "nyu") return ChannelFamily::kNyu;
  throw ConfigError("unknown channel family '" + s + "'");
}

ElementType ElementFromJson(const std::string& s) {
  if (s == "iso") return ElementType::kIso;
  if (s == "3gpp") return ElementType::kSector3gpp;
  throw ConfigError("unknown element type '" + s + "'");
}

UpaConfig UpaFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("upa must be [n1, n2]");
  return UpaConfig{j[0].get<int>(), j[1].get<int>(), ElementType::kIso, {}};
}

GnbSite GnbFromJson(const json& j) {
  GnbSite site;
  site.gnb_id = j.value("id", 0);
  if (j.contains("position")) {
    const auto& p = j.at("position");
    if (!p.is_array() || p.size() != 3) throw ConfigError("gNB position must be [x, y, z]");
    site.position = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
  }
  site.n_beams_max = j.value("n_beams_max", site.n_beams_max);
  site.p_tot_w = j.value("p_tot_w", site.p_tot_w);
  site.max_width_deg = j.value("max_width_deg", site.max_width_deg);
  if (j.contains("upa")) site.upa = UpaFromJson(j.at("upa"));
  if (j.contains("sector_centers")) {
    site.sector_centers = j.at("sector_centers").get<std::vector<double>>();
  }
  if (j.contains("light")) site.colocated_light_id = j.at("light").get<std::string>();
  return site;
}

}  // namespace

std::vector<VehicleSample> ParseMobility(std::istream& in) {
  CsvReader reader{in, 0, {}};
  bool empty = false;
  const auto columns = ReadHeader(reader, kMobilityVersion,
                                  {"t", "veh_id", "x", "y", "speed", "heading"}, &empty);
  std::vector<VehicleSample> samples;
  if (empty) return samples;
  const size_t c_t = columns.at("t"), c_id = columns.at("veh_id"), c_x = columns.at("x"),
               c_y = columns.at("y"), c_speed = columns.at("speed"),
               c_heading = columns.at("heading");
  std::set<std::pair<int, std::string>> seen;
  std::vector<std::string> f;
  int last_step = std::numeric_limits<int>::min();
  while (reader.NextRow(&f)) {
    const std::size_t line = reader.line_no;
    if (f.size() != reader.header.size()) {
      throw ParseError("expected " + std::to_string(reader.header.size()) + " fields, got " +
                           std::to_string(f.size()),
                       line);
    }
    VehicleSample s;
    s.step = ParseStep(f[c_t], line);
    if (s.step < last_step) throw ParseError("time goes backwards", line);
    last_step = s.step;
    s.vehicle_id = f[c_id];
    if (s.vehicle_id.empty()) throw ParseError("empty vehicle id", line);
    s.position = {ParseDouble(f[c_x], line, "x"), ParseDouble(f[c_y], line, "y")};
    s.speed = ParseDouble(f[c_speed], line, "speed");
    s.heading = ParseDouble(f[c_heading], line, "heading");
    if (!seen.emplace(s.step, s.vehicle_id).second) {
      throw ParseError("duplicate sample for vehicle '" + s.vehicle_id + "' at t=" +
                           std::to_string(s.step),
                       line);
    }
    samples.push_back(std::move(s));
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const VehicleSample& a, const VehicleSample& b) {
                     return std::tie(a.step, a.vehicle_id) < std::tie(b.step, b.vehicle_id);
                   });
  return samples;
}

void WriteMobility(std::ostream& out, const std::vector<VehicleSample>& samples) {
  out << kMobilityVersion << "\n" << "t,veh_id,x,y,speed,heading\n";
  std::vector<const VehicleSample*> sorted;
  for (const auto& s : samples) sorted.push_back(&s);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::tie(a->step, a->vehicle_id) < std::tie(b->step, b->vehicle_id);
  });
  for (const auto* s : sorted) {
    out << s->step << ',' << s->vehicle_id << ',' << FormatDouble(s->position.x) << ','
        << FormatDouble(s->position.y) << ',' << FormatDouble(s->speed) << ','
        << FormatDouble(s->heading) << '\n';
  }
}

std::vector<LightPhase> ParseLights(std::istream& in) {
  CsvReader reader{in, 0, {}};
  bool empty = false;
  const auto columns = ReadHeader(reader, kLightsVersion,
                                  {"t", "light_id", "approach_azimuth", "state"}, &empty);
  if (empty) return {};
  const size_t c_t = columns.at("t"), c_id = columns.at("light_id"),
               c_az = columns.at("approach_azimuth"), c_state = columns.at("state");

  std::map<std::pair<std::string, int>, std::map<int, LightState>> table;
  std::map<std::string, std::set<int>> approaches;
  int t_min = std::numeric_limits<int>::max();
  int t_max = std::numeric_limits<int>::min();
  std::vector<std::string> f;
  while (reader.NextRow(&f)) {
    const std::size_t line = reader.line_no;
    if (f.size() != reader.header.size()) {
      throw ParseError("expected " + std::to_string(reader.header.size()) + " fields, got " +
                           std::to_string(f.size()),
                       line);
    }
    const int step = ParseStep(f[c_t], line);
    const std::string& light = f[c_id];
    if (light.empty()) throw ParseError("empty light id", line);
    const int azimuth =
        static_cast<int>(std::lround(WrapDegrees(ParseDouble(f[c_az], line, "azimuth")))) % 360;
    const LightState state = ParseState(f[c_state], line);
    if (!table[{light, step}].emplace(azimuth, state).second) {
      throw ParseError("duplicate approach " + std::to_string(azimuth) + " of light '" +
                           light + "' at t=" + std::to_string(step),
                       line);
    }
    approaches[light].insert(azimuth);
    t_min = std::min(t_min, step);
    t_max = std::max(t_max, step);
  }

  std::vector<LightPhase> phases;
  for (int t = t_min; t <= t_max && !approaches.empty(); ++t) {
    for (const auto& [light, expected] : approaches) {
      const auto it = table.find({light, t});
      if (it == table.end()) {
        throw ParseError("light '" + light + "' has no phase at t=" + std::to_string(t), 0);
      }
      LightPhase phase{t, light, {}};
      for (int azimuth : expected) {
        const auto s = it->second.find(azimuth);
        if (s == it->second.end()) {
          throw ParseError("light '" + light + "' misses approach " + std::to_string(azimuth) +
                               " at t=" + std::to_string(t),
                           0);
        }
        phase.approaches.push_back({azimuth, s->second});
      }
      phases.push_back(std::move(phase));
    }
  }
  return phases;
}

void WriteLights(std::ostream& out, const std::vector<LightPhase>& phases) {
  out << kLightsVersion << "\n" << "t,light_id,approach_azimuth,state\n";
  std::vector<const LightPhase*> sorted;
  for (const auto& p : phases) sorted.push_back(&p);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::tie(a->step, a->light_id) < std::tie(b->step, b->light_id);
  });
  for (const auto* p : sorted) {
    std::vector<ApproachState> approaches = p->approaches;
    std::sort(approaches.begin(), approaches.end(),
              [](const auto& a, const auto& b) { return a.azimuth_deg < b.azimuth_deg; });
    for (const auto& a : approaches) {
      out << p->step << ',' << p->light_id << ',' << a.azimuth_deg << ',' << ToString(a.state)
          << '\n';
    }
  }
}

Scenario LoadScenario(const std::filesystem::path& descriptor) {
  std::ifstream in(descriptor);
  if (!in) throw ConfigError("cannot open scenario descriptor " + descriptor.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("scenario descriptor: " + std::string(e.what()));
  }
  const auto base = descriptor.parent_path();
  try {
    if (j.value("format", std::string()) != kScenarioFormat) {
      throw ConfigError(std::string("scenario descriptor must declare format '") +
                        kScenarioFormat + "'");
    }
    ScenarioData data;
    data.step_duration_s = j.value("step_duration_s", 1.0);
    data.family = FamilyFromJson(j.value("channel", std::string("3gpp")));
    data.element = ElementFromJson(j.value("element", std::string("iso")));
    if (j.contains("vehicle")) {
      const auto& v = j.at("vehicle");
      data.vehicle_antenna_height_m = v.value("antenna_height_m", 1.5);
      if (v.contains("upa")) data.vehicle_upa = UpaFromJson(v.at("upa"));
      data.physics.vehicle_beam_width_deg = v.value("beam_width_deg", 13.0);
    }
    if (j.contains("link_budget")) {
      const auto& l = j.at("link_budget");
      data.physics.link.bandwidth_hz = l.value("bandwidth_hz", data.physics.link.bandwidth_hz);
      data.physics.link.carrier_ghz = l.value("carrier_ghz", data.physics.link.carrier_ghz);
      data.physics.link.noise_figure_db =
          l.value("noise_figure_db", data.physics.link.noise_figure_db);
      data.physics.link.thermal_density_dbm_hz =
          l.value("thermal_density_dbm_hz", data.physics.link.thermal_density_dbm_hz);
    }
    if (j.contains("channel_model")) {
      const auto& c = j.at("channel_model");
      data.physics.los_kappa_m = c.value("los_kappa_m", data.physics.los_kappa_m);
      data.physics.interference_radius_m =
          c.value("interference_radius_m", data.physics.interference_radius_m);
    }
    if (j.contains("bounding_box")) {
      const auto b = j.at("bounding_box").get<std::vector<double>>();
      if (b.size() != 4) throw ConfigError("bounding_box must be [xmin, ymin, xmax, ymax]");
      data.bounding_box = BoundingBox{b[0], b[1], b[2], b[3]};
    }
    if (j.contains("mobility")) {
      const auto path = base / j.at("mobility").get<std::string>();
      std::ifstream csv(path);
      if (!csv) throw ConfigError("cannot open mobility trace " + path.string());
      data.samples = ParseMobility(csv);
    }
    if (j.contains("lights")) {
      const auto path = base / j.at("lights").get<std::string>();
      std::ifstream csv(path);
      if (!csv) throw ConfigError("cannot open lights file " + path.string());
      data.lights = ParseLights(csv);
    }
    for (const auto& l : j.value("light_sites", json::array())) {
      const auto p = l.at("position").get<std::vector<double>>();
      if (p.size() != 2) throw ConfigError("light position must be [x, y]");
      data.light_sites.push_back({l.at("id").get<std::string>(), {p[0], p[1]}});
    }
    for (const auto& g : j.value("gnbs", json::array())) data.gnbs.push_back(GnbFromJson(g));
    if (j.contains("colocate_top_lights")) {
      const auto& c = j.at("colocate_top_lights");
      const GnbSite templ = GnbFromJson(c.value("template", json::object()));
      auto sites = ColocateGnbsAtDenseLights(data.light_sites, data.samples,
                                             c.value("count", 1), c.value("radius_m", 100.0),
                                             templ, c.value("gnb_height_m", 10.0));
      for (auto& s : sites) {
        s.gnb_id += static_cast<int>(data.gnbs.size());
        data.gnbs.push_back(s);
      }
    }
    return Scenario(std::move(data));
  } catch (const json::exception& e) {
    throw ConfigError("scenario descriptor: " + std::string(e.what()));
  }
}

void SaveScenario(const Scenario& scenario, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const ScenarioData& d = scenario.data();
  json j;
  j["format"] = kScenarioFormat;
  j["step_duration_s"] = d.step_duration_s;
  j["channel"] = ToString(d.family);
  j["element"] = d.element == ElementType::kIso ? "iso" : "3gpp";
  j["vehicle"] = {{"antenna_height_m", d.vehicle_antenna_height_m},
                  {"upa", {d.vehicle_upa.n1, d.vehicle_upa.n2}},
                  {"beam_width_deg", d.physics.vehicle_beam_width_deg}};
  j["link_budget"] = {{"bandwidth_hz", d.physics.link.bandwidth_hz},
                      {"carrier_ghz", d.physics.link.carrier_ghz},
                      {"noise_figure_db", d.physics.link.noise_figure_db},
                      {"thermal_density_dbm_hz", d.physics.link.thermal_density_dbm_hz}};
  j["channel_model"] = {{"los_kappa_m", d.physics.los_kappa_m},
                        {"interference_radius_m", d.physics.interference_radius_m}};
  const BoundingBox& b = scenario.bounding_box();
  j["bounding_box"] = {b.xmin, b.ymin, b.xmax, b.ymax};
  j["mobility"] = "mobility.csv";
  j["lights"] = "lights.csv";
  j["light_sites"] = json::array();
  for (const auto& l : d.light_sites) {
    j["light_sites"].push_back({{"id", l.light_id}, {"position", {l.position.x, l.position.y}}});
  }
  j["gnbs"] = json::array();
  for (const auto& g : d.gnbs) {
    json site = {{"id", g.gnb_id},
                 {"position", {g.position.x, g.position.y, g.position.z}},
                 {"n_beams_max", g.n_beams_max},
                 {"p_tot_w", g.p_tot_w},
                 {"max_width_deg", g.max_width_deg},
                 {"upa", {g.upa.n1, g.upa.n2}}};
    if (!g.sector_centers.empty()) site["sector_centers"] = g.sector_centers;
    if (g.colocated_light_id) site["light"] = *g.colocated_light_id;
    j["gnbs"].push_back(site);
  }
  std::ofstream(dir / "descriptor.json") << j.dump(2) << "\n";
  std::ofstream mobility(dir / "mobility.csv");
  WriteMobility(mobility, d.samples);
  std::ofstream lights(dir / "lights.csv");
  WriteLights(lights, d.lights);
}

}  // namespace mmbeam

namespace mmbeam {

IntersectionSpec IntersectionSpecFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("synthesis spec: " + std::string(e.what()));
  }
  if (!j.is_object()) throw ConfigError("synthesis spec must be a JSON object");
  IntersectionSpec s;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "arms") s.arms = value.get<int>();
      else if (key == "arm_length_m") s.arm_length_m = value.get<double>();
      else if (key == "arrival_rate_per_s") s.arrival_rate_per_s = value.get<double>();
      else if (key == "light_period_steps") s.light_period_steps = value.get<int>();
      else if (key == "seed") s.seed = value.get<std::uint64_t>();
      else if (key == "steps") s.steps = value.get<int>();
      else if (key == "intersections") s.intersections = value.get<int>();
      else if (key == "spacing_m") s.spacing_m = value.get<double>();
      else if (key == "light_program") s.light_program = LightProgramFromName(value.get<std::string>());
      else if (key == "yellow_steps") s.yellow_steps = value.get<int>();
      else if (key == "stop_line_m") s.stop_line_m = value.get<double>();
      else if (key == "lane_offset_m") s.lane_offset_m = value.get<double>();
      else if (key == "max_speed_mps") s.max_speed_mps = value.get<double>();
      else if (key == "min_gap_m") s.min_gap_m = value.get<double>();
      else if (key == "step_duration_s") s.step_duration_s = value.get<double>();
      else if (key == "n_beams") s.n_beams = value.get<int>();
      else if (key == "max_width_deg") s.max_width_deg = value.get<double>();
      else if (key == "p_tot_w") s.p_tot_w = value.get<double>();
      else if (key == "gnb_height_m") s.gnb_height_m = value.get<double>();
      else if (key == "gnb_upa") s.gnb_upa = UpaFromJson(value);
      else if (key == "channel") s.family = FamilyFromJson(value.get<std::string>());
      else if (key == "element") s.element = ElementFromJson(value.get<std::string>());
      else throw ConfigError("unknown synthesis key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError("synthesis spec: " + std::string(e.what()));
  }
  return s;
}

ChannelFamily ParseChannelFamily(const std::string& name) { return FamilyFromJson(name); }
ElementType ParseElementType(const std::string& name) { return ElementFromJson(name); }

LightProgram LightProgramFromName(const std::string& name) {
  if (name == "alternating") return LightProgram::kAlternating;
  if (name == "all_red") return LightProgram::kAllRed;
  if (name == "hold_first_arm_red") return LightProgram::kHoldFirstArmRed;
  throw ConfigError("unknown light program '" + name + "'");
}

}  // namespace mmbeam
