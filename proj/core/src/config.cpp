/*
 * Copyright (c) 2026, The mcs authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mcs/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "json.hpp"
#include "mcs/io.hpp"
#include "mcs/metrics_text.hpp"

namespace mcs {

using json = nlohmann::ordered_json;

namespace {

std::string hex_rgb(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

Rgb parse_rgb(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t.front() == '#') t.erase(0, 1);
  if (t.size() != 6 || t.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw InvalidInput("colour must be RRGGBB, got '" + s + "'");
  }
  const unsigned long v = std::stoul(t, nullptr, 16);
  return {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
          static_cast<std::uint8_t>(v)};
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* where) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw InvalidInput(std::string("unknown key '") + k + "' in " + where);
  }
}

template <class Enum, class Parse>
Enum parse_enum(const json& j, Parse parse, const char* what) {
  const auto s = j.get<std::string>();
  const auto v = parse(s);
  if (!v) throw InvalidInput(std::string("invalid ") + what + " '" + s + "'");
  return *v;
}

}  // namespace

void GenerationConfig::validate() const {
  if (materials.empty()) throw InvalidInput("at least one material is required");
  if (std::set<Material>(materials.begin(), materials.end()).size() != materials.size()) {
    throw InvalidInput("materials must be distinct");
  }
  if (radius_indices.empty()) throw InvalidInput("at least one radius index is required");
  if (std::set<int>(radius_indices.begin(), radius_indices.end()).size() != radius_indices.size()) {
    throw InvalidInput("radius indices must be distinct");
  }
  for (int k : radius_indices) {
    if (k < 6 || k > 10) throw InvalidInput("radius index must lie in 6..10, got " + std::to_string(k));
  }
  if (rotations < 0) throw InvalidInput("rotation count must be non-negative");
  if (!std::isfinite(angle)) throw InvalidInput("rotation angle must be finite");
  if (!(baseline.cell.wurtzite_u > 0.0 && baseline.cell.wurtzite_u < 1.0)) {
    throw InvalidInput("wurtzite u must lie in (0, 1)");
  }
  render.validate();
  if (!(annotation.coordination_factor > 0.0)) throw InvalidInput("coordination factor must be positive");
  if (annotation.with_rdf) {
    if (!(annotation.rdf_dr > 0.0)) throw InvalidInput("RDF bin width must be positive");
    if (!(annotation.rdf_max_factor > 0.0)) throw InvalidInput("RDF range factor must be positive");
  }
  if (jobs < 0) throw InvalidInput("jobs must be non-negative");
}

std::string GenerationConfig::to_json() const {
  json j;
  json mats = json::array();
  for (Material m : materials) mats.push_back(std::string(name(m)));
  j["materials"] = mats;
  j["radius_indices"] = radius_indices;
  j["rotations"] = rotations;
  j["angle"] = angle;
  j["baseline"] = {{"radius_reference", std::string(name(baseline.radius_reference))},
                   {"center", std::string(name(baseline.center))},
                   {"multiplicity", std::string(name(baseline.multiplicity))},
                   {"seed", baseline.seed},
                   {"wurtzite_u", baseline.cell.wurtzite_u}};
  json styles = json::object();
  for (Species s : kAllSpecies) {
    const ElementStyle& st = render.style(s);
    styles[std::string(symbol(s))] = {{"color", hex_rgb(st.color)}, {"radius", st.covalent_radius}};
  }
  j["render"] = {{"mode", std::string(name(render.mode))},
                 {"focal_length", render.focal_length},
                 {"camera_distance", render.camera_distance},
                 {"width", render.width},
                 {"height", render.height},
                 {"margin", render.margin},
                 {"background", hex_rgb(render.background)},
                 {"styles", styles}};
  j["annotation"] = {{"coordination_factor", annotation.coordination_factor},
                     {"rdf", annotation.with_rdf},
                     {"rdf_dr", annotation.rdf_dr},
                     {"rdf_max_factor", annotation.rdf_max_factor}};
  return j.dump(2) + "\n";
}

std::string GenerationConfig::hash() const { return sha256_hex(to_json()); }

GenerationConfig GenerationConfig::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config: top level must be an object");
  GenerationConfig c;
  try {
    reject_unknown(j, {"materials", "radius_indices", "rotations", "angle", "baseline", "render",
                       "annotation", "output_root", "jobs"},
                   "config");
    if (j.contains("materials")) {
      c.materials.clear();
      for (const auto& m : j.at("materials")) {
        c.materials.push_back(parse_enum<Material>(m, [](std::string_view s) { return parse_material(s); },
                                                   "material"));
      }
    }
    if (j.contains("radius_indices")) c.radius_indices = j.at("radius_indices").get<std::vector<int>>();
    if (j.contains("rotations")) c.rotations = j.at("rotations").get<int>();
    if (j.contains("angle")) c.angle = j.at("angle").get<double>();
    if (j.contains("baseline")) {
      const json& b = j.at("baseline");
      reject_unknown(b, {"radius_reference", "center", "multiplicity", "seed", "wurtzite_u"}, "baseline");
      if (b.contains("radius_reference")) {
        c.baseline.radius_reference =
            parse_enum<RadiusReference>(b.at("radius_reference"), parse_radius_reference, "radius reference");
      }
      if (b.contains("center")) {
        c.baseline.center = parse_enum<CarveCenter>(b.at("center"), parse_carve_center, "carve center");
      }
      if (b.contains("multiplicity")) {
        c.baseline.multiplicity =
            parse_enum<MultiplicityMode>(b.at("multiplicity"), parse_multiplicity_mode, "multiplicity");
      }
      if (b.contains("seed")) c.baseline.seed = b.at("seed").get<std::uint64_t>();
      if (b.contains("wurtzite_u")) c.baseline.cell.wurtzite_u = b.at("wurtzite_u").get<double>();
    }
    if (j.contains("render")) {
      const json& r = j.at("render");
      reject_unknown(r, {"mode", "focal_length", "camera_distance", "width", "height", "margin",
                         "background", "styles"},
                     "render");
      if (r.contains("mode")) c.render.mode = parse_enum<ProjectionMode>(r.at("mode"), parse_projection_mode, "projection");
      if (r.contains("focal_length")) c.render.focal_length = r.at("focal_length").get<double>();
      if (r.contains("camera_distance")) c.render.camera_distance = r.at("camera_distance").get<double>();
      if (r.contains("width")) c.render.width = r.at("width").get<int>();
      if (r.contains("height")) c.render.height = r.at("height").get<int>();
      if (r.contains("margin")) c.render.margin = r.at("margin").get<double>();
      if (r.contains("background")) c.render.background = parse_rgb(r.at("background").get<std::string>());
      if (r.contains("styles")) {
        for (const auto& [sym, st] : r.at("styles").items()) {
          const auto s = parse_species(sym);
          if (!s) throw InvalidInput("unknown element '" + sym + "' in render styles");
          reject_unknown(st, {"color", "radius"}, "style");
          ElementStyle& target = c.render.styles[static_cast<std::size_t>(*s)];
          if (st.contains("color")) target.color = parse_rgb(st.at("color").get<std::string>());
          if (st.contains("radius")) target.covalent_radius = st.at("radius").get<double>();
        }
      }
    }
    if (j.contains("annotation")) {
      const json& a = j.at("annotation");
      reject_unknown(a, {"coordination_factor", "rdf", "rdf_dr", "rdf_max_factor"}, "annotation");
      if (a.contains("coordination_factor")) c.annotation.coordination_factor = a.at("coordination_factor").get<double>();
      if (a.contains("rdf")) c.annotation.with_rdf = a.at("rdf").get<bool>();
      if (a.contains("rdf_dr")) c.annotation.rdf_dr = a.at("rdf_dr").get<double>();
      if (a.contains("rdf_max_factor")) c.annotation.rdf_max_factor = a.at("rdf_max_factor").get<double>();
    }
    if (j.contains("output_root")) c.output_root = j.at("output_root").get<std::string>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  return c;
}

bool GenerationConfig::is_canonical() const {
  GenerationConfig reference;
  reference.output_root = output_root;
  reference.jobs = jobs;
  return to_json() == reference.to_json();
}

std::filesystem::path default_output_root() {
  if (const char* env = std::getenv("MCSGEN_OUTPUT_ROOT"); env && *env) return env;
  return "mcs_dataset";
}

}  // namespace mcs
