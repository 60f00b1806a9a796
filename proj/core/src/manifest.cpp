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

#include "mcs/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "json.hpp"
#include "mcs/io.hpp"

namespace mcs {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

TripletPaths triplet_paths(const Provenance& p) {
  if (!p.material) throw InvalidInput("triplet paths need a material");
  const fs::path group = fs::path(std::string(name(*p.material))) / ("R" + std::to_string(p.radius_index));
  const std::string s = stem(p);
  return {group / "xyz" / (s + ".xyz"), group / "png" / (s + ".png"), group / "ann" / (s + ".json"),
          group / "ann" / (s + ".txt")};
}

std::optional<Provenance> parse_stem(std::string_view s) {
  const auto r = s.find("_R");
  if (r == std::string_view::npos) return std::nullopt;
  const auto material = parse_material(s.substr(0, r));
  if (!material || name(*material) != s.substr(0, r)) return std::nullopt;
  const auto rot = s.find("_rot", r + 2);
  if (rot == std::string_view::npos) return std::nullopt;
  Provenance p;
  p.material = material;
  const std::string_view k = s.substr(r + 2, rot - r - 2);
  auto [kp, kec] = std::from_chars(k.data(), k.data() + k.size(), p.radius_index);
  if (kec != std::errc() || kp != k.data() + k.size() || k.empty()) return std::nullopt;
  const std::string_view idx = s.substr(rot + 4);
  if (idx != "base") {
    int i = 0;
    auto [ip, iec] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
    if (iec != std::errc() || ip != idx.data() + idx.size() || idx.empty() || i < 0) return std::nullopt;
    p.rotation = i;
  }
  if (stem(p) != s) return std::nullopt;  // no leading zeros or signs
  return p;
}

bool canonical_less(const Provenance& a, const Provenance& b) {
  const auto key = [](const Provenance& p) {
    return std::make_tuple(p.material ? static_cast<int>(*p.material) : -1, p.radius_index,
                           p.rotation ? *p.rotation : -1);
  };
  return key(a) < key(b);
}

std::size_t Manifest::baseline_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const ManifestEntry& e) { return !e.rotation; }));
}

std::size_t Manifest::rotated_count() const { return entries.size() - baseline_count(); }

const ManifestEntry* Manifest::find(std::string_view s) const {
  for (const ManifestEntry& e : entries) {
    if (e.stem == s) return &e;
  }
  return nullptr;
}

std::string write_manifest_json(const Manifest& m) {
  json j;
  j["version"] = m.version;
  j["config_hash"] = m.config_hash;
  j["config"] = m.config ? json::parse(m.config->to_json()) : json(nullptr);
  if (m.axis_coverage) {
    j["axis_coverage"] = {{"min_neighbor_angle", m.axis_coverage->min_neighbor_angle},
                          {"max_neighbor_angle", m.axis_coverage->max_neighbor_angle}};
  } else {
    j["axis_coverage"] = nullptr;
  }
  j["counts"] = {{"triplets", m.entries.size()},
                 {"baselines", m.baseline_count()},
                 {"rotated", m.rotated_count()}};
  json entries = json::array();
  for (const ManifestEntry& e : m.entries) {
    entries.push_back({{"stem", e.stem},
                       {"material", std::string(name(e.material))},
                       {"radius_index", e.radius_index},
                       {"rotation", e.rotation ? json(*e.rotation) : json("base")},
                       {"atom_count", e.atom_count},
                       {"xyz", e.paths.xyz.generic_string()},
                       {"png", e.paths.png.generic_string()},
                       {"json", e.paths.json.generic_string()},
                       {"txt", e.paths.txt.generic_string()},
                       {"sha256",
                        {{"xyz", e.xyz_sha256},
                         {"png", e.png_sha256},
                         {"json", e.json_sha256},
                         {"txt", e.txt_sha256}}}});
  }
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

Manifest read_manifest_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    Manifest m;
    m.version = j.at("version").get<int>();
    m.config_hash = j.at("config_hash").get<std::string>();
    if (!j.at("config").is_null()) m.config = GenerationConfig::from_json(j.at("config").dump());
    if (j.contains("axis_coverage") && !j.at("axis_coverage").is_null()) {
      m.axis_coverage = AxisCoverage{j.at("axis_coverage").at("min_neighbor_angle").get<double>(),
                                     j.at("axis_coverage").at("max_neighbor_angle").get<double>()};
    }
    for (const json& e : j.at("entries")) {
      ManifestEntry out;
      out.stem = e.at("stem").get<std::string>();
      const auto prov = parse_stem(out.stem);
      if (!prov) throw InvalidInput("manifest: malformed stem '" + out.stem + "'");
      out.material = *prov->material;
      out.radius_index = prov->radius_index;
      out.rotation = prov->rotation;
      out.atom_count = e.at("atom_count").get<std::size_t>();
      out.paths = {e.at("xyz").get<std::string>(), e.at("png").get<std::string>(),
                   e.at("json").get<std::string>(), e.at("txt").get<std::string>()};
      const json& h = e.at("sha256");
      out.xyz_sha256 = h.at("xyz").get<std::string>();
      out.png_sha256 = h.at("png").get<std::string>();
      out.json_sha256 = h.at("json").get<std::string>();
      out.txt_sha256 = h.at("txt").get<std::string>();
      m.entries.push_back(std::move(out));
    }
    return m;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("manifest: ") + e.what());
  }
}

Manifest load_manifest(const fs::path& root) {
  const fs::path file = fs::is_directory(root) ? root / kManifestFile : root;
  return read_manifest_json(read_text_file(file));
}

namespace {

enum Member : unsigned { kXyz = 1, kPng = 2, kJson = 4, kTxt = 8, kAll = 15 };

struct Found {
  Provenance provenance;
  unsigned members = 0;
};

std::optional<std::size_t> xyz_count_line(const std::string& text) {
  const auto nl = text.find('\n');
  const std::string first = text.substr(0, nl);
  std::size_t n = 0;
  const auto b = first.find_first_not_of(" \t\r");
  if (b == std::string::npos) return std::nullopt;
  const auto e = first.find_last_not_of(" \t\r");
  auto [p, ec] = std::from_chars(first.data() + b, first.data() + e + 1, n);
  if (ec != std::errc() || p != first.data() + e + 1) return std::nullopt;
  return n;
}

std::string rel(const fs::path& p) { return p.generic_string(); }

void scan_tree(const fs::path& root, std::map<std::string, Found>& found, std::vector<Issue>& issues) {
  static const std::map<std::pair<std::string, std::string>, Member> kKinds = {
      {{"xyz", ".xyz"}, kXyz}, {{"png", ".png"}, kPng}, {{"ann", ".json"}, kJson}, {{"ann", ".txt"}, kTxt}};
  std::vector<fs::path> material_dirs;
  for (const auto& d : fs::directory_iterator(root)) {
    if (!d.is_directory()) continue;
    const std::string dname = d.path().filename().string();
    const auto m = parse_material(dname);
    if (m && name(*m) == dname) material_dirs.push_back(d.path());
  }
  std::sort(material_dirs.begin(), material_dirs.end());
  for (const fs::path& mdir : material_dirs) {
    std::vector<fs::path> groups;
    for (const auto& d : fs::directory_iterator(mdir)) {
      if (d.is_directory()) groups.push_back(d.path());
    }
    std::sort(groups.begin(), groups.end());
    for (const fs::path& gdir : groups) {
      for (const char* sub : {"xyz", "png", "ann"}) {
        const fs::path sdir = gdir / sub;
        if (!fs::is_directory(sdir)) continue;
        std::vector<fs::path> files;
        for (const auto& f : fs::directory_iterator(sdir)) {
          if (f.is_regular_file()) files.push_back(f.path());
        }
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files) {
          const fs::path relative = fs::relative(f, root);
          const auto kind = kKinds.find({sub, f.extension().string()});
          const auto prov = parse_stem(f.stem().string());
          if (kind == kKinds.end() || !prov) {
            issues.push_back({rel(relative), "unexpected file in dataset tree"});
            continue;
          }
          const TripletPaths expected = triplet_paths(*prov);
          const fs::path& want = kind->second == kXyz   ? expected.xyz
                                 : kind->second == kPng ? expected.png
                                 : kind->second == kJson ? expected.json
                                                         : expected.txt;
          if (relative != want) {
            issues.push_back({rel(relative), "file placed outside its group, expected " + rel(want)});
            continue;
          }
          Found& slot = found[f.stem().string()];
          slot.provenance = *prov;
          slot.members |= kind->second;
        }
      }
    }
  }
}

}  // namespace

ManifestBuild build_manifest(const fs::path& root) {
  if (!fs::is_directory(root)) throw IoError("dataset root " + root.string() + " is not a directory");
  ManifestBuild out;

  const fs::path config_path = root / kConfigFile;
  if (fs::exists(config_path)) {
    try {
      GenerationConfig config = GenerationConfig::from_json(read_text_file(config_path));
      config.validate();
      out.manifest.config_hash = config.hash();
      if (config.rotations >= 2) {
        const auto axes = fibonacci_axes(config.rotations);
        out.manifest.axis_coverage = axis_coverage(axes);
      }
      out.manifest.config = std::move(config);
    } catch (const InvalidInput& e) {
      out.issues.push_back({std::string(kConfigFile), e.what()});
    }
  } else {
    out.warnings.push_back("no config.json under " + root.string() + "; cardinality not checked");
  }

  std::map<std::string, Found> found;
  scan_tree(root, found, out.issues);

  std::vector<const Found*> ordered;
  for (const auto& [s, f] : found) ordered.push_back(&f);
  std::sort(ordered.begin(), ordered.end(),
            [](const Found* a, const Found* b) { return canonical_less(a->provenance, b->provenance); });

  for (const Found* f : ordered) {
    const std::string s = stem(f->provenance);
    const TripletPaths paths = triplet_paths(f->provenance);
    if (f->members != kAll) {
      const std::pair<Member, const fs::path*> parts[] = {
          {kXyz, &paths.xyz}, {kPng, &paths.png}, {kJson, &paths.json}, {kTxt, &paths.txt}};
      for (const auto& [bit, path] : parts) {
        if (!(f->members & bit)) out.issues.push_back({rel(*path), "missing member of triplet " + s});
      }
      continue;
    }
    ManifestEntry e;
    e.stem = s;
    e.material = *f->provenance.material;
    e.radius_index = f->provenance.radius_index;
    e.rotation = f->provenance.rotation;
    e.paths = paths;
    const std::string xyz = read_text_file(root / paths.xyz);
    const auto count = xyz_count_line(xyz);
    if (!count) {
      out.issues.push_back({rel(paths.xyz), "unreadable atom count line"});
      continue;
    }
    e.atom_count = *count;
    e.xyz_sha256 = sha256_hex(xyz);
    e.png_sha256 = sha256_hex(read_text_file(root / paths.png));
    e.json_sha256 = sha256_hex(read_text_file(root / paths.json));
    e.txt_sha256 = sha256_hex(read_text_file(root / paths.txt));
    out.manifest.entries.push_back(std::move(e));
  }

  if (found.empty()) out.warnings.push_back("dataset tree under " + root.string() + " is empty");

  if (const auto& config = out.manifest.config) {
    std::set<std::string> expected;
    for (Material m : config->materials) {
      for (int k : config->radius_indices) {
        expected.insert(stem({m, k, std::nullopt, 0.0}));
        for (int i = 0; i < config->rotations; ++i) expected.insert(stem({m, k, i, 0.0}));
      }
    }
    std::set<std::string> seen;
    for (const auto& [s, f] : found) {
      seen.insert(s);
      if (!expected.count(s)) {
        out.issues.push_back({rel(triplet_paths(f.provenance).xyz), "stem " + s + " is not part of the configured run"});
      }
    }
    std::size_t missing = 0;
    for (const std::string& s : expected) {
      if (!seen.count(s)) {
        ++missing;
        out.issues.push_back({rel(triplet_paths(*parse_stem(s)).xyz), "triplet " + s + " was not generated"});
      }
    }
    if (out.manifest.entries.size() != config->expected_triplets()) {
      out.issues.push_back({std::string(kManifestFile),
                            "expected " + std::to_string(config->expected_triplets()) + " triplets, found " +
                                std::to_string(out.manifest.entries.size()) + " complete (" +
                                std::to_string(missing) + " never generated)"});
    }
  }
  return out;
}

std::vector<Issue> validate_dataset(const fs::path& root) {
  std::vector<Issue> issues;
  const fs::path manifest_path = root / kManifestFile;
  if (!fs::exists(manifest_path)) {
    issues.push_back({std::string(kManifestFile), "manifest not found"});
    return issues;
  }
  Manifest m;
  try {
    m = read_manifest_json(read_text_file(manifest_path));
  } catch (const InvalidInput& e) {
    issues.push_back({std::string(kManifestFile), e.what()});
    return issues;
  }
  if (m.version != kManifestVersion) {
    issues.push_back({std::string(kManifestFile), "unsupported manifest version " + std::to_string(m.version)});
  }
  const fs::path config_path = root / kConfigFile;
  if (fs::exists(config_path)) {
    try {
      const std::string hash = GenerationConfig::from_json(read_text_file(config_path)).hash();
      if (hash != m.config_hash) issues.push_back({std::string(kConfigFile), "config hash differs from manifest"});
    } catch (const InvalidInput& e) {
      issues.push_back({std::string(kConfigFile), e.what()});
    }
  } else if (!m.config_hash.empty()) {
    issues.push_back({std::string(kConfigFile), "config file missing"});
  }
  if (m.config && m.config->hash() != m.config_hash) {
    issues.push_back({std::string(kManifestFile), "embedded config does not match the recorded hash"});
  }

  std::set<std::string> listed;
  for (const ManifestEntry& e : m.entries) {
    const std::pair<const fs::path*, const std::string*> files[] = {{&e.paths.xyz, &e.xyz_sha256},
                                                                   {&e.paths.png, &e.png_sha256},
                                                                   {&e.paths.json, &e.json_sha256},
                                                                   {&e.paths.txt, &e.txt_sha256}};
    for (const auto& [path, digest] : files) {
      listed.insert(rel(*path));
      const fs::path full = root / *path;
      if (!fs::is_regular_file(full)) {
        issues.push_back({rel(*path), "listed in manifest but missing"});
        continue;
      }
      if (sha256_hex(read_text_file(full)) != *digest) {
        issues.push_back({rel(*path), "checksum mismatch"});
      }
    }
  }
  if (m.config && m.entries.size() != m.config->expected_triplets()) {
    issues.push_back({std::string(kManifestFile), "lists " + std::to_string(m.entries.size()) +
                                                      " triplets, configuration implies " +
                                                      std::to_string(m.config->expected_triplets())});
  }

  std::map<std::string, Found> found;
  std::vector<Issue> scan_issues;
  scan_tree(root, found, scan_issues);
  issues.insert(issues.end(), scan_issues.begin(), scan_issues.end());
  for (const auto& [s, f] : found) {
    const TripletPaths p = triplet_paths(f.provenance);
    for (const fs::path* path : {&p.xyz, &p.png, &p.json, &p.txt}) {
      if (fs::exists(root / *path) && !listed.count(rel(*path))) {
        issues.push_back({rel(*path), "present on disk but not listed in manifest"});
      }
    }
  }
  return issues;
}

}  // namespace mcs
