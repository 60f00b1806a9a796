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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcs/cluster.hpp"
#include "mcs/config.hpp"
#include "mcs/rotation.hpp"

namespace mcs {

inline constexpr int kManifestVersion = 1;
inline constexpr std::string_view kManifestFile = "manifest.json";
inline constexpr std::string_view kConfigFile = "config.json";

/// Paths of one triplet relative to the dataset root:
/// `<material>/R<k>/{xyz,png,ann}/<stem>.{xyz,png,json,txt}`.
struct TripletPaths {
  std::filesystem::path xyz;
  std::filesystem::path png;
  std::filesystem::path json;
  std::filesystem::path txt;
};

TripletPaths triplet_paths(const Provenance& p);

/// Inverse of stem(); rejects anything else.
std::optional<Provenance> parse_stem(std::string_view stem);

/// Canonical ordering: material, radius index, baseline, then rotation index.
bool canonical_less(const Provenance& a, const Provenance& b);

struct ManifestEntry {
  std::string stem;
  Material material = Material::Ag;
  int radius_index = 0;
  std::optional<int> rotation;
  std::size_t atom_count = 0;
  TripletPaths paths;
  std::string xyz_sha256;
  std::string png_sha256;
  std::string json_sha256;
  std::string txt_sha256;

  Provenance provenance() const { return {material, radius_index, rotation, 0.0}; }
};

struct Manifest {
  int version = kManifestVersion;
  std::string config_hash;
  std::optional<GenerationConfig> config;
  std::optional<AxisCoverage> axis_coverage;
  std::vector<ManifestEntry> entries;

  std::size_t baseline_count() const;
  std::size_t rotated_count() const;
  const ManifestEntry* find(std::string_view stem) const;
};

std::string write_manifest_json(const Manifest& manifest);
Manifest read_manifest_json(std::string_view text);
Manifest load_manifest(const std::filesystem::path& root);

/// A single validation failure: the offending file and why.
struct Issue {
  std::string file;
  std::string reason;
};

struct ManifestBuild {
  Manifest manifest;
  std::vector<Issue> issues;
  std::vector<std::string> warnings;
  bool ok() const { return issues.empty(); }
};

/// Enumerates the tree under `root`, checksums every triplet and checks the
/// cardinality implied by `<root>/config.json` when present.
ManifestBuild build_manifest(const std::filesystem::path& root);

/// Checks `<root>/manifest.json` against the tree: config hash, presence and
/// checksums of every listed file, and files the manifest does not list.
std::vector<Issue> validate_dataset(const std::filesystem::path& root);

}  // namespace mcs
