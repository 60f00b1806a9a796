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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcs/annotation.hpp"
#include "mcs/cluster.hpp"
#include "mcs/config.hpp"
#include "mcs/manifest.hpp"

namespace mcs {

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitUsage = 2, kExitIo = 3 };

struct GenerationTask {
  Material material = Material::Ag;
  int radius_index = 0;
  std::optional<int> rotation;  // empty for the baseline
};

/// Every (material, k, rotation) task of a run, in canonical order.
std::vector<GenerationTask> plan(const GenerationConfig& config);

/// The four serialized members of one triplet.
struct TripletBytes {
  Provenance provenance;
  std::string xyz;
  std::vector<std::uint8_t> png;
  std::string json;
  std::string txt;
  AnnotationRecord record;
};

TripletBytes render_triplet(const Cluster& cluster, const GenerationConfig& config);

struct GenerateOptions {
  bool resume = true;
  /// Permit replacing a tree produced with a different configuration.
  bool overwrite = false;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct GenerationReport {
  std::size_t planned = 0;
  std::size_t written = 0;
  std::size_t skipped = 0;
  std::vector<Issue> failures;
  ManifestBuild manifest;

  int exit_code() const { return failures.empty() && manifest.ok() ? kExitOk : kExitPartial; }
};

/// Writes the tree, `config.json` and `manifest.json` under config.output_root.
/// Stems whose files already match recorded checksums are skipped.
GenerationReport generate(const GenerationConfig& config, const GenerateOptions& options = {});

}  // namespace mcs
