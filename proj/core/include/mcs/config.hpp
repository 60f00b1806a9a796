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
#include <string>
#include <string_view>
#include <vector>

#include "mcs/annotation.hpp"
#include "mcs/cluster.hpp"
#include "mcs/projection.hpp"
#include "mcs/rotation.hpp"

namespace mcs {

/// Every parameter of a generation run. Defaults reproduce the canonical
/// dataset.
struct GenerationConfig {
  std::vector<Material> materials{kAllMaterials.begin(), kAllMaterials.end()};
  std::vector<int> radius_indices{6, 7, 8, 9, 10};
  int rotations = kCanonicalRotations;
  double angle = kCanonicalAngle;
  BaselineOptions baseline;
  RenderSpec render;
  AnnotationOptions annotation;

  // Not part of the hash.
  std::filesystem::path output_root = "mcs_dataset";
  int jobs = 0;  // 0 selects hardware concurrency

  void validate() const;
  /// Canonical JSON of the generation-relevant fields.
  std::string to_json() const;
  /// SHA-256 of to_json().
  std::string hash() const;
  /// Strict: unknown keys are rejected, absent keys keep their defaults.
  static GenerationConfig from_json(std::string_view text);

  bool is_canonical() const;
  std::size_t expected_triplets() const {
    return materials.size() * radius_indices.size() * (static_cast<std::size_t>(rotations) + 1);
  }
};

/// Default output root, honouring MCSGEN_OUTPUT_ROOT.
std::filesystem::path default_output_root();

}  // namespace mcs
