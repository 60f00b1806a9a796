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
#include <vector>

#include "mcs/manifest.hpp"
#include "mcs/metrics_geom.hpp"
#include "mcs/metrics_text.hpp"

namespace mcs {

/// Restricts which dataset entries take part in an evaluation. Empty lists
/// admit everything.
struct DatasetFilter {
  std::vector<Material> materials;
  std::vector<int> radius_indices;
  bool baselines_only = false;

  bool admits(const ManifestEntry& e) const;
};

struct Task1PredictionSet {
  std::vector<Task1Prediction> predictions;
  std::vector<std::string> warnings;
};

/// One JSON record per sample:
/// {"id"|"stem", "a", "b", "c", "V", "nn_mean", "density_g_cm3",
///  "atom_count", "summary"}. Missing or non-numeric fields are N/A.
/// `path` may be a .jsonl file, a .json file (record, array, or
/// {"predictions": [...]}) or a directory searched recursively for .json
/// records, where a same-stem .txt supplies an absent summary.
Task1PredictionSet load_task1_predictions(const std::filesystem::path& path);

/// References for every manifest entry admitted by `filter`.
std::vector<Task1Reference> load_task1_references(const std::filesystem::path& dataset_root,
                                                  const DatasetFilter& filter = {});

/// Predictions whose id is a dataset stem outside `filter` are dropped with a
/// warning; ids unknown to the dataset are an error.
Task1Scores evaluate_task1(const std::filesystem::path& dataset_root,
                           const std::filesystem::path& predictions, const DatasetFilter& filter = {},
                           const Task1Options& options = {});

std::string task1_scores_json(const Task1Scores& scores);
std::string task1_table(const Task1Scores& scores);

struct Task2PairSet {
  std::vector<GenPair> pairs;
  std::vector<std::string> warnings;
};

/// Pairs every `<stem>.xyz` under `predictions` (file or directory) with the
/// dataset structure of the same stem. Unreadable files become empty
/// predictions.
Task2PairSet load_task2_pairs(const std::filesystem::path& dataset_root,
                              const std::filesystem::path& predictions, const DatasetFilter& filter = {});

struct Task2Evaluation {
  Task2Scores scores;
  std::vector<std::string> warnings;
};

Task2Evaluation evaluate_task2(const std::filesystem::path& dataset_root,
                               const std::filesystem::path& predictions, const DatasetFilter& filter = {},
                               const Task2Options& options = {});

std::string task2_scores_json(const Task2Evaluation& evaluation);
std::string task2_table(const Task2Scores& scores);

/// Held-out-radius split: training stems at `train_radii`, test stems at
/// `test_radius`.
struct RadiusSplit {
  std::vector<int> train_radii;
  int test_radius = 0;
  std::vector<std::string> train;
  std::vector<std::string> test;
};

RadiusSplit make_radius_split(const Manifest& manifest, std::vector<int> train_radii, int test_radius,
                              const std::vector<Material>& materials = {});
std::string radius_split_json(const RadiusSplit& split);

}  // namespace mcs
