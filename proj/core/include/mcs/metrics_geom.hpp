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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcs/cluster.hpp"
#include "mcs/types.hpp"

namespace mcs {

/// Smallest pairwise distance; +inf for fewer than two points.
double min_separation(std::span<const Vec3> points);

/// min separation strictly greater than `min_sep` (single atoms pass).
bool is_valid_structure(std::span<const Vec3> points, double min_sep = 0.5);

/// Percentage of structures that pass is_valid_structure.
double validity(std::span<const std::vector<Vec3>> structures, double min_sep = 0.5);

struct CountPair {
  std::size_t predicted = 0;
  std::size_t truth = 0;
};

/// Mean of 100 |N_pred - N_gt| / N_gt.
double atom_count_error(std::span<const CountPair> pairs);

struct KabschResult {
  Mat3 rotation = Mat3::Identity();
  double rmsd = 0.0;
};

/// Proper rotation R minimizing sum ||R (p_j - cp) - (q_perm[j] - cq)||^2 and
/// the resulting RMSD. The SVD determinant correction keeps det R = +1.
KabschResult kabsch_rmsd(std::span<const Vec3> p, std::span<const Vec3> q,
                         std::span<const int> perm);

struct AlignOptions {
  int max_iterations = 20;
  double tolerance = 1e-9;  // relative RMSD change that ends the refinement
  bool species_aware = false;
};

struct Alignment {
  std::vector<int> perm;  // perm[j] = index in q paired with p[j]
  Mat3 rotation = Mat3::Identity();
  double rmsd = 0.0;
  int iterations = 0;
  bool species_fallback = false;  // species-aware requested but multisets differ
};

/// Resolves the atom pairing of two equal-size sets: several deterministic
/// starts (identity pairing, identity orientation, and the four proper
/// principal-axes frames) each refined by alternating optimal assignment and
/// Kabsch until the RMSD settles; the lowest RMSD wins, earlier start on ties.
/// The identity pairing is the first start, so the result never exceeds
/// kabsch_rmsd(p, q, identity).
Alignment align_point_sets(std::span<const Vec3> p, std::span<const Vec3> q,
                           const AlignOptions& options = {},
                           std::span<const Species> p_species = {},
                           std::span<const Species> q_species = {});

std::vector<int> correspondence(std::span<const Vec3> p, std::span<const Vec3> q,
                                const AlignOptions& options = {},
                                std::span<const Species> p_species = {},
                                std::span<const Species> q_species = {});

enum class ChamferMode : std::uint8_t { MaxOfMeans, MeanOfMeans };

std::string_view name(ChamferMode m);
std::optional<ChamferMode> parse_chamfer_mode(std::string_view text);

/// Bidirectional Chamfer distance of the sets as given (no alignment).
double chamfer(std::span<const Vec3> p, std::span<const Vec3> q,
               ChamferMode mode = ChamferMode::MaxOfMeans);

/// Chamfer after centroid removal and alignment: Kabsch through the resolved
/// pairing when sizes match, principal axes only otherwise.
double aligned_chamfer(std::span<const Vec3> p, std::span<const Vec3> q,
                       ChamferMode mode = ChamferMode::MaxOfMeans,
                       const AlignOptions& options = {});

struct GenPair {
  std::string id;
  std::optional<Cluster> prediction;  // empty when the file could not be read
  Cluster truth;
};

struct PairScore {
  std::string id;
  bool readable = false;
  bool valid = false;
  bool single_atom = false;
  std::size_t predicted_count = 0;
  std::size_t truth_count = 0;
  std::optional<double> count_error;  // percent
  std::optional<double> rmsd;
  std::optional<double> chamfer;
  std::vector<std::string> warnings;

  bool count_matched() const { return readable && predicted_count == truth_count; }
};

/// Percentage of count-matched pairs with chamfer <= tolerance; empty when
/// no pair is count-matched.
std::optional<double> match_rate(std::span<const PairScore> pairs, double tolerance = 0.25);

struct Task2Options {
  double min_separation = 0.5;
  double tolerance = 0.25;
  ChamferMode chamfer_mode = ChamferMode::MaxOfMeans;
  AlignOptions align;
  /// Species-restricted pairing; default on for binary compounds.
  std::optional<bool> species_aware;
  /// Target chemistry; falls back to each truth cluster's provenance.
  std::optional<Material> material;
};

struct Task2Scores {
  std::size_t samples = 0;
  std::size_t readable = 0;
  std::size_t count_matched = 0;
  double validity = 0.0;
  std::optional<double> atom_count_error;
  std::optional<double> rmsd;
  std::optional<double> match_rate;
  std::vector<PairScore> per_sample;
};

/// Elements a material is made of.
std::vector<Species> species_of(Material m);

Task2Scores score_task2(std::span<const GenPair> pairs, const Task2Options& options = {});

}  // namespace mcs
