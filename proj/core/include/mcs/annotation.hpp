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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcs/cluster.hpp"
#include "mcs/types.hpp"

namespace mcs {

/// 1 u/A^3 expressed in g/cm^3.
inline constexpr double kAmuPerCubicAngstromToGramPerCubicCm = 1.66053906660;

struct BoxMetrics {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double volume = 0.0;  // a * b * c
};

/// Per-axis max - min of the coordinates. A single atom yields an all-zero box.
BoxMetrics bounding_metrics(std::span<const Atom> atoms);

/// Mean over atoms of the distance to the closest other atom (exact O(N^2)).
/// Throws DegenerateCluster for fewer than two atoms.
double mean_nn_distance(std::span<const Atom> atoms);

struct MassDensity {
  double u_per_A3 = 0.0;
  double g_per_cm3 = 0.0;
};

MassDensity mass_density(std::span<const Atom> atoms, double volume);

struct Coordination {
  std::vector<int> per_atom;
  double mean = 0.0;
};

/// Neighbours j != i with ||r_i - r_j|| <= cutoff.
Coordination coordination_numbers(std::span<const Atom> atoms, double cutoff);

struct RdfTable {
  double dr = 0.0;
  std::vector<double> edges;  // size g.size() + 1, edges[0] = 0
  std::vector<double> g;
  double number_density = 0.0;  // N per A^3 used for normalization

  double center(std::size_t bin) const { return 0.5 * (edges[bin] + edges[bin + 1]); }
};

/// Ordered-pair distance histogram normalized by 4 pi r^2 dr rho N. rho is the
/// number density of the carve ball (radius from provenance, else the largest
/// distance from the mass centre), which keeps g(r) rotation invariant.
RdfTable rdf(const Cluster& cluster, double dr, double r_max);

struct AnnotationOptions {
  double coordination_factor = 1.2;  // cutoff = factor * mean NN distance
  bool with_rdf = false;
  double rdf_dr = 0.05;
  double rdf_max_factor = 2.0;  // r_max = factor * carve radius
};

struct AnnotationRecord {
  Provenance provenance;
  std::size_t atom_count = 0;
  std::array<std::size_t, kAllSpecies.size()> species_counts{};
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double volume = 0.0;
  double nn_mean = 0.0;
  double coordination_mean = 0.0;
  double coordination_cutoff = 0.0;
  double density_u_per_A3 = 0.0;
  double density_g_per_cm3 = 0.0;
  bool degenerate = false;  // fewer than two atoms or a flat box
  std::optional<RdfTable> rdf;
};

AnnotationRecord annotate(const Cluster& cluster, const AnnotationOptions& options = {});

/// `%.3f` rendering shared by every emitted number.
std::string format_fixed3(double value);

/// The canonical one-sentence summary; at most 40 whitespace tokens.
std::string render_summary(const AnnotationRecord& record);

inline constexpr std::size_t kMaxSummaryTokens = 40;

std::size_t whitespace_token_count(std::string_view text);

}  // namespace mcs
