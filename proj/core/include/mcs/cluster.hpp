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

#include "mcs/lattice.hpp"
#include "mcs/types.hpp"

namespace mcs {

inline constexpr int kMinRadiusIndex = 6;
inline constexpr int kMaxRadiusIndex = 10;

/// Where a cluster came from. `rotation` is empty for the baseline
/// (unrotated) orientation.
struct Provenance {
  std::optional<Material> material;
  int radius_index = 0;
  std::optional<int> rotation;
  double radius = 0.0;  // carve radius in Angstrom, 0 when unknown
};

struct Cluster {
  AtomSet atoms;
  Provenance provenance;

  std::size_t size() const { return atoms.size(); }
  std::vector<Vec3> positions() const;
};

/// File stem `<material>_R<k>_rot<i>` (`rotbase` for the baseline).
std::string stem(const Provenance& p);

enum class RadiusReference : std::uint8_t {
  PerMaterial,  // R_k = 0.2 k a of the carved material
  Silver,       // R_k = 0.2 k a_Ag for every material
};

std::string_view name(RadiusReference r);
std::optional<RadiusReference> parse_radius_reference(std::string_view text);

/// 0.2 * k * a_ref; throws for k outside [6, 10] or a_ref <= 0.
double cluster_radius(int k, double a_ref);
double cluster_radius(const UnitCell& cell, int k, RadiusReference ref);

/// Mass-weighted mean position.
Vec3 center_of_mass(std::span<const Atom> atoms);

/// Cluster is empty after carving.
class EmptyCarve : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct CarveOptions {
  bool recenter = true;  // translate the carved set so its own COM is the origin
};

/// Keeps the atoms inside the closed ball ||r - center|| <= radius, in input order.
Cluster carve_cluster(std::span<const Atom> atoms, const Vec3& center, double radius,
                      Provenance provenance, const CarveOptions& options = {});

enum class CarveCenter : std::uint8_t {
  SupercellCom,  // mass centre of the whole supercell
  NearestSite,   // the atom closest to that mass centre
};

std::string_view name(CarveCenter c);
std::optional<CarveCenter> parse_carve_center(std::string_view text);

enum class MultiplicityMode : std::uint8_t { Minimal, Random };

std::string_view name(MultiplicityMode m);
std::optional<MultiplicityMode> parse_multiplicity_mode(std::string_view text);

struct BaselineOptions {
  RadiusReference radius_reference = RadiusReference::PerMaterial;
  CarveCenter center = CarveCenter::SupercellCom;
  MultiplicityMode multiplicity = MultiplicityMode::Minimal;
  std::uint64_t seed = 0;  // random multiplicity only
  CellOptions cell;
};

/// Unit cell -> supercell -> carve -> recenter for one (material, k).
Cluster make_baseline_cluster(Material material, int k, const BaselineOptions& options = {});

}  // namespace mcs
