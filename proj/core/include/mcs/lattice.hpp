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

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mcs/types.hpp"

namespace mcs {

/// Experimental lattice constants in Angstrom.
namespace lattice_constants {
inline constexpr double kAg = 4.0857;
inline constexpr double kAu = 4.0780;
inline constexpr double kPbS = 5.9362;
inline constexpr double kZnOa = 3.2495;
inline constexpr double kZnOc = 5.2069;
/// Wurtzite internal parameter: experimental ZnO value and the ideal 3/8.
inline constexpr double kZnOuExperimental = 0.3817;
inline constexpr double kWurtziteuIdeal = 0.375;
}  // namespace lattice_constants

enum class Symmetry : std::uint8_t { Fcc, RockSalt, Wurtzite };

std::string_view name(Symmetry s);

struct MotifSite {
  Species species;
  Vec3 fractional;
};

/// Lattice vectors a1, a2, a3 are the columns of `vectors`.
struct UnitCell {
  Material material;
  Symmetry symmetry;
  Mat3 vectors;
  std::vector<MotifSite> motif;
  double a = 0.0;
  double c = 0.0;  // equals `a` for cubic cells

  double volume() const { return vectors.determinant(); }
  /// Distance between the two cell faces normal to lattice vector `axis`.
  double face_spacing(int axis) const;
};

struct CellOptions {
  double wurtzite_u = lattice_constants::kZnOuExperimental;
};

UnitCell build_unit_cell(Material material, const CellOptions& options = {});
/// Throws InvalidInput for an unknown material id.
UnitCell build_unit_cell(std::string_view material_id, const CellOptions& options = {});

/// Checks det(A) > 0, finite vectors, nonempty motif with coordinates in [0,1).
void validate(const UnitCell& cell);

/// Integer supercell multiplicity. Column j holds the lattice-index image of
/// supercell vector j.
struct Multiplicity {
  Eigen::Matrix3i m = Eigen::Matrix3i::Identity();

  long long determinant() const;
  friend bool operator==(const Multiplicity& x, const Multiplicity& y) { return x.m == y.m; }
};

inline Multiplicity diagonal_multiplicity(int s1, int s2, int s3) {
  Multiplicity s;
  s.m = Eigen::Vector3i(s1, s2, s3).asDiagonal();
  return s;
}

/// Positive diagonal, det >= 1, and det <= max_det when max_det > 0.
void validate(const Multiplicity& s, long long max_det = 0);

/// Smallest diagonal multiplicity whose per-axis face spacing covers a ball of
/// `target_radius` plus one lattice vector of margin.
Multiplicity choose_multiplicity(const UnitCell& cell, double target_radius);

/// Seeded upper-triangular draw with positive diagonal and det <= max_det.
Multiplicity random_multiplicity(std::uint64_t seed, long long max_det = 8);

inline constexpr std::size_t kDefaultAtomCap = 10'000'000;

/// Every r' = A (n + f) for lattice index n inside the cell block spanned by
/// S and motif fraction f. Ordered lexicographically by (n1, n2, n3, site).
AtomSet build_supercell(const UnitCell& cell, const Multiplicity& s,
                        std::size_t atom_cap = kDefaultAtomCap);

}  // namespace mcs
