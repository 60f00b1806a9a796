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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace mcs {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Chemical elements that occur in the four supported chemistries.
enum class Species : std::uint8_t { Ag, Au, Pb, S, Zn, O };

inline constexpr std::array<Species, 6> kAllSpecies = {
    Species::Ag, Species::Au, Species::Pb, Species::S, Species::Zn, Species::O};

enum class Material : std::uint8_t { Ag, Au, PbS, ZnO };

inline constexpr std::array<Material, 4> kAllMaterials = {
    Material::Ag, Material::Au, Material::PbS, Material::ZnO};

std::string_view symbol(Species s);
/// Case-insensitive element symbol lookup ("ag", "AG" and "Ag" all resolve).
std::optional<Species> parse_species(std::string_view text);

std::string_view name(Material m);
std::optional<Material> parse_material(std::string_view text);

/// Standard atomic weight in unified atomic mass units.
double atomic_mass(Species s);

struct Atom {
  Species species;
  Vec3 position;
};

using AtomSet = std::vector<Atom>;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Raised for any precondition violation on user-facing inputs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation needs at least two atoms (or a positive volume).
class DegenerateCluster : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

}  // namespace mcs
