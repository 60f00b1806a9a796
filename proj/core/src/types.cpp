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

#include "mcs/types.hpp"

#include <algorithm>
#include <cctype>

namespace mcs {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view symbol(Species s) {
  switch (s) {
    case Species::Ag: return "Ag";
    case Species::Au: return "Au";
    case Species::Pb: return "Pb";
    case Species::S: return "S";
    case Species::Zn: return "Zn";
    case Species::O: return "O";
  }
  return "?";
}

std::optional<Species> parse_species(std::string_view text) {
  for (Species s : kAllSpecies) {
    if (iequals(text, symbol(s))) return s;
  }
  return std::nullopt;
}

std::string_view name(Material m) {
  switch (m) {
    case Material::Ag: return "Ag";
    case Material::Au: return "Au";
    case Material::PbS: return "PbS";
    case Material::ZnO: return "ZnO";
  }
  return "?";
}

std::optional<Material> parse_material(std::string_view text) {
  for (Material m : kAllMaterials) {
    if (iequals(text, name(m))) return m;
  }
  return std::nullopt;
}

double atomic_mass(Species s) {
  switch (s) {
    case Species::Ag: return 107.8682;
    case Species::Au: return 196.96657;
    case Species::Pb: return 207.2;
    case Species::S: return 32.06;
    case Species::Zn: return 65.38;
    case Species::O: return 15.999;
  }
  return 0.0;
}

}  // namespace mcs
