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

#include "mcs/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>

namespace mcs {

using namespace lattice_constants;

std::string_view name(Symmetry s) {
  switch (s) {
    case Symmetry::Fcc: return "fcc";
    case Symmetry::RockSalt: return "rocksalt";
    case Symmetry::Wurtzite: return "wurtzite";
  }
  return "?";
}

double UnitCell::face_spacing(int axis) const {
  const Vec3 u = vectors.col((axis + 1) % 3);
  const Vec3 v = vectors.col((axis + 2) % 3);
  return std::abs(volume()) / u.cross(v).norm();
}

namespace {

const std::array<Vec3, 4> kFccSites = {Vec3(0.0, 0.0, 0.0), Vec3(0.5, 0.5, 0.0),
                                       Vec3(0.5, 0.0, 0.5), Vec3(0.0, 0.5, 0.5)};

UnitCell cubic(Material material, Symmetry symmetry, double a) {
  UnitCell cell;
  cell.material = material;
  cell.symmetry = symmetry;
  cell.vectors = Mat3::Identity() * a;
  cell.a = a;
  cell.c = a;
  return cell;
}

}  // namespace

UnitCell build_unit_cell(Material material, const CellOptions& options) {
  switch (material) {
    case Material::Ag:
    case Material::Au: {
      const Species sp = material == Material::Ag ? Species::Ag : Species::Au;
      UnitCell cell = cubic(material, Symmetry::Fcc, material == Material::Ag ? kAg : kAu);
      for (const Vec3& f : kFccSites) cell.motif.push_back({sp, f});
      return cell;
    }
    case Material::PbS: {
      UnitCell cell = cubic(material, Symmetry::RockSalt, kPbS);
      for (const Vec3& f : kFccSites) cell.motif.push_back({Species::Pb, f});
      // anion sublattice offset by (1/2, 0, 0)
      for (const Vec3& f : kFccSites) {
        cell.motif.push_back({Species::S, Vec3(std::fmod(f.x() + 0.5, 1.0), f.y(), f.z())});
      }
      return cell;
    }
    case Material::ZnO: {
      const double u = options.wurtzite_u;
      if (!(u > 0.0 && u < 0.5)) {
        throw InvalidInput("wurtzite u parameter must lie in (0, 0.5), got " + std::to_string(u));
      }
      UnitCell cell;
      cell.material = material;
      cell.symmetry = Symmetry::Wurtzite;
      cell.a = kZnOa;
      cell.c = kZnOc;
      cell.vectors.col(0) = Vec3(kZnOa, 0.0, 0.0);
      cell.vectors.col(1) = Vec3(-0.5 * kZnOa, 0.5 * std::sqrt(3.0) * kZnOa, 0.0);
      cell.vectors.col(2) = Vec3(0.0, 0.0, kZnOc);
      cell.motif = {
          {Species::Zn, Vec3(1.0 / 3.0, 2.0 / 3.0, 0.0)},
          {Species::Zn, Vec3(2.0 / 3.0, 1.0 / 3.0, 0.5)},
          {Species::O, Vec3(1.0 / 3.0, 2.0 / 3.0, u)},
          {Species::O, Vec3(2.0 / 3.0, 1.0 / 3.0, 0.5 + u)},
      };
      return cell;
    }
  }
  throw InvalidInput("unknown material");
}

UnitCell build_unit_cell(std::string_view material_id, const CellOptions& options) {
  const auto material = parse_material(material_id);
  if (!material) {
    throw InvalidInput("unknown material id '" + std::string(material_id) +
                       "' (expected Ag, Au, PbS or ZnO)");
  }
  return build_unit_cell(*material, options);
}

void validate(const UnitCell& cell) {
  if (!cell.vectors.allFinite()) throw InvalidInput("lattice vectors must be finite");
  if (!(cell.vectors.determinant() > 0.0)) {
    throw InvalidInput("lattice vectors must form a right-handed cell (det(A) > 0)");
  }
  if (cell.motif.empty()) throw InvalidInput("basis motif is empty");
  for (const MotifSite& site : cell.motif) {
    if ((site.fractional.array() < 0.0).any() || (site.fractional.array() >= 1.0).any()) {
      throw InvalidInput("fractional motif coordinates must lie in [0, 1)");
    }
  }
}

long long Multiplicity::determinant() const {
  const Eigen::Matrix<long long, 3, 3> w = m.cast<long long>();
  return w(0, 0) * (w(1, 1) * w(2, 2) - w(1, 2) * w(2, 1)) -
         w(0, 1) * (w(1, 0) * w(2, 2) - w(1, 2) * w(2, 0)) +
         w(0, 2) * (w(1, 0) * w(2, 1) - w(1, 1) * w(2, 0));
}

void validate(const Multiplicity& s, long long max_det) {
  for (int i = 0; i < 3; ++i) {
    if (s.m(i, i) <= 0) throw InvalidInput("multiplicity diagonal entries must be positive");
  }
  const long long det = s.determinant();
  if (det < 1) throw InvalidInput("multiplicity determinant must be >= 1");
  if (max_det > 0 && det > max_det) {
    throw InvalidInput("multiplicity determinant " + std::to_string(det) + " exceeds bound " +
                       std::to_string(max_det));
  }
}

Multiplicity choose_multiplicity(const UnitCell& cell, double target_radius) {
  if (!(target_radius > 0.0)) throw InvalidInput("target radius must be positive");
  std::array<int, 3> s{};
  for (int i = 0; i < 3; ++i) {
    const double needed = 2.0 * target_radius + cell.vectors.col(i).norm();
    // relative slack so that an exact fit does not round up to the next cell
    s[i] = std::max(1, static_cast<int>(std::ceil(needed / cell.face_spacing(i) - 1e-12)));
  }
  return diagonal_multiplicity(s[0], s[1], s[2]);
}

Multiplicity random_multiplicity(std::uint64_t seed, long long max_det) {
  if (max_det < 1) throw InvalidInput("max_det must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> diag(1, 2);
  std::uniform_int_distribution<int> off(0, 1);
  for (;;) {
    Multiplicity s;
    s.m.setZero();
    for (int i = 0; i < 3; ++i) s.m(i, i) = diag(rng);
    s.m(0, 1) = off(rng);
    s.m(0, 2) = off(rng);
    s.m(1, 2) = off(rng);
    if (s.determinant() <= max_det) return s;
  }
}

AtomSet build_supercell(const UnitCell& cell, const Multiplicity& s, std::size_t atom_cap) {
  validate(cell);
  validate(s);
  const long long cells = s.determinant();
  const auto total = static_cast<unsigned long long>(cells) * cell.motif.size();
  if (total > atom_cap) {
    throw InvalidInput("supercell would hold " + std::to_string(total) +
                       " atoms, above the cap of " + std::to_string(atom_cap));
  }

  // Lattice indices n with S^-1 n in [0,1)^3; search the bounding box of the
  // parallelepiped spanned by the columns of S.
  Eigen::Vector3i lo = Eigen::Vector3i::Zero();
  Eigen::Vector3i hi = Eigen::Vector3i::Zero();
  for (int corner = 0; corner < 8; ++corner) {
    Eigen::Vector3i p = Eigen::Vector3i::Zero();
    for (int j = 0; j < 3; ++j) {
      if (corner & (1 << j)) p += s.m.col(j);
    }
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Mat3 inverse = s.m.cast<double>().inverse();
  constexpr double kTol = 1e-9;

  AtomSet atoms;
  atoms.reserve(static_cast<std::size_t>(total));
  for (int n1 = lo.x(); n1 < hi.x(); ++n1) {
    for (int n2 = lo.y(); n2 < hi.y(); ++n2) {
      for (int n3 = lo.z(); n3 < hi.z(); ++n3) {
        const Vec3 n(n1, n2, n3);
        const Vec3 frac = inverse * n;
        if ((frac.array() < -kTol).any() || (frac.array() >= 1.0 - kTol).any()) continue;
        for (const MotifSite& site : cell.motif) {
          atoms.push_back({site.species, cell.vectors * (n + site.fractional)});
        }
      }
    }
  }
  if (atoms.size() != total) {
    throw std::logic_error("supercell enumeration produced " + std::to_string(atoms.size()) +
                           " atoms, expected " + std::to_string(total));
  }
  return atoms;
}

}  // namespace mcs
