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

#include "mcs/cluster.hpp"

#include <limits>

namespace mcs {

std::vector<Vec3> Cluster::positions() const {
  std::vector<Vec3> out;
  out.reserve(atoms.size());
  for (const Atom& atom : atoms) out.push_back(atom.position);
  return out;
}

std::string stem(const Provenance& p) {
  std::string out = p.material ? std::string(name(*p.material)) : std::string("cluster");
  out += "_R" + std::to_string(p.radius_index) + "_rot";
  out += p.rotation ? std::to_string(*p.rotation) : std::string("base");
  return out;
}

std::string_view name(RadiusReference r) {
  return r == RadiusReference::Silver ? "ag" : "material";
}

std::optional<RadiusReference> parse_radius_reference(std::string_view text) {
  if (text == "material") return RadiusReference::PerMaterial;
  if (text == "ag" || text == "Ag") return RadiusReference::Silver;
  return std::nullopt;
}

std::string_view name(CarveCenter c) { return c == CarveCenter::NearestSite ? "site" : "com"; }

std::optional<CarveCenter> parse_carve_center(std::string_view text) {
  if (text == "com") return CarveCenter::SupercellCom;
  if (text == "site") return CarveCenter::NearestSite;
  return std::nullopt;
}

std::string_view name(MultiplicityMode m) {
  return m == MultiplicityMode::Random ? "random" : "minimal";
}

std::optional<MultiplicityMode> parse_multiplicity_mode(std::string_view text) {
  if (text == "minimal") return MultiplicityMode::Minimal;
  if (text == "random") return MultiplicityMode::Random;
  return std::nullopt;
}

double cluster_radius(int k, double a_ref) {
  if (k < kMinRadiusIndex || k > kMaxRadiusIndex) {
    throw InvalidInput("radius index k=" + std::to_string(k) + " outside [6, 10]");
  }
  if (!(a_ref > 0.0)) throw InvalidInput("reference lattice parameter must be positive");
  return 0.2 * k * a_ref;
}

double cluster_radius(const UnitCell& cell, int k, RadiusReference ref) {
  return cluster_radius(k, ref == RadiusReference::Silver ? lattice_constants::kAg : cell.a);
}

Vec3 center_of_mass(std::span<const Atom> atoms) {
  if (atoms.empty()) throw InvalidInput("center of mass of an empty atom set");
  Vec3 weighted = Vec3::Zero();
  double total = 0.0;
  for (const Atom& atom : atoms) {
    const double m = atomic_mass(atom.species);
    weighted += m * atom.position;
    total += m;
  }
  return weighted / total;
}

Cluster carve_cluster(std::span<const Atom> atoms, const Vec3& center, double radius,
                      Provenance provenance, const CarveOptions& options) {
  if (!(radius > 0.0)) throw InvalidInput("carve radius must be positive");
  Cluster cluster;
  provenance.radius = radius;
  cluster.provenance = provenance;
  const double r2 = radius * radius;
  for (const Atom& atom : atoms) {
    if ((atom.position - center).squaredNorm() <= r2) cluster.atoms.push_back(atom);
  }
  if (cluster.atoms.empty()) {
    throw EmptyCarve("empty carve for " + stem(provenance) + " at radius " +
                     std::to_string(radius) + " A");
  }
  if (options.recenter) {
    const Vec3 com = center_of_mass(cluster.atoms);
    for (Atom& atom : cluster.atoms) atom.position -= com;
  }
  return cluster;
}

Cluster make_baseline_cluster(Material material, int k, const BaselineOptions& options) {
  const UnitCell cell = build_unit_cell(material, options.cell);
  const double radius = cluster_radius(cell, k, options.radius_reference);
  const Multiplicity s = options.multiplicity == MultiplicityMode::Random
                             ? random_multiplicity(options.seed)
                             : choose_multiplicity(cell, radius);
  const AtomSet supercell = build_supercell(cell, s);

  Vec3 center = center_of_mass(supercell);
  if (options.center == CarveCenter::NearestSite) {
    double best = std::numeric_limits<double>::infinity();
    Vec3 site = center;
    for (const Atom& atom : supercell) {
      const double d = (atom.position - center).squaredNorm();
      if (d < best) {
        best = d;
        site = atom.position;
      }
    }
    center = site;
  }

  Provenance provenance;
  provenance.material = material;
  provenance.radius_index = k;
  return carve_cluster(supercell, center, radius, provenance);
}

}  // namespace mcs
