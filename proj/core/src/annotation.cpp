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

#include "mcs/annotation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace mcs {

BoxMetrics bounding_metrics(std::span<const Atom> atoms) {
  if (atoms.empty()) throw InvalidInput("bounding metrics of an empty cluster");
  Vec3 lo = atoms.front().position;
  Vec3 hi = lo;
  for (const Atom& atom : atoms) {
    lo = lo.cwiseMin(atom.position);
    hi = hi.cwiseMax(atom.position);
  }
  const Vec3 extent = hi - lo;
  return {extent.x(), extent.y(), extent.z(), extent.x() * extent.y() * extent.z()};
}

double mean_nn_distance(std::span<const Atom> atoms) {
  if (atoms.size() < 2) {
    throw DegenerateCluster("mean nearest-neighbour distance needs at least two atoms");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (i != j) best = std::min(best, (atoms[i].position - atoms[j].position).squaredNorm());
    }
    sum += std::sqrt(best);
  }
  return sum / static_cast<double>(atoms.size());
}

MassDensity mass_density(std::span<const Atom> atoms, double volume) {
  if (!(volume > 0.0)) throw DegenerateCluster("mass density needs a positive volume");
  double mass = 0.0;
  for (const Atom& atom : atoms) mass += atomic_mass(atom.species);
  const double rho = mass / volume;
  return {rho, rho * kAmuPerCubicAngstromToGramPerCubicCm};
}

Coordination coordination_numbers(std::span<const Atom> atoms, double cutoff) {
  if (!(cutoff > 0.0)) throw InvalidInput("coordination cutoff must be positive");
  Coordination out;
  out.per_atom.assign(atoms.size(), 0);
  const double c2 = cutoff * cutoff;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if ((atoms[i].position - atoms[j].position).squaredNorm() <= c2) {
        ++out.per_atom[i];
        ++out.per_atom[j];
      }
    }
  }
  if (!atoms.empty()) {
    long long total = 0;
    for (int n : out.per_atom) total += n;
    out.mean = static_cast<double>(total) / static_cast<double>(atoms.size());
  }
  return out;
}

RdfTable rdf(const Cluster& cluster, double dr, double r_max) {
  if (!(dr > 0.0) || !(r_max > dr)) throw InvalidInput("rdf grid needs dr > 0 and r_max > dr");
  const auto bins = static_cast<std::size_t>(std::ceil(r_max / dr - 1e-9));
  RdfTable table;
  table.dr = dr;
  table.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) table.edges[b] = static_cast<double>(b) * dr;
  table.g.assign(bins, 0.0);

  const std::size_t n = cluster.atoms.size();
  if (n < 2) return table;

  double radius = cluster.provenance.radius;
  if (!(radius > 0.0)) {
    const Vec3 com = center_of_mass(cluster.atoms);
    for (const Atom& atom : cluster.atoms) radius = std::max(radius, (atom.position - com).norm());
  }
  if (!(radius > 0.0)) return table;
  const double volume = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  table.number_density = static_cast<double>(n) / volume;

  std::vector<double> counts(bins, 0.0);
  const double top = table.edges.back();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (cluster.atoms[i].position - cluster.atoms[j].position).norm();
      if (d > top) continue;
      const auto b = std::min(bins - 1, static_cast<std::size_t>(d / dr));
      counts[b] += 2.0;  // (i, j) and (j, i)
    }
  }
  for (std::size_t b = 0; b < bins; ++b) {
    const double r = table.center(b);
    table.g[b] = counts[b] /
                 (4.0 * std::numbers::pi * r * r * dr * table.number_density * static_cast<double>(n));
  }
  return table;
}

AnnotationRecord annotate(const Cluster& cluster, const AnnotationOptions& options) {
  if (cluster.atoms.empty()) throw InvalidInput("cannot annotate an empty cluster");
  AnnotationRecord rec;
  rec.provenance = cluster.provenance;
  rec.atom_count = cluster.atoms.size();
  for (const Atom& atom : cluster.atoms) ++rec.species_counts[static_cast<std::size_t>(atom.species)];

  const BoxMetrics box = bounding_metrics(cluster.atoms);
  rec.a = box.a;
  rec.b = box.b;
  rec.c = box.c;
  rec.volume = box.volume;

  if (cluster.atoms.size() < 2) {
    rec.degenerate = true;
  } else {
    rec.nn_mean = mean_nn_distance(cluster.atoms);
    rec.coordination_cutoff = options.coordination_factor * rec.nn_mean;
    if (rec.coordination_cutoff > 0.0) {
      rec.coordination_mean = coordination_numbers(cluster.atoms, rec.coordination_cutoff).mean;
    }
  }
  if (rec.volume > 0.0) {
    const MassDensity rho = mass_density(cluster.atoms, rec.volume);
    rec.density_u_per_A3 = rho.u_per_A3;
    rec.density_g_per_cm3 = rho.g_per_cm3;
  } else {
    rec.degenerate = true;
  }

  if (options.with_rdf) {
    double radius = cluster.provenance.radius;
    if (!(radius > 0.0)) radius = std::max({box.a, box.b, box.c, options.rdf_dr});
    rec.rdf = rdf(cluster, options.rdf_dr, options.rdf_max_factor * radius);
  }
  return rec;
}

std::string format_fixed3(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  std::string out(buf);
  if (out == "-0.000") out = "0.000";
  return out;
}

std::size_t whitespace_token_count(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t count = 0;
  for (std::string token; in >> token;) ++count;
  return count;
}

std::string render_summary(const AnnotationRecord& r) {
  const std::string material =
      r.provenance.material ? std::string(name(*r.provenance.material)) : std::string("Unknown");
  std::string text = material + " cluster R" + std::to_string(r.provenance.radius_index) + ", " +
                     std::to_string(r.atom_count) + " atoms; cell a=" + format_fixed3(r.a) +
                     " b=" + format_fixed3(r.b) + " c=" + format_fixed3(r.c) +
                     " Å, V=" + format_fixed3(r.volume) + " Å³; mean NN " +
                     format_fixed3(r.nn_mean) + " Å; coord " +
                     format_fixed3(r.coordination_mean) + "; density " +
                     format_fixed3(r.density_g_per_cm3) + " g/cm³.";
  if (whitespace_token_count(text) > kMaxSummaryTokens) {
    throw std::logic_error("summary template exceeds " + std::to_string(kMaxSummaryTokens) +
                           " tokens");
  }
  return text;
}

}  // namespace mcs
