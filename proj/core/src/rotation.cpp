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

#include "mcs/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>

namespace mcs {

std::vector<Vec3> fibonacci_axes(int count) {
  if (count <= 0) throw InvalidInput("rotation count must be >= 1");
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  std::vector<Vec3> axes;
  axes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double y = 1.0 - 2.0 * (i + 0.5) / count;
    const double phi = 2.0 * std::numbers::pi * i * golden;
    const double ring = std::sqrt(1.0 - y * y);
    axes.emplace_back(ring * std::cos(phi), y, ring * std::sin(phi));
  }
  return axes;
}

std::vector<RotationSpec> rotation_specs(int count, double angle) {
  std::vector<RotationSpec> specs;
  const std::vector<Vec3> axes = fibonacci_axes(count);
  specs.reserve(axes.size());
  for (int i = 0; i < count; ++i) specs.push_back({i, axes[static_cast<std::size_t>(i)], angle});
  return specs;
}

Mat3 skew(const Vec3& n) {
  Mat3 k;
  k << 0.0, -n.z(), n.y(),
       n.z(), 0.0, -n.x(),
       -n.y(), n.x(), 0.0;
  return k;
}

Mat3 rodrigues_matrix(const Vec3& axis, double angle) {
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-6) {
    throw InvalidInput("rotation axis must be a unit vector (|n| = " +
                       std::to_string(axis.norm()) + ")");
  }
  const Mat3 k = skew(axis);
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

void validate_rotation(const Mat3& r, double tolerance) {
  const double ortho = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = r.determinant();
  if (!(ortho <= tolerance) || !(std::abs(det - 1.0) <= tolerance)) {
    throw InvalidInput("matrix is not a proper rotation (orthogonality error " +
                       std::to_string(ortho) + ", det " + std::to_string(det) + ")");
  }
}

Cluster apply_rotation(const Cluster& cluster, const Mat3& r, std::optional<int> rotation_index) {
  validate_rotation(r);
  Cluster out = cluster;
  for (Atom& atom : out.atoms) atom.position = r * atom.position;
  out.provenance.rotation = rotation_index;
  return out;
}

std::vector<Cluster> augment(const Cluster& cluster, int count, double angle) {
  std::vector<Cluster> views;
  views.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (const RotationSpec& spec : rotation_specs(count, angle)) {
    views.push_back(apply_rotation(cluster, rodrigues_matrix(spec.axis, spec.angle), spec.index));
  }
  return views;
}

AxisCoverage axis_coverage(std::span<const Vec3> axes) {
  AxisCoverage cov;
  if (axes.size() < 2) return cov;
  cov.min_neighbor_angle = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < axes.size(); ++j) {
      if (i == j) continue;
      // atan2 keeps precision for nearly parallel axes
      const double angle = std::atan2(axes[i].cross(axes[j]).norm(), axes[i].dot(axes[j]));
      nearest = std::min(nearest, angle);
    }
    cov.min_neighbor_angle = std::min(cov.min_neighbor_angle, nearest);
    cov.max_neighbor_angle = std::max(cov.max_neighbor_angle, nearest);
  }
  return cov;
}

}  // namespace mcs
