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

#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "mcs/cluster.hpp"
#include "mcs/types.hpp"

namespace mcs {

inline constexpr int kCanonicalRotations = 780;
inline constexpr double kCanonicalAngle = std::numbers::pi / 5.0;

struct RotationSpec {
  int index = 0;
  Vec3 axis = Vec3::UnitZ();
  double angle = 0.0;
};

/// Golden-angle spiral on S^2: y_i = 1 - 2(i + 1/2)/N, phi_i = 2 pi i phi,
/// phi = (sqrt 5 - 1)/2. Ordered by i.
std::vector<Vec3> fibonacci_axes(int count);

std::vector<RotationSpec> rotation_specs(int count, double angle);

/// Cross-product matrix [n]x with [n]x v = n x v.
Mat3 skew(const Vec3& n);

/// I + sin t [n]x + (1 - cos t) [n]x^2. The axis must already be unit length
/// (|1 - |n|| <= 1e-6); it is not normalized here.
Mat3 rodrigues_matrix(const Vec3& axis, double angle);

/// Throws unless R^T R = I and det R = 1 within `tolerance`.
void validate_rotation(const Mat3& r, double tolerance = 1e-9);

/// r'' = R r' for every atom. Species, order and the rest of the provenance
/// are kept; the rotation index is replaced by `rotation_index`.
Cluster apply_rotation(const Cluster& cluster, const Mat3& r, std::optional<int> rotation_index);

/// The `count` Fibonacci-axis views of `cluster` at fixed `angle`, index order.
std::vector<Cluster> augment(const Cluster& cluster, int count, double angle);

/// Nearest-neighbour angular spacing of an axis set, in radians.
struct AxisCoverage {
  double min_neighbor_angle = 0.0;
  double max_neighbor_angle = 0.0;
};

AxisCoverage axis_coverage(std::span<const Vec3> axes);

}  // namespace mcs
