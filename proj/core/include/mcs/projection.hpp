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
#include <span>
#include <string_view>
#include <vector>

#include "mcs/cluster.hpp"
#include "mcs/types.hpp"

namespace mcs {

enum class ProjectionMode : std::uint8_t { Orthographic, Perspective };

std::string_view name(ProjectionMode m);
std::optional<ProjectionMode> parse_projection_mode(std::string_view text);

struct ProjectedPoint {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

/// (u, v) = (x, y); depth = z.
std::vector<ProjectedPoint> project_ortho(std::span<const Vec3> points);

/// Pinhole camera at the origin looking along +z: (u, v) = (f x / z, f y / z).
/// Throws InvalidInput if any z <= 0.
std::vector<ProjectedPoint> project_persp(std::span<const Vec3> points, double focal_length);

struct ElementStyle {
  Rgb color;
  double covalent_radius = 1.0;  // Angstrom
};

ElementStyle default_style(Species s);

struct RenderSpec {
  ProjectionMode mode = ProjectionMode::Orthographic;
  double focal_length = 0.0;     // perspective only; 0 selects 2 R
  double camera_distance = 0.0;  // perspective only; 0 selects 4 R
  int width = 512;
  int height = 512;
  double margin = 0.05;
  Rgb background{255, 255, 255};
  std::array<ElementStyle, 6> styles{default_style(Species::Ag), default_style(Species::Au),
                                     default_style(Species::Pb), default_style(Species::S),
                                     default_style(Species::Zn), default_style(Species::O)};

  const ElementStyle& style(Species s) const { return styles[static_cast<std::size_t>(s)]; }
  void validate() const;
};

/// Row-major RGB8 raster.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, Rgb fill);

  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
  friend bool operator==(const Image&, const Image&) = default;
};

/// One atom as placed in pixel space. `order` is the painter's draw order.
struct Disk {
  std::size_t atom = 0;
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  Rgb color;
};

/// Disks in draw order (farthest first; equal depth draws the later atom last).
/// The global scale makes the union of projected disks span (1 - 2 margin)
/// of the shorter image side.
std::vector<Disk> layout_disks(const Cluster& cluster, const RenderSpec& spec);

Image rasterize(const Cluster& cluster, const RenderSpec& spec = {});

}  // namespace mcs
