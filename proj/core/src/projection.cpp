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

#include "mcs/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mcs {

std::string_view name(ProjectionMode m) {
  return m == ProjectionMode::Perspective ? "perspective" : "orthographic";
}

std::optional<ProjectionMode> parse_projection_mode(std::string_view text) {
  if (text == "orthographic" || text == "ortho") return ProjectionMode::Orthographic;
  if (text == "perspective" || text == "persp") return ProjectionMode::Perspective;
  return std::nullopt;
}

std::vector<ProjectedPoint> project_ortho(std::span<const Vec3> points) {
  std::vector<ProjectedPoint> out;
  out.reserve(points.size());
  for (const Vec3& p : points) out.push_back({p.x(), p.y(), p.z()});
  return out;
}

std::vector<ProjectedPoint> project_persp(std::span<const Vec3> points, double focal_length) {
  if (!(focal_length > 0.0)) throw InvalidInput("focal length must be positive");
  std::vector<ProjectedPoint> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& p = points[i];
    if (!(p.z() > 0.0)) {
      throw InvalidInput("perspective projection: point " + std::to_string(i) +
                         " lies at or behind the camera (z = " + std::to_string(p.z()) + ")");
    }
    out.push_back({focal_length * p.x() / p.z(), focal_length * p.y() / p.z(), p.z()});
  }
  return out;
}

ElementStyle default_style(Species s) {
  switch (s) {
    case Species::Ag: return {{0xC0, 0xC0, 0xC0}, 1.45};
    case Species::Au: return {{0xFF, 0xD7, 0x00}, 1.36};
    case Species::Pb: return {{0x57, 0x59, 0x61}, 1.46};
    case Species::S: return {{0xFF, 0xFF, 0x30}, 1.05};
    case Species::Zn: return {{0x7D, 0x80, 0xB0}, 1.22};
    case Species::O: return {{0xFF, 0x0D, 0x0D}, 0.66};
  }
  return {};
}

void RenderSpec::validate() const {
  if (width < 16 || height < 16) throw InvalidInput("image size must be at least 16x16");
  if (!(margin >= 0.0 && margin < 0.45)) throw InvalidInput("margin must lie in [0, 0.45)");
  if (mode == ProjectionMode::Perspective) {
    if (focal_length < 0.0) throw InvalidInput("focal length must be positive");
    if (camera_distance < 0.0) throw InvalidInput("camera distance must be positive");
  }
  for (const ElementStyle& s : styles) {
    if (!(s.covalent_radius > 0.0)) throw InvalidInput("covalent radii must be positive");
  }
}

Image::Image(int w, int h, Rgb fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(3) * w * h) {
  for (std::size_t i = 0; i < pixels.size(); i += 3) {
    pixels[i] = fill.r;
    pixels[i + 1] = fill.g;
    pixels[i + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
  return {pixels[i], pixels[i + 1], pixels[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
  const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
  pixels[i] = c.r;
  pixels[i + 1] = c.g;
  pixels[i + 2] = c.b;
}

namespace {

double reference_radius(const Cluster& cluster) {
  if (cluster.provenance.radius > 0.0) return cluster.provenance.radius;
  Vec3 centroid = Vec3::Zero();
  for (const Atom& a : cluster.atoms) centroid += a.position;
  centroid /= static_cast<double>(cluster.atoms.size());
  double r = 0.0;
  for (const Atom& a : cluster.atoms) r = std::max(r, (a.position - centroid).norm());
  return r > 0.0 ? r : 1.0;
}

}  // namespace

std::vector<Disk> layout_disks(const Cluster& cluster, const RenderSpec& spec) {
  spec.validate();
  if (cluster.atoms.empty()) throw InvalidInput("cannot render an empty cluster");
  const std::size_t n = cluster.atoms.size();

  std::vector<ProjectedPoint> projected;
  std::vector<double> world_radius(n);
  // nearness: larger means closer to the viewer
  std::vector<double> nearness(n);
  if (spec.mode == ProjectionMode::Orthographic) {
    projected = project_ortho(cluster.positions());
    for (std::size_t i = 0; i < n; ++i) {
      world_radius[i] = spec.style(cluster.atoms[i].species).covalent_radius;
      nearness[i] = projected[i].depth;
    }
  } else {
    // Viewer on the +z side looking down -z, so the image keeps the
    // orthographic handedness; camera-frame depth = z0 - z.
    const double r = reference_radius(cluster);
    const double z0 = spec.camera_distance > 0.0 ? spec.camera_distance : 4.0 * r;
    const double f = spec.focal_length > 0.0 ? spec.focal_length : 2.0 * r;
    std::vector<Vec3> camera;
    camera.reserve(n);
    for (const Atom& a : cluster.atoms) {
      camera.emplace_back(a.position.x(), a.position.y(), z0 - a.position.z());
    }
    projected = project_persp(camera, f);
    for (std::size_t i = 0; i < n; ++i) {
      world_radius[i] =
          spec.style(cluster.atoms[i].species).covalent_radius * f / projected[i].depth;
      nearness[i] = -projected[i].depth;
    }
  }

  double umin = projected[0].u - world_radius[0];
  double umax = projected[0].u + world_radius[0];
  double vmin = projected[0].v - world_radius[0];
  double vmax = projected[0].v + world_radius[0];
  for (std::size_t i = 1; i < n; ++i) {
    umin = std::min(umin, projected[i].u - world_radius[i]);
    umax = std::max(umax, projected[i].u + world_radius[i]);
    vmin = std::min(vmin, projected[i].v - world_radius[i]);
    vmax = std::max(vmax, projected[i].v + world_radius[i]);
  }
  const double side = std::max(umax - umin, vmax - vmin);
  const int frame = std::min(spec.width, spec.height);
  const double scale = (1.0 - 2.0 * spec.margin) * frame / side;
  const double uc = 0.5 * (umin + umax);
  const double vc = 0.5 * (vmin + vmax);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return nearness[x] < nearness[y]; });

  std::vector<Disk> disks;
  disks.reserve(n);
  for (std::size_t i : order) {
    disks.push_back({i, 0.5 * spec.width + scale * (projected[i].u - uc),
                     0.5 * spec.height - scale * (projected[i].v - vc), scale * world_radius[i],
                     spec.style(cluster.atoms[i].species).color});
  }
  return disks;
}

Image rasterize(const Cluster& cluster, const RenderSpec& spec) {
  const std::vector<Disk> disks = layout_disks(cluster, spec);
  Image image(spec.width, spec.height, spec.background);
  for (const Disk& d : disks) {
    const int x0 = std::max(0, static_cast<int>(std::floor(d.cx - d.radius)));
    const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(d.cx + d.radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(d.cy - d.radius)));
    const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(d.cy + d.radius)));
    const double r2 = d.radius * d.radius;
    for (int y = y0; y <= y1; ++y) {
      const double dy = y + 0.5 - d.cy;
      for (int x = x0; x <= x1; ++x) {
        const double dx = x + 0.5 - d.cx;
        if (dx * dx + dy * dy <= r2) image.set(x, y, d.color);
      }
    }
  }
  return image;
}

}  // namespace mcs
