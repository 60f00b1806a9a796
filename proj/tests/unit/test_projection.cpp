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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mcs/annotation.hpp"
#include "mcs/cluster.hpp"
#include "mcs/projection.hpp"
#include "mcs/rotation.hpp"
#include "test_support.hpp"

namespace mcs {
namespace {

TEST(Ortho, DropsZ) {
  const std::vector<Vec3> pts{Vec3(1, 2, 3)};
  const auto p = project_ortho(pts);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].u, 1.0);
  EXPECT_EQ(p[0].v, 2.0);
  EXPECT_EQ(p[0].depth, 3.0);
}

TEST(Ortho, CommutesWithZRotation) {
  const Cluster c = make_baseline_cluster(Material::ZnO, 7);
  const double t = 0.7;
  const Mat3 rz = rodrigues_matrix(Vec3::UnitZ(), t);
  const auto a = project_ortho(apply_rotation(c, rz, 0).positions());
  const auto b = project_ortho(c.positions());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].u, std::cos(t) * b[i].u - std::sin(t) * b[i].v, 1e-12);
    EXPECT_NEAR(a[i].v, std::sin(t) * b[i].u + std::cos(t) * b[i].v, 1e-12);
  }
}

TEST(Ortho, RangesEqualBoxExtents) {
  const Cluster c = make_baseline_cluster(Material::Au, 8);
  const auto p = project_ortho(c.positions());
  double ulo = 1e9, uhi = -1e9, vlo = 1e9, vhi = -1e9;
  for (const auto& q : p) {
    ulo = std::min(ulo, q.u);
    uhi = std::max(uhi, q.u);
    vlo = std::min(vlo, q.v);
    vhi = std::max(vhi, q.v);
  }
  const BoxMetrics box = bounding_metrics(c.atoms);
  EXPECT_NEAR(uhi - ulo, box.a, 1e-12);
  EXPECT_NEAR(vhi - vlo, box.b, 1e-12);
}

TEST(Persp, PinholeScaling) {
  const double f = 3.0;
  const std::vector<Vec3> pts{Vec3(1, 1, f), Vec3(1, 1, 2 * f)};
  const auto p = project_persp(pts, f);
  EXPECT_NEAR(p[0].u, 1.0, 1e-15);
  EXPECT_NEAR(p[0].v, 1.0, 1e-15);
  EXPECT_NEAR(p[1].u, 0.5, 1e-15);
  EXPECT_NEAR(p[1].v, 0.5, 1e-15);
  EXPECT_THROW(project_persp(std::vector<Vec3>{Vec3(0, 0, 0)}, f), InvalidInput);
}

TEST(Persp, TelephotoLimitApproachesOrtho) {
  const Cluster c = make_baseline_cluster(Material::Ag, 6);
  const double f = 1e6;
  std::vector<Vec3> moved = c.positions();
  for (Vec3& p : moved) p.z() += f;
  const auto persp = project_persp(moved, f);
  const auto ortho = project_ortho(c.positions());
  for (std::size_t i = 0; i < persp.size(); ++i) {
    EXPECT_NEAR(persp[i].u, ortho[i].u, 1e-4);
    EXPECT_NEAR(persp[i].v, ortho[i].v, 1e-4);
  }
}

const Disk& disk_of(const std::vector<Disk>& disks, std::size_t atom) {
  for (const Disk& d : disks) {
    if (d.atom == atom) return d;
  }
  throw std::out_of_range("no disk for atom");
}

std::size_t non_background(const Image& img, Rgb bg) {
  std::size_t n = 0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) n += img.at(x, y) == bg ? 0 : 1;
  return n;
}

TEST(Raster, SingleAtomCentredDisk) {
  Cluster c;
  c.atoms.push_back({Species::Au, Vec3::Zero()});
  const RenderSpec spec;
  const Image img = rasterize(c, spec);
  ASSERT_EQ(img.width, 512);
  ASSERT_EQ(img.height, 512);
  const auto disks = layout_disks(c, spec);
  ASSERT_EQ(disks.size(), 1u);
  EXPECT_NEAR(disks[0].cx, 256.0, 1e-9);
  EXPECT_NEAR(disks[0].cy, 256.0, 1e-9);
  const double r = disks[0].radius;
  EXPECT_NEAR(r, 0.45 * 512, 1e-9);
  for (int y = 0; y < 512; ++y) {
    for (int x = 0; x < 512; ++x) {
      if (img.at(x, y) == spec.background) continue;
      EXPECT_EQ(img.at(x, y), default_style(Species::Au).color);
      const double dx = x + 0.5 - 256, dy = y + 0.5 - 256;
      EXPECT_LE(dx * dx + dy * dy, r * r);
    }
  }
  EXPECT_GT(non_background(img, spec.background), 0u);
}

TEST(Raster, Deterministic) {
  const Cluster c = make_baseline_cluster(Material::PbS, 7);
  EXPECT_EQ(rasterize(c), rasterize(c));
}

TEST(Raster, NearerAtomWins) {
  Cluster c;
  c.atoms.push_back({Species::Au, Vec3(0, 0, 1.0)});   // nearer (viewer at +z)
  c.atoms.push_back({Species::Ag, Vec3(0.5, 0, -1.0)});
  const Image img = rasterize(c);
  const auto disks = layout_disks(c, RenderSpec{});
  const int x = static_cast<int>((disk_of(disks, 0).cx + disk_of(disks, 1).cx) / 2);
  const int y = static_cast<int>(disk_of(disks, 0).cy);
  EXPECT_EQ(img.at(x, y), default_style(Species::Au).color);

  Cluster swapped;
  swapped.atoms = {c.atoms[1], c.atoms[0]};
  const Image img2 = rasterize(swapped);
  EXPECT_EQ(img2.at(x, y), default_style(Species::Au).color);
}

TEST(Raster, TieLaterIndexOnTop) {
  Cluster c;
  c.atoms.push_back({Species::Au, Vec3(0, 0, 0)});
  c.atoms.push_back({Species::Ag, Vec3(0.2, 0, 0)});
  const Image img = rasterize(c);
  const auto disks = layout_disks(c, RenderSpec{});
  EXPECT_EQ(disks.back().atom, 1u);
  EXPECT_EQ(img.at(static_cast<int>(disk_of(disks, 0).cx), static_cast<int>(disk_of(disks, 0).cy)),
            default_style(Species::Ag).color);
}

TEST(Raster, CentresInsideFrameAndRadiusRatio) {
  RenderSpec spec;
  for (Material m : kAllMaterials) {
    const Cluster c = apply_rotation(make_baseline_cluster(m, 9), rodrigues_matrix(fibonacci_axes(7)[3], 0.6), 3);
    const auto disks = layout_disks(c, spec);
    for (const Disk& d : disks) {
      EXPECT_GE(d.cx - d.radius, spec.margin * spec.width - 1e-6);
      EXPECT_LE(d.cx + d.radius, (1 - spec.margin) * spec.width + 1e-6);
      EXPECT_GE(d.cy - d.radius, spec.margin * spec.height - 1e-6);
      EXPECT_LE(d.cy + d.radius, (1 - spec.margin) * spec.height + 1e-6);
      const double expected = disks[0].radius * spec.style(c.atoms[d.atom].species).covalent_radius /
                              spec.style(c.atoms[disks[0].atom].species).covalent_radius;
      EXPECT_NEAR(d.radius, expected, 1.0);
    }
  }
}

TEST(Raster, PerspectiveModeRenders) {
  RenderSpec spec;
  spec.mode = ProjectionMode::Perspective;
  const Cluster c = make_baseline_cluster(Material::ZnO, 8);
  const Image img = rasterize(c, spec);
  EXPECT_GT(non_background(img, spec.background), 1000u);
  EXPECT_FALSE(img == rasterize(c));
  EXPECT_EQ(img, rasterize(c, spec));
}

TEST(Raster, SpecValidation) {
  RenderSpec spec;
  spec.width = 0;
  EXPECT_THROW(spec.validate(), InvalidInput);
  spec = RenderSpec{};
  spec.margin = 0.5;
  EXPECT_THROW(spec.validate(), InvalidInput);
  EXPECT_EQ(parse_projection_mode("persp"), ProjectionMode::Perspective);
  EXPECT_EQ(parse_projection_mode("orthographic"), ProjectionMode::Orthographic);
}

TEST(Palette, FrozenValues) {
  EXPECT_EQ(default_style(Species::Ag).color, (Rgb{0xC0, 0xC0, 0xC0}));
  EXPECT_EQ(default_style(Species::Au).color, (Rgb{0xFF, 0xD7, 0x00}));
  EXPECT_EQ(default_style(Species::O).color, (Rgb{0xFF, 0x0D, 0x0D}));
  EXPECT_DOUBLE_EQ(default_style(Species::Pb).covalent_radius, 1.46);
  EXPECT_DOUBLE_EQ(default_style(Species::S).covalent_radius, 1.05);
  EXPECT_DOUBLE_EQ(default_style(Species::Zn).covalent_radius, 1.22);
}

}  // namespace
}  // namespace mcs
