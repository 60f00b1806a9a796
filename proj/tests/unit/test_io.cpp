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

#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>

#include "mcs/annotation.hpp"
#include "mcs/cluster.hpp"
#include "mcs/io.hpp"
#include "mcs/metrics_text.hpp"
#include "mcs/rotation.hpp"
#include "test_support.hpp"

namespace mcs {
namespace {

TEST(Xyz, RoundTripWithinPrintedPrecision) {
  for (Material m : kAllMaterials) {
    Cluster c = apply_rotation(make_baseline_cluster(m, 7), rodrigues_matrix(Vec3::UnitY(), 0.4), 3);
    const std::string text = write_xyz(c);
    const Cluster back = read_xyz(text);
    ASSERT_EQ(back.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_EQ(back.atoms[i].species, c.atoms[i].species);
      EXPECT_LE((back.atoms[i].position - c.atoms[i].position).cwiseAbs().maxCoeff(), 5e-7);
    }
    EXPECT_EQ(back.provenance.material, m);
    EXPECT_EQ(back.provenance.radius_index, 7);
    EXPECT_EQ(back.provenance.rotation, 3);
    EXPECT_EQ(write_xyz(back), text);
  }
}

TEST(Xyz, Layout) {
  const Cluster c = make_baseline_cluster(Material::Ag, 6);
  const std::string text = write_xyz(c);
  EXPECT_EQ(text.substr(0, 3), "28\n");
  EXPECT_NE(text.find("rotation=base"), std::string::npos);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.find("-0.000000"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(Xyz, TolerantReader) {
  const Cluster c = read_xyz("2\r\nProperties=species:S:1:pos:R:3 material=\"Au\"\r\n"
                             "Au 1.0e1 0 +0.5 extra\r\n\r\n  au   -1   2   3\r\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.atoms[0].position, Vec3(10, 0, 0.5));
  EXPECT_EQ(c.atoms[1].species, Species::Au);
  EXPECT_EQ(c.provenance.material, Material::Au);
}

std::size_t error_line(std::string_view text) {
  try {
    read_xyz(text);
  } catch (const XyzParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(Xyz, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("5\nc\nAg 0 0 0\nAg 1 0 0\nAg 2 0 0\nAg 3 0 0\n"), 6u);
  EXPECT_EQ(error_line("2\nc\nAg 0 0 0\nXx 1 0 0\n"), 4u);
  EXPECT_EQ(error_line("2\nc\nAg 0 0 0\nAg 1 zero 0\n"), 4u);
  EXPECT_EQ(error_line("1\nc\nAg 0 0 0\nAg 1 0 0\n"), 4u);
  EXPECT_EQ(error_line("two\nc\n"), 1u);
  EXPECT_EQ(error_line(""), 1u);
}

TEST(Png, RoundTripAndDeterminism) {
  Image img(7, 5, Rgb{255, 255, 255});
  img.pixels[3] = 10;
  img.pixels[img.pixels.size() - 1] = 200;
  const auto a = encode_png(img);
  const auto b = encode_png(img);
  EXPECT_EQ(a, b);
  ASSERT_GE(a.size(), 8u);
  EXPECT_EQ(a[1], 'P');
  const Image back = decode_png(a);
  EXPECT_EQ(back.width, 7);
  EXPECT_EQ(back.height, 5);
  EXPECT_EQ(back.pixels, img.pixels);
  const std::string raw(a.begin(), a.end());
  EXPECT_EQ(raw.find("tEXt"), std::string::npos);
  EXPECT_EQ(raw.find("tIME"), std::string::npos);
  EXPECT_THROW(decode_png(std::vector<std::uint8_t>{1, 2, 3}), std::exception);
}

TEST(AnnotationJson, CanonicalAndThreeDecimal) {
  const Cluster c = make_baseline_cluster(Material::ZnO, 8);
  AnnotationOptions opt;
  opt.with_rdf = true;
  const AnnotationRecord r = annotate(c, opt);
  const std::string text = write_annotation_json(r);
  EXPECT_EQ(canonical_json(text), text);
  const auto j = nlohmann::ordered_json::parse(text);
  EXPECT_EQ(j.begin().key(), "stem");
  EXPECT_EQ(j["stem"], "ZnO_R8_rotbase");
  EXPECT_EQ(j["rotation"], "base");
  EXPECT_EQ(j["V"].get<double>(), std::stod(format_fixed3(r.volume)));
  EXPECT_TRUE(j.contains("rdf"));
  const AnnotationRecord back = read_annotation_json(text);
  EXPECT_EQ(back.atom_count, r.atom_count);
  EXPECT_EQ(write_annotation_json(back), text);
}

TEST(AnnotationJson, SummaryNumbersComeFromRecord) {
  for (Material m : kAllMaterials) {
    for (int k = 6; k <= 10; ++k) {
      const AnnotationRecord r = annotate(make_baseline_cluster(m, k));
      const auto j = nlohmann::json::parse(write_annotation_json(r));
      std::vector<std::int64_t> values;
      for (const char* key : {"a", "b", "c", "V", "nn_mean", "density_g_cm3", "atom_count",
                              "radius_index", "coordination_mean", "radius"}) {
        values.push_back(static_cast<std::int64_t>(std::llround(j[key].get<double>() * 1000)));
      }
      for (std::int64_t n : extract_numbers(render_summary(r))) {
        EXPECT_NE(std::find(values.begin(), values.end(), n), values.end())
            << name(m) << k << " number " << n;
      }
    }
  }
}

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(std::string_view("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Files, AtomicWriteLeavesNoTemporaries) {
  const auto dir = std::filesystem::temp_directory_path() / "mcs_io_test";
  std::filesystem::remove_all(dir);
  write_file_atomic(dir / "a" / "b.txt", std::string_view("hello"));
  EXPECT_EQ(read_text_file(dir / "a" / "b.txt"), "hello");
  write_file_atomic(dir / "a" / "b.txt", std::string_view("bye"));
  EXPECT_EQ(read_text_file(dir / "a" / "b.txt"), "bye");
  std::size_t files = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) files += e.is_regular_file();
  EXPECT_EQ(files, 1u);
  EXPECT_THROW(read_text_file(dir / "missing"), IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mcs
