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

#include <cstdlib>

#include "mcs/config.hpp"

namespace mcs {
namespace {

TEST(Config, DefaultIsCanonical) {
  const GenerationConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(c.is_canonical());
  EXPECT_EQ(c.expected_triplets(), 15620u);
}

TEST(Config, JsonRoundTrip) {
  GenerationConfig c;
  c.materials = {Material::PbS};
  c.radius_indices = {7, 9};
  c.rotations = 4;
  c.render.width = 128;
  c.annotation.with_rdf = true;
  const GenerationConfig back = GenerationConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.hash(), c.hash());
  EXPECT_FALSE(back.is_canonical());
}

TEST(Config, HashTracksGenerationFields) {
  const GenerationConfig base;
  GenerationConfig other = base;
  other.output_root = "/elsewhere";
  other.jobs = 7;
  EXPECT_EQ(other.hash(), base.hash());

  auto differs = [&](auto mutate) {
    GenerationConfig c = base;
    mutate(c);
    return c.hash() != base.hash();
  };
  EXPECT_TRUE(differs([](GenerationConfig& c) { c.rotations = 779; }));
  EXPECT_TRUE(differs([](GenerationConfig& c) { c.angle = 0.5; }));
  EXPECT_TRUE(differs([](GenerationConfig& c) { c.materials.pop_back(); }));
  EXPECT_TRUE(differs([](GenerationConfig& c) { c.radius_indices.push_back(11); }));
  EXPECT_TRUE(differs([](GenerationConfig& c) { c.baseline.seed = 1; }));
  EXPECT_TRUE(differs([](GenerationConfig& c) { c.render.height = 256; }));
  EXPECT_TRUE(differs([](GenerationConfig& c) { c.annotation.coordination_factor = 1.3; }));
}

TEST(Config, StrictParsing) {
  EXPECT_THROW(GenerationConfig::from_json("{\"rotation\": 3}"), InvalidInput);
  EXPECT_THROW(GenerationConfig::from_json("{\"render\": {\"colour\": 1}}"), InvalidInput);
  EXPECT_THROW(GenerationConfig::from_json("not json"), InvalidInput);
  EXPECT_THROW(GenerationConfig::from_json("{\"materials\": [\"Cu\"]}"), InvalidInput);
  EXPECT_EQ(GenerationConfig::from_json("{}").hash(), GenerationConfig{}.hash());
}

TEST(Config, Validation) {
  GenerationConfig c;
  c.rotations = -1;
  EXPECT_THROW(c.validate(), InvalidInput);
  c = {};
  c.radius_indices = {0};
  EXPECT_THROW(c.validate(), InvalidInput);
  c = {};
  c.materials.clear();
  EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(Config, EnvironmentRoot) {
  ::setenv("MCSGEN_OUTPUT_ROOT", "/tmp/somewhere", 1);
  EXPECT_EQ(default_output_root(), "/tmp/somewhere");
  ::unsetenv("MCSGEN_OUTPUT_ROOT");
  EXPECT_EQ(default_output_root(), "mcs_dataset");
}

}  // namespace
}  // namespace mcs
