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

#include <filesystem>
#include <map>

#include "mcs/evaluation.hpp"
#include "mcs/io.hpp"
#include "mcs/manifest.hpp"
#include "mcs/pipeline.hpp"

namespace fs = std::filesystem;

namespace mcs {
namespace {

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    out[fs::relative(e.path(), root).generic_string()] = sha256_hex(read_text_file(e.path()));
  }
  return out;
}

std::map<std::string, fs::file_time_type> mtimes(const fs::path& root) {
  std::map<std::string, fs::file_time_type> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[e.path().string()] = e.last_write_time();
  }
  return out;
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() / ("mcs_pipeline_" + std::string(
        ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    config_.materials = {Material::Ag, Material::ZnO};
    config_.radius_indices = {6, 7};
    config_.rotations = 2;
    config_.render.width = config_.render.height = 96;
    config_.output_root = root_;
    config_.jobs = 1;
  }
  void TearDown() override {
    fs::remove_all(root_);
    fs::remove_all(root_.string() + "_b");
  }

  fs::path root_;
  GenerationConfig config_;
};

TEST(Plan, CanonicalCountAndOrder) {
  const GenerationConfig c;
  const auto tasks = plan(c);
  ASSERT_EQ(tasks.size(), 15620u);
  EXPECT_EQ(tasks.front().material, Material::Ag);
  EXPECT_FALSE(tasks.front().rotation);
  EXPECT_EQ(tasks[1].rotation, 0);
  EXPECT_EQ(tasks.back().material, Material::ZnO);
  EXPECT_EQ(tasks.back().radius_index, 10);
  EXPECT_EQ(tasks.back().rotation, 779);
}

TEST_F(PipelineTest, SmallRunCounts) {
  config_.materials = {Material::Ag};
  config_.radius_indices = {6};
  std::size_t last = 0;
  GenerateOptions opt;
  opt.progress = [&](std::size_t done, std::size_t) { last = done; };
  const GenerationReport r = generate(config_, opt);
  EXPECT_EQ(r.exit_code(), kExitOk);
  EXPECT_EQ(r.planned, 3u);
  EXPECT_EQ(r.written, 3u);
  EXPECT_EQ(last, 3u);
  EXPECT_TRUE(fs::exists(root_ / "Ag/R6/xyz/Ag_R6_rotbase.xyz"));
  EXPECT_TRUE(fs::exists(root_ / "Ag/R6/ann/Ag_R6_rot1.txt"));
  EXPECT_TRUE(fs::exists(root_ / "config.json"));
  EXPECT_FALSE(fs::exists(root_ / ".journal"));
}

TEST_F(PipelineTest, ResumeRewritesNothing) {
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  const auto before = snapshot(root_);
  const auto times = mtimes(root_);
  const GenerationReport r = generate(config_);
  EXPECT_EQ(r.written, 0u);
  EXPECT_EQ(r.skipped, r.planned);
  EXPECT_EQ(snapshot(root_), before);
  for (const auto& [path, t] : mtimes(root_)) {
    if (path.ends_with(".json") && path.find("manifest") != std::string::npos) continue;
    EXPECT_EQ(t, times.at(path)) << path;
  }
}

TEST_F(PipelineTest, ResumeRepairsDamage) {
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  const auto before = snapshot(root_);
  fs::remove(root_ / "ZnO/R7/png/ZnO_R7_rot0.png");
  write_file_atomic(root_ / "Ag/R6/ann/Ag_R6_rot1.txt", std::string_view("garbage\n"));
  const GenerationReport r = generate(config_);
  EXPECT_EQ(r.exit_code(), kExitOk);
  EXPECT_EQ(r.written, 2u);
  EXPECT_EQ(snapshot(root_), before);
}

TEST_F(PipelineTest, DeterministicAcrossJobCounts) {
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  GenerationConfig other = config_;
  other.output_root = root_.string() + "_b";
  other.jobs = 4;
  ASSERT_EQ(generate(other).exit_code(), kExitOk);
  EXPECT_EQ(snapshot(root_), snapshot(other.output_root));
}

TEST_F(PipelineTest, RefusesForeignConfig) {
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  GenerationConfig changed = config_;
  changed.rotations = 3;
  EXPECT_THROW(generate(changed), InvalidInput);
  GenerateOptions opt;
  opt.overwrite = true;
  const GenerationReport r = generate(changed, opt);
  EXPECT_EQ(r.exit_code(), kExitOk);
  EXPECT_EQ(r.manifest.manifest.entries.size(), 16u);
  EXPECT_TRUE(validate_dataset(root_).empty());
}

TEST_F(PipelineTest, TripletMembersAgree) {
  config_.materials = {Material::PbS};
  config_.radius_indices = {8};
  config_.rotations = 1;
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  const Cluster c = read_xyz(read_text_file(root_ / "PbS/R8/xyz/PbS_R8_rotbase.xyz"));
  const auto j = nlohmann::json::parse(read_text_file(root_ / "PbS/R8/ann/PbS_R8_rotbase.json"));
  EXPECT_EQ(j["atom_count"].get<std::size_t>(), c.size());
  const Image img = decode_png(read_binary_file(root_ / "PbS/R8/png/PbS_R8_rotbase.png"));
  EXPECT_EQ(img.width, 96);
  const std::string txt = read_text_file(root_ / "PbS/R8/ann/PbS_R8_rotbase.txt");
  EXPECT_EQ(txt, render_summary(read_annotation_json(read_text_file(
                     root_ / "PbS/R8/ann/PbS_R8_rotbase.json"))) + "\n");
}

TEST_F(PipelineTest, SelfEvaluation) {
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  const Task1Scores t1 = evaluate_task1(root_, root_);
  EXPECT_EQ(t1.samples, 12u);
  for (const auto& m : t1.mae) EXPECT_EQ(*m, 0.0);
  EXPECT_DOUBLE_EQ(t1.bleu, 1.0);
  EXPECT_DOUBLE_EQ(t1.rouge.rougeL, 1.0);
  EXPECT_DOUBLE_EQ(t1.fact_score, 1.0);
  EXPECT_DOUBLE_EQ(t1.material_match, 1.0);

  DatasetFilter only_base;
  only_base.baselines_only = true;
  EXPECT_EQ(evaluate_task1(root_, root_, only_base).samples, 4u);

  const Task2Evaluation t2 = evaluate_task2(root_, root_);
  EXPECT_EQ(t2.scores.samples, 12u);
  EXPECT_EQ(t2.scores.validity, 100.0);
  EXPECT_EQ(*t2.scores.atom_count_error, 0.0);
  EXPECT_LT(*t2.scores.rmsd, 1e-5);
  EXPECT_EQ(*t2.scores.match_rate, 100.0);
  EXPECT_NE(task2_table(t2.scores).find("Validity"), std::string::npos);
  EXPECT_NO_THROW(nlohmann::json::parse(task2_scores_json(t2)));
  EXPECT_NO_THROW(nlohmann::json::parse(task1_scores_json(t1)));
}

TEST_F(PipelineTest, PredictionFormats) {
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  const fs::path preds = root_.string() + "_b";
  fs::create_directories(preds);
  write_file_atomic(preds / "p.jsonl",
                    std::string_view("{\"id\": \"Ag_R6_rotbase\", \"a\": 6.0, \"V\": \"230\", "
                                     "\"summary\": \"Ag cluster\"}\n"
                                     "{\"stem\": \"Ag_R7_rot0\", \"nn_mean\": null}\n"));
  const Task1PredictionSet set = load_task1_predictions(preds / "p.jsonl");
  ASSERT_EQ(set.predictions.size(), 2u);
  EXPECT_EQ(set.predictions[0].id, "Ag_R6_rotbase");
  EXPECT_EQ(*set.predictions[0].scalars[3], 230.0);
  EXPECT_FALSE(set.predictions[1].scalars[4]);
  const Task1Scores s = evaluate_task1(root_, preds / "p.jsonl");
  EXPECT_EQ(s.samples, 2u);
  EXPECT_NEAR(*s.mae[0], 6.129 - 6.0, 1e-9);

  write_file_atomic(preds / "q.jsonl", std::string_view("{\"id\": \"Cu_R6_rotbase\"}\n"));
  EXPECT_THROW(evaluate_task1(root_, preds / "q.jsonl"), InvalidInput);

  fs::create_directories(preds / "xyz");
  write_file_atomic(preds / "xyz/Ag_R6_rot0.xyz", std::string_view("3\n\nAg 0 0 0\n"));
  const Task2Evaluation t2 = evaluate_task2(root_, preds / "xyz");
  EXPECT_EQ(t2.scores.samples, 1u);
  EXPECT_FALSE(t2.scores.per_sample[0].readable);
  EXPECT_EQ(t2.scores.validity, 0.0);
}

TEST_F(PipelineTest, RadiusSplit) {
  ASSERT_EQ(generate(config_).exit_code(), kExitOk);
  const RadiusSplit s = make_radius_split(load_manifest(root_), {6}, 7);
  EXPECT_EQ(s.train.size(), 6u);
  EXPECT_EQ(s.test.size(), 6u);
  for (const auto& t : s.test) EXPECT_NE(t.find("_R7_"), std::string::npos);
  EXPECT_THROW(make_radius_split(load_manifest(root_), {6, 7}, 7), InvalidInput);
  EXPECT_NO_THROW(nlohmann::json::parse(radius_split_json(s)));
}

}  // namespace
}  // namespace mcs
