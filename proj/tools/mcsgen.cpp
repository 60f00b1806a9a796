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

// mcsgen: generate, validate and score multimodal crystal-cluster datasets.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcs/config.hpp"
#include "mcs/evaluation.hpp"
#include "mcs/io.hpp"
#include "mcs/lattice.hpp"
#include "mcs/manifest.hpp"
#include "mcs/pipeline.hpp"

namespace fs = std::filesystem;
using namespace mcs;

namespace {

template <class T, class Parse>
T parse_or_throw(const std::string& text, Parse parse, const char* what) {
  const auto v = parse(text);
  if (!v) throw InvalidInput(std::string("invalid ") + what + " '" + text + "'");
  return *v;
}

std::vector<Material> parse_materials(const std::vector<std::string>& names) {
  std::vector<Material> out;
  for (const std::string& n : names) {
    out.push_back(parse_or_throw<Material>(n, [](std::string_view s) { return parse_material(s); }, "material"));
  }
  return out;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
  } else {
    write_file_atomic(path, text);
  }
}

struct GenerateArgs {
  std::string config_file;
  std::vector<std::string> materials;
  std::vector<int> radii;
  std::optional<int> rotations;
  std::optional<double> angle;
  std::string radius_reference, center, multiplicity, projection;
  std::optional<std::uint64_t> seed;
  std::optional<double> wurtzite_u, focal_length, camera_distance, margin, coordination_factor;
  std::optional<int> width, height, jobs;
  bool rdf = false;
  std::optional<double> rdf_dr, rdf_max_factor;
  std::string output;
  bool no_resume = false;
  bool overwrite = false;
  bool quiet = false;
};

GenerationConfig build_config(const GenerateArgs& a) {
  GenerationConfig c;
  if (!a.config_file.empty()) c = GenerationConfig::from_json(read_text_file(a.config_file));
  if (a.config_file.empty()) c.output_root = default_output_root();
  if (!a.materials.empty()) c.materials = parse_materials(a.materials);
  if (!a.radii.empty()) c.radius_indices = a.radii;
  if (a.rotations) c.rotations = *a.rotations;
  if (a.angle) c.angle = *a.angle;
  if (!a.radius_reference.empty()) {
    c.baseline.radius_reference = parse_or_throw<RadiusReference>(a.radius_reference, parse_radius_reference, "radius reference");
  }
  if (!a.center.empty()) c.baseline.center = parse_or_throw<CarveCenter>(a.center, parse_carve_center, "carve center");
  if (!a.multiplicity.empty()) {
    c.baseline.multiplicity = parse_or_throw<MultiplicityMode>(a.multiplicity, parse_multiplicity_mode, "multiplicity");
  }
  if (a.seed) c.baseline.seed = *a.seed;
  if (a.wurtzite_u) c.baseline.cell.wurtzite_u = *a.wurtzite_u;
  if (!a.projection.empty()) c.render.mode = parse_or_throw<ProjectionMode>(a.projection, parse_projection_mode, "projection");
  if (a.focal_length) c.render.focal_length = *a.focal_length;
  if (a.camera_distance) c.render.camera_distance = *a.camera_distance;
  if (a.width) c.render.width = *a.width;
  if (a.height) c.render.height = *a.height;
  if (a.margin) c.render.margin = *a.margin;
  if (a.coordination_factor) c.annotation.coordination_factor = *a.coordination_factor;
  if (a.rdf) c.annotation.with_rdf = true;
  if (a.rdf_dr) c.annotation.rdf_dr = *a.rdf_dr;
  if (a.rdf_max_factor) c.annotation.rdf_max_factor = *a.rdf_max_factor;
  if (!a.output.empty()) c.output_root = a.output;
  if (a.jobs) c.jobs = *a.jobs;
  c.validate();
  return c;
}

int run_generate(const GenerateArgs& a) {
  const GenerationConfig config = build_config(a);
  GenerateOptions options;
  options.resume = !a.no_resume;
  options.overwrite = a.overwrite;
  std::size_t last_percent = 101;
  if (!a.quiet) {
    options.progress = [&](std::size_t done, std::size_t total) {
      const std::size_t percent = 100 * done / std::max<std::size_t>(total, 1);
      if (percent != last_percent || done == total) {
        last_percent = percent;
        std::fprintf(stderr, "\r[%3zu%%] %zu/%zu triplets", percent, done, total);
        if (done == total) std::fprintf(stderr, "\n");
      }
    };
  }
  const GenerationReport r = generate(config, options);
  std::printf("output root: %s\n", config.output_root.string().c_str());
  std::printf("config hash: %s\n", config.hash().c_str());
  std::printf("planned %zu, written %zu, skipped %zu, failed %zu\n", r.planned, r.written, r.skipped,
              r.failures.size());
  std::printf("manifest: %zu triplets (%zu baselines, %zu rotated)\n", r.manifest.manifest.entries.size(),
              r.manifest.manifest.baseline_count(), r.manifest.manifest.rotated_count());
  for (const std::string& w : r.manifest.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const Issue& f : r.failures) std::fprintf(stderr, "failed: %s: %s\n", f.file.c_str(), f.reason.c_str());
  for (const Issue& i : r.manifest.issues) std::fprintf(stderr, "invalid: %s: %s\n", i.file.c_str(), i.reason.c_str());
  return r.exit_code();
}

int run_validate(const std::string& root) {
  const std::vector<Issue> issues = validate_dataset(root);
  for (const Issue& i : issues) std::printf("%s: %s\n", i.file.c_str(), i.reason.c_str());
  if (issues.empty()) {
    const Manifest m = load_manifest(root);
    std::printf("OK: %zu triplets (%zu baselines, %zu rotated) validated\n", m.entries.size(), m.baseline_count(),
                m.rotated_count());
    return kExitOk;
  }
  std::printf("FAILED: %zu issues\n", issues.size());
  return kExitPartial;
}

struct EvalArgs {
  std::string dataset;
  std::string predictions;
  std::vector<std::string> materials;
  std::vector<int> radii;
  bool baselines_only = false;
  std::string out_json;
  std::string out_table = "-";
  // Task 1
  double bleu_smoothing = 0.0;
  // Task 2
  std::vector<int> train_radii;
  std::optional<int> test_radius;
  std::string split_out;
  double min_separation = 0.5;
  double tolerance = 0.25;
  std::string chamfer = "max";
  std::string species_aware = "auto";
};

DatasetFilter make_filter(const EvalArgs& a) {
  DatasetFilter f;
  f.materials = parse_materials(a.materials);
  f.radius_indices = a.radii;
  f.baselines_only = a.baselines_only;
  return f;
}

int run_eval_task1(const EvalArgs& a) {
  Task1Options options;
  options.bleu.smoothing_epsilon = a.bleu_smoothing;
  const Task1Scores s = evaluate_task1(a.dataset, a.predictions, make_filter(a), options);
  for (const std::string& w : s.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  write_or_print(a.out_json, task1_scores_json(s));
  write_or_print(a.out_table, task1_table(s));
  return kExitOk;
}

int run_eval_task2(const EvalArgs& a) {
  DatasetFilter filter = make_filter(a);
  if (!a.train_radii.empty() || a.test_radius) {
    if (a.train_radii.empty() || !a.test_radius) {
      throw InvalidInput("--train-radii and --test-radius must be given together");
    }
    const RadiusSplit split = make_radius_split(load_manifest(a.dataset), a.train_radii, *a.test_radius, filter.materials);
    std::printf("split: %zu train stems at R{", split.train.size());
    for (std::size_t i = 0; i < split.train_radii.size(); ++i) std::printf(i ? ",%d" : "%d", split.train_radii[i]);
    std::printf("}, %zu test stems at R%d\n", split.test.size(), split.test_radius);
    write_or_print(a.split_out, radius_split_json(split));
    filter.radius_indices = {*a.test_radius};
    if (a.predictions.empty()) return kExitOk;
  }
  if (a.predictions.empty()) throw InvalidInput("--predictions is required");
  Task2Options options;
  options.min_separation = a.min_separation;
  options.tolerance = a.tolerance;
  options.chamfer_mode = parse_or_throw<ChamferMode>(a.chamfer, parse_chamfer_mode, "chamfer mode");
  if (a.species_aware == "on") {
    options.species_aware = true;
  } else if (a.species_aware == "off") {
    options.species_aware = false;
  } else if (a.species_aware != "auto") {
    throw InvalidInput("--species-aware takes on, off or auto");
  }
  if (filter.materials.size() == 1) options.material = filter.materials.front();
  const Task2Evaluation e = evaluate_task2(a.dataset, a.predictions, filter, options);
  for (const std::string& w : e.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const PairScore& p : e.scores.per_sample) {
    for (const std::string& w : p.warnings) std::fprintf(stderr, "warning: %s: %s\n", p.id.c_str(), w.c_str());
  }
  write_or_print(a.out_json, task2_scores_json(e));
  write_or_print(a.out_table, task2_table(e.scores));
  return kExitOk;
}

int run_info(const std::string& root) {
  const GenerationConfig c;
  std::printf("default output root: %s\n", default_output_root().string().c_str());
  std::printf("canonical run: %zu materials x %zu radii x (%d rotations + baseline) = %zu triplets\n",
              c.materials.size(), c.radius_indices.size(), c.rotations, c.expected_triplets());
  std::printf("canonical config hash: %s\n", c.hash().c_str());
  for (Material m : kAllMaterials) {
    const UnitCell cell = build_unit_cell(m);
    std::printf("  %-4s %-9s a=%.4f", std::string(name(m)).c_str(), std::string(name(cell.symmetry)).c_str(), cell.a);
    if (cell.symmetry == Symmetry::Wurtzite) std::printf(" c=%.4f", cell.c);
    std::printf(" motif=%zu\n", cell.motif.size());
  }
  if (!root.empty()) {
    const Manifest m = load_manifest(root);
    std::printf("dataset %s: %zu triplets (%zu baselines, %zu rotated), config hash %s\n", root.c_str(),
                m.entries.size(), m.baseline_count(), m.rotated_count(), m.config_hash.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, validate and score multimodal crystal-cluster datasets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mcsgen 0.1.0");

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Build the XYZ/PNG/annotation tree and its manifest");
  generate_cmd->add_option("--config", gen.config_file, "JSON configuration file; flags override it")->check(CLI::ExistingFile);
  generate_cmd->add_option("--materials", gen.materials, "Subset of Ag,Au,PbS,ZnO")->delimiter(',');
  generate_cmd->add_option("--k,--radii", gen.radii, "Radius indices (6..10)")->delimiter(',');
  generate_cmd->add_option("--rotations", gen.rotations, "Rotated views per cluster (default 780)");
  generate_cmd->add_option("--angle", gen.angle, "Rotation angle in radians (default pi/5)");
  generate_cmd->add_option("--radius-reference", gen.radius_reference, "material or ag");
  generate_cmd->add_option("--center", gen.center, "Carve centre: com or site");
  generate_cmd->add_option("--multiplicity", gen.multiplicity, "minimal or random");
  generate_cmd->add_option("--seed", gen.seed, "Seed for random multiplicity");
  generate_cmd->add_option("--wurtzite-u", gen.wurtzite_u, "Wurtzite internal parameter");
  generate_cmd->add_option("--projection", gen.projection, "orthographic or perspective");
  generate_cmd->add_option("--focal-length", gen.focal_length, "Perspective focal length in A (0: 2R)");
  generate_cmd->add_option("--camera-distance", gen.camera_distance, "Perspective camera distance in A (0: 4R)");
  generate_cmd->add_option("--width", gen.width, "Image width");
  generate_cmd->add_option("--height", gen.height, "Image height");
  generate_cmd->add_option("--margin", gen.margin, "Frame margin fraction");
  generate_cmd->add_option("--coordination-factor", gen.coordination_factor, "Coordination cutoff / mean NN");
  generate_cmd->add_flag("--rdf", gen.rdf, "Add g(r) to the annotations");
  generate_cmd->add_option("--rdf-dr", gen.rdf_dr, "RDF bin width in A");
  generate_cmd->add_option("--rdf-max-factor", gen.rdf_max_factor, "RDF range in carve radii");
  generate_cmd->add_option("-o,--output", gen.output, "Output root (default $MCSGEN_OUTPUT_ROOT or ./mcs_dataset)");
  generate_cmd->add_option("-j,--jobs", gen.jobs, "Worker threads (0: all cores)");
  generate_cmd->add_flag("--no-resume", gen.no_resume, "Regenerate every stem");
  generate_cmd->add_flag("--overwrite", gen.overwrite, "Replace a tree generated with another configuration");
  generate_cmd->add_flag("-q,--quiet", gen.quiet, "No progress output");

  std::string validate_root;
  auto* validate_cmd = app.add_subcommand("validate", "Check a dataset tree against its manifest");
  validate_cmd->add_option("root", validate_root, "Dataset root")->required();

  EvalArgs t1;
  auto* task1_cmd = app.add_subcommand("eval-task1", "Score property predictions and summaries");
  task1_cmd->add_option("--dataset", t1.dataset, "Reference dataset root")->required();
  task1_cmd->add_option("--predictions", t1.predictions, "Prediction file or directory")->required();
  task1_cmd->add_option("--materials", t1.materials, "Restrict to materials")->delimiter(',');
  task1_cmd->add_option("--radius", t1.radii, "Restrict to radius indices")->delimiter(',');
  task1_cmd->add_flag("--baselines-only", t1.baselines_only, "Only unrotated references");
  task1_cmd->add_option("--bleu-smoothing", t1.bleu_smoothing, "Epsilon for zero n-gram precisions");
  task1_cmd->add_option("--out-json", t1.out_json, "Score JSON path ('-' for stdout)");
  task1_cmd->add_option("--out-table", t1.out_table, "Text table path ('-' for stdout)");

  EvalArgs t2;
  auto* task2_cmd = app.add_subcommand("eval-task2", "Score generated structures");
  task2_cmd->add_option("--dataset", t2.dataset, "Reference dataset root")->required();
  task2_cmd->add_option("--predictions", t2.predictions, "Predicted .xyz file or directory");
  task2_cmd->add_option("--material,--materials", t2.materials, "Restrict to materials")->delimiter(',');
  task2_cmd->add_option("--radius", t2.radii, "Restrict to radius indices")->delimiter(',');
  task2_cmd->add_flag("--baselines-only", t2.baselines_only, "Only unrotated references");
  task2_cmd->add_option("--train-radii", t2.train_radii, "Observed radii of the held-out split")->delimiter(',');
  task2_cmd->add_option("--test-radius", t2.test_radius, "Held-out radius");
  task2_cmd->add_option("--split-out", t2.split_out, "Where to write the split stems");
  task2_cmd->add_option("--min-separation", t2.min_separation, "Validity threshold in A");
  task2_cmd->add_option("--tolerance", t2.tolerance, "Chamfer match tolerance in A");
  task2_cmd->add_option("--chamfer", t2.chamfer, "max or mean of the directed terms");
  task2_cmd->add_option("--species-aware", t2.species_aware, "on, off or auto");
  task2_cmd->add_option("--out-json", t2.out_json, "Score JSON path ('-' for stdout)");
  task2_cmd->add_option("--out-table", t2.out_table, "Text table path ('-' for stdout)");

  std::string info_root;
  auto* info_cmd = app.add_subcommand("info", "Print defaults and, optionally, a dataset summary");
  info_cmd->add_option("root", info_root, "Dataset root");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate_cmd) return run_generate(gen);
    if (*validate_cmd) return run_validate(validate_root);
    if (*task1_cmd) return run_eval_task1(t1);
    if (*task2_cmd) return run_eval_task2(t2);
    if (*info_cmd) return run_info(info_root);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitPartial;
  }
  return kExitUsage;
}
