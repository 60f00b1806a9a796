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

#include "mcs/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mcs/io.hpp"

namespace mcs {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

bool DatasetFilter::admits(const ManifestEntry& e) const {
  if (!materials.empty() && std::find(materials.begin(), materials.end(), e.material) == materials.end()) {
    return false;
  }
  if (!radius_indices.empty() &&
      std::find(radius_indices.begin(), radius_indices.end(), e.radius_index) == radius_indices.end()) {
    return false;
  }
  return !baselines_only || !e.rotation;
}

namespace {

std::optional<double> number_field(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (v.is_number()) {
    const double d = v.get<double>();
    return std::isfinite(d) ? std::optional(d) : std::nullopt;
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (end != s.c_str() && *end == '\0' && std::isfinite(d)) return d;
  }
  return std::nullopt;
}

std::string strip_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

/// Returns false when the record carries no usable id.
bool parse_task1_record(const json& j, const std::string& fallback_id, Task1Prediction& out) {
  if (!j.is_object()) return false;
  if (j.contains("id") && j.at("id").is_string()) {
    out.id = j.at("id").get<std::string>();
  } else if (j.contains("stem") && j.at("stem").is_string()) {
    out.id = j.at("stem").get<std::string>();
  } else {
    out.id = fallback_id;
  }
  if (out.id.empty()) return false;
  for (std::size_t i = 0; i < kTask1Scalars.size(); ++i) {
    out.scalars[i] = number_field(j, std::string(kTask1Scalars[i]).c_str());
  }
  out.atom_count = number_field(j, "atom_count");
  for (const char* key : {"summary", "text"}) {
    if (j.contains(key) && j.at(key).is_string()) {
      out.summary = j.at(key).get<std::string>();
      break;
    }
  }
  return true;
}

std::vector<fs::path> files_with_extension(const fs::path& dir, std::string_view ext) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string cell(const std::optional<double>& v, int precision = 3) {
  if (!v) return "N/A";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, *v);
  return buf;
}

std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  const auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) s += "  ";
      s += c == 0 ? r[c] + std::string(width[c] - r[c].size(), ' ')
                  : std::string(width[c] - r[c].size(), ' ') + r[c];
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

Manifest require_manifest(const fs::path& dataset_root) {
  if (!fs::exists(dataset_root / kManifestFile)) {
    throw IoError("no manifest under " + dataset_root.string() + "; references unavailable");
  }
  return load_manifest(dataset_root);
}

}  // namespace

Task1PredictionSet load_task1_predictions(const fs::path& path) {
  Task1PredictionSet out;
  const auto add = [&](const json& j, const std::string& fallback_id, const std::string& where) {
    Task1Prediction p;
    if (!parse_task1_record(j, fallback_id, p)) {
      out.warnings.push_back(where + ": record without an id skipped");
      return false;
    }
    out.predictions.push_back(std::move(p));
    return true;
  };

  if (fs::is_directory(path)) {
    for (const fs::path& file : files_with_extension(path, ".json")) {
      const std::string name = file.filename().string();
      if (name == kManifestFile || name == kConfigFile) continue;
      const std::string id = file.stem().string();
      json j;
      try {
        j = json::parse(read_text_file(file));
      } catch (const json::exception&) {
        Task1Prediction p;
        p.id = id;
        out.predictions.push_back(p);
        out.warnings.push_back(file.string() + ": malformed JSON, all fields N/A");
        continue;
      }
      if (!add(j, id, file.string())) continue;
      Task1Prediction& p = out.predictions.back();
      if (!p.summary) {
        fs::path sidecar = file;
        sidecar.replace_extension(".txt");
        if (fs::is_regular_file(sidecar)) p.summary = strip_trailing_newlines(read_text_file(sidecar));
      }
    }
    return out;
  }

  const std::string text = read_text_file(path);
  if (path.extension() == ".jsonl") {
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where = path.string() + ":" + std::to_string(number);
      try {
        add(json::parse(line), "", where);
      } catch (const json::exception&) {
        out.warnings.push_back(where + ": malformed JSON record skipped");
      }
    }
    return out;
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  if (j.is_object() && j.contains("predictions")) j = j.at("predictions");
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) add(j[i], "", path.string() + "[" + std::to_string(i) + "]");
  } else {
    add(j, path.stem().string(), path.string());
  }
  return out;
}

std::vector<Task1Reference> load_task1_references(const fs::path& root, const DatasetFilter& filter) {
  const Manifest m = require_manifest(root);
  std::vector<Task1Reference> out;
  for (const ManifestEntry& e : m.entries) {
    if (!filter.admits(e)) continue;
    const AnnotationRecord r = read_annotation_json(read_text_file(root / e.paths.json));
    Task1Reference ref;
    ref.id = e.stem;
    ref.scalars = {r.a, r.b, r.c, r.volume, r.nn_mean, r.density_g_per_cm3};
    ref.atom_count = static_cast<double>(r.atom_count);
    ref.summary = strip_trailing_newlines(read_text_file(root / e.paths.txt));
    ref.material = e.material;
    out.push_back(std::move(ref));
  }
  return out;
}

Task1Scores evaluate_task1(const fs::path& root, const fs::path& predictions_path, const DatasetFilter& filter,
                           const Task1Options& options) {
  const Manifest m = require_manifest(root);
  Task1PredictionSet loaded = load_task1_predictions(predictions_path);
  std::set<std::string> admitted;
  std::set<std::string> known;
  for (const ManifestEntry& e : m.entries) {
    known.insert(e.stem);
    if (filter.admits(e)) admitted.insert(e.stem);
  }
  std::vector<Task1Prediction> kept;
  std::size_t dropped = 0;
  std::set<std::string> seen;
  for (Task1Prediction& p : loaded.predictions) {
    if (!known.count(p.id)) throw InvalidInput("prediction '" + p.id + "' has no reference in the dataset");
    if (!seen.insert(p.id).second) throw InvalidInput("duplicate prediction id '" + p.id + "'");
    if (!admitted.count(p.id)) {
      ++dropped;
      continue;
    }
    kept.push_back(std::move(p));
  }
  if (kept.empty()) throw InvalidInput("no predictions match the selected references");
  const std::vector<Task1Reference> refs = load_task1_references(root, filter);
  Task1Scores scores = score_task1(kept, refs, options);
  scores.warnings.insert(scores.warnings.begin(), loaded.warnings.begin(), loaded.warnings.end());
  if (dropped > 0) scores.warnings.push_back(std::to_string(dropped) + " predictions outside the selection ignored");
  return scores;
}

std::string task1_scores_json(const Task1Scores& s) {
  json mae = json::object();
  for (std::size_t i = 0; i < kTask1Scalars.size(); ++i) mae[std::string(kTask1Scalars[i])] = optional_json(s.mae[i]);
  json pct = json::object();
  for (std::size_t i = 0; i < kPercentColumns.size(); ++i) {
    pct[std::string(kPercentColumns[i])] = optional_json(s.percent_delta[i]);
  }
  json per = json::array();
  for (const Task1SampleScore& p : s.per_sample) {
    json abs = json::object();
    for (std::size_t i = 0; i < kTask1Scalars.size(); ++i) abs[std::string(kTask1Scalars[i])] = optional_json(p.abs_error[i]);
    json ppct = json::object();
    for (std::size_t i = 0; i < kPercentColumns.size(); ++i) {
      ppct[std::string(kPercentColumns[i])] = optional_json(p.percent[i]);
    }
    per.push_back({{"id", p.id},
                   {"abs_error", abs},
                   {"percent_delta", ppct},
                   {"bleu", p.bleu},
                   {"rouge1", p.rouge.rouge1},
                   {"rouge2", p.rouge.rouge2},
                   {"rougeL", p.rouge.rougeL},
                   {"fact_match", p.fact_match},
                   {"material_match", p.material_match},
                   {"structure_match", p.structure_match}});
  }
  json j;
  j["samples"] = s.samples;
  j["aggregate"] = {{"mae", mae},
                    {"percent_delta", pct},
                    {"bleu", s.bleu},
                    {"rouge1", s.rouge.rouge1},
                    {"rouge2", s.rouge.rouge2},
                    {"rougeL", s.rouge.rougeL},
                    {"fact_score", s.fact_score},
                    {"material_match", s.material_match},
                    {"structure_match", s.structure_match}};
  j["per_sample"] = per;
  j["warnings"] = s.warnings;
  return j.dump(2) + "\n";
}

std::string task1_table(const Task1Scores& s) {
  std::string out = "Samples: " + std::to_string(s.samples) + "\n\n";
  out += format_table({"MAE", "a", "b", "c", "V", "NN", "rho"},
                      {{"", cell(s.mae[0]), cell(s.mae[1]), cell(s.mae[2]), cell(s.mae[3]), cell(s.mae[4]),
                        cell(s.mae[5])}});
  out += "\n";
  std::vector<std::string> pct{""};
  for (const auto& v : s.percent_delta) pct.push_back(cell(v, 2));
  out += format_table({"%Delta", "Atoms", "V", "a", "b", "c", "NN", "rho"}, {pct});
  out += "\n";
  out += format_table({"Text", "BLEU", "ROUGE-1", "ROUGE-2", "ROUGE-L", "FactScore", "Mat.", "Str."},
                      {{"", cell(s.bleu), cell(s.rouge.rouge1), cell(s.rouge.rouge2), cell(s.rouge.rougeL),
                        cell(s.fact_score), cell(100.0 * s.material_match, 1), cell(100.0 * s.structure_match, 1)}});
  return out;
}

Task2PairSet load_task2_pairs(const fs::path& root, const fs::path& predictions, const DatasetFilter& filter) {
  const Manifest m = require_manifest(root);
  std::vector<fs::path> files;
  if (fs::is_directory(predictions)) {
    files = files_with_extension(predictions, ".xyz");
  } else if (fs::is_regular_file(predictions)) {
    files.push_back(predictions);
  } else {
    throw IoError("predictions path " + predictions.string() + " does not exist");
  }
  Task2PairSet out;
  std::set<std::string> seen;
  std::size_t dropped = 0;
  std::vector<std::pair<Provenance, GenPair>> ordered;
  for (const fs::path& file : files) {
    const std::string id = file.stem().string();
    const ManifestEntry* e = m.find(id);
    if (!e) throw InvalidInput("prediction '" + id + "' has no ground truth in the dataset");
    if (!seen.insert(id).second) throw InvalidInput("duplicate prediction '" + id + "'");
    if (!filter.admits(*e)) {
      ++dropped;
      continue;
    }
    GenPair pair;
    pair.id = id;
    pair.truth = read_xyz(read_text_file(root / e->paths.xyz));
    try {
      pair.prediction = read_xyz(read_text_file(file));
    } catch (const XyzParseError& err) {
      out.warnings.push_back(file.string() + ": " + err.what());
    } catch (const IoError& err) {
      out.warnings.push_back(err.what());
    }
    ordered.emplace_back(e->provenance(), std::move(pair));
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  for (auto& [p, pair] : ordered) out.pairs.push_back(std::move(pair));
  if (dropped > 0) out.warnings.push_back(std::to_string(dropped) + " predictions outside the selection ignored");
  return out;
}

Task2Evaluation evaluate_task2(const fs::path& root, const fs::path& predictions, const DatasetFilter& filter,
                               const Task2Options& options) {
  Task2PairSet set = load_task2_pairs(root, predictions, filter);
  if (set.pairs.empty()) throw InvalidInput("no predictions match the selected references");
  Task2Evaluation out;
  out.scores = score_task2(set.pairs, options);
  out.warnings = std::move(set.warnings);
  return out;
}

std::string task2_scores_json(const Task2Evaluation& e) {
  const Task2Scores& s = e.scores;
  json per = json::array();
  for (const PairScore& p : s.per_sample) {
    per.push_back({{"id", p.id},
                   {"readable", p.readable},
                   {"valid", p.valid},
                   {"predicted_count", p.predicted_count},
                   {"truth_count", p.truth_count},
                   {"count_error", optional_json(p.count_error)},
                   {"rmsd", optional_json(p.rmsd)},
                   {"chamfer", optional_json(p.chamfer)},
                   {"warnings", p.warnings}});
  }
  json j;
  j["samples"] = s.samples;
  j["readable"] = s.readable;
  j["count_matched"] = s.count_matched;
  j["aggregate"] = {{"validity", s.validity},
                    {"atom_count_error", optional_json(s.atom_count_error)},
                    {"rmsd", optional_json(s.rmsd)},
                    {"match_rate", optional_json(s.match_rate)}};
  j["per_sample"] = per;
  j["warnings"] = e.warnings;
  return j.dump(2) + "\n";
}

std::string task2_table(const Task2Scores& s) {
  return "Samples: " + std::to_string(s.samples) + " (" + std::to_string(s.count_matched) + " count-matched)\n\n" +
         format_table({"Task 2", "Validity (%)", "ACE (%)", "RMSD (A)", "MR (%)"},
                      {{"", cell(s.validity, 1), cell(s.atom_count_error, 2), cell(s.rmsd, 3), cell(s.match_rate, 1)}});
}

RadiusSplit make_radius_split(const Manifest& m, std::vector<int> train_radii, int test_radius,
                              const std::vector<Material>& materials) {
  if (train_radii.empty()) throw InvalidInput("at least one training radius is required");
  std::sort(train_radii.begin(), train_radii.end());
  if (std::adjacent_find(train_radii.begin(), train_radii.end()) != train_radii.end()) {
    throw InvalidInput("training radii must be distinct");
  }
  for (int k : train_radii) {
    if (k < kMinRadiusIndex || k > kMaxRadiusIndex) throw InvalidInput("training radius out of range: " + std::to_string(k));
  }
  if (test_radius < kMinRadiusIndex || test_radius > kMaxRadiusIndex) {
    throw InvalidInput("test radius out of range: " + std::to_string(test_radius));
  }
  if (std::binary_search(train_radii.begin(), train_radii.end(), test_radius)) {
    throw InvalidInput("test radius R" + std::to_string(test_radius) + " is also a training radius");
  }
  RadiusSplit split;
  split.train_radii = train_radii;
  split.test_radius = test_radius;
  for (const ManifestEntry& e : m.entries) {
    if (!materials.empty() && std::find(materials.begin(), materials.end(), e.material) == materials.end()) continue;
    if (e.radius_index == test_radius) {
      split.test.push_back(e.stem);
    } else if (std::binary_search(train_radii.begin(), train_radii.end(), e.radius_index)) {
      split.train.push_back(e.stem);
    }
  }
  return split;
}

std::string radius_split_json(const RadiusSplit& split) {
  json j;
  j["train_radii"] = split.train_radii;
  j["test_radius"] = split.test_radius;
  j["train"] = split.train;
  j["test"] = split.test;
  return j.dump(2) + "\n";
}

}  // namespace mcs
