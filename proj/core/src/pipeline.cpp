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

#include "mcs/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mcs/io.hpp"
#include "mcs/projection.hpp"
#include "mcs/rotation.hpp"

namespace mcs {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kJournalFile = ".journal";

struct Digests {
  std::string xyz, png, json, txt;
  friend bool operator==(const Digests&, const Digests&) = default;
};

std::map<std::string, Digests> load_journal(const fs::path& path) {
  std::map<std::string, Digests> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string stem_name;
    Digests d;
    if (ss >> stem_name >> d.xyz >> d.png >> d.json >> d.txt) out[stem_name] = d;
  }
  return out;
}

bool files_match(const fs::path& root, const TripletPaths& p, const Digests& d) {
  const std::pair<const fs::path*, const std::string*> files[] = {
      {&p.xyz, &d.xyz}, {&p.png, &d.png}, {&p.json, &d.json}, {&p.txt, &d.txt}};
  for (const auto& [path, digest] : files) {
    const fs::path full = root / *path;
    if (!fs::is_regular_file(full) || sha256_hex(read_text_file(full)) != *digest) return false;
  }
  return true;
}

void remove_stale_temporaries(const fs::path& root) {
  std::vector<fs::path> stale;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().extension() == ".tmp") stale.push_back(e.path());
  }
  for (const fs::path& p : stale) fs::remove(p);
}

}  // namespace

std::vector<GenerationTask> plan(const GenerationConfig& config) {
  std::vector<GenerationTask> tasks;
  tasks.reserve(config.expected_triplets());
  std::vector<Material> materials = config.materials;
  std::sort(materials.begin(), materials.end());
  std::vector<int> radii = config.radius_indices;
  std::sort(radii.begin(), radii.end());
  for (Material m : materials) {
    for (int k : radii) {
      tasks.push_back({m, k, std::nullopt});
      for (int i = 0; i < config.rotations; ++i) tasks.push_back({m, k, i});
    }
  }
  return tasks;
}

TripletBytes render_triplet(const Cluster& cluster, const GenerationConfig& config) {
  TripletBytes out;
  out.provenance = cluster.provenance;
  out.xyz = write_xyz(cluster);
  out.png = encode_png(rasterize(cluster, config.render));
  out.record = annotate(cluster, config.annotation);
  out.json = write_annotation_json(out.record);
  out.txt = render_summary(out.record) + "\n";
  return out;
}

GenerationReport generate(const GenerationConfig& config, const GenerateOptions& options) {
  config.validate();
  const fs::path root = config.output_root;
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec || !fs::is_directory(root)) {
    throw IoError("cannot create output root " + root.string() + (ec ? ": " + ec.message() : ""));
  }

  const std::string config_text = config.to_json();
  const std::string hash = config.hash();
  const fs::path config_path = root / kConfigFile;
  const fs::path journal_path = root / kJournalFile;
  const fs::path manifest_path = root / kManifestFile;

  bool same_config = false;
  if (fs::exists(config_path)) {
    std::string existing_hash;
    try {
      existing_hash = GenerationConfig::from_json(read_text_file(config_path)).hash();
    } catch (const InvalidInput&) {
    }
    same_config = existing_hash == hash;
    if (!same_config) {
      if (!options.overwrite) {
        throw InvalidInput("output root " + root.string() +
                           " holds a dataset generated with a different configuration");
      }
      for (Material m : kAllMaterials) fs::remove_all(root / std::string(name(m)));
      fs::remove(manifest_path);
      fs::remove(journal_path);
    }
  }
  if (!same_config || read_text_file(config_path) != config_text) {
    write_file_atomic(config_path, config_text);
  }
  remove_stale_temporaries(root);

  std::map<std::string, Digests> known;
  if (options.resume && same_config) {
    if (fs::exists(manifest_path)) {
      try {
        const Manifest m = read_manifest_json(read_text_file(manifest_path));
        if (m.config_hash == hash) {
          for (const ManifestEntry& e : m.entries) {
            known[e.stem] = {e.xyz_sha256, e.png_sha256, e.json_sha256, e.txt_sha256};
          }
        }
      } catch (const InvalidInput&) {
      }
    }
    for (auto& [s, d] : load_journal(journal_path)) known[s] = d;
  }

  const std::vector<GenerationTask> tasks = plan(config);
  GenerationReport report;
  report.planned = tasks.size();

  // Baselines are shared by every rotation of a group; build them up front.
  std::map<std::pair<Material, int>, Cluster> baselines;
  for (const GenerationTask& t : tasks) {
    if (t.rotation) continue;
    try {
      baselines.emplace(std::make_pair(t.material, t.radius_index),
                        make_baseline_cluster(t.material, t.radius_index, config.baseline));
    } catch (const std::exception& e) {
      report.failures.push_back({stem({t.material, t.radius_index, std::nullopt, 0.0}), e.what()});
    }
  }
  std::vector<Mat3> rotations;
  for (const RotationSpec& r : rotation_specs(config.rotations, config.angle)) {
    rotations.push_back(rodrigues_matrix(r.axis, r.angle));
  }

  std::mutex mutex;
  std::ofstream journal(journal_path, std::ios::app);
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;

  const auto worker = [&] {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      const GenerationTask& t = tasks[index];
      const Provenance prov{t.material, t.radius_index, t.rotation, 0.0};
      const std::string s = stem(prov);
      bool wrote = false;
      bool skipped = false;
      std::optional<Issue> failure;
      try {
        const auto base = baselines.find({t.material, t.radius_index});
        if (base == baselines.end()) throw InvalidInput("baseline cluster unavailable");
        const TripletPaths paths = triplet_paths(prov);
        const auto k = known.find(s);
        if (k != known.end() && files_match(root, paths, k->second)) {
          skipped = true;
        } else {
          const Cluster cluster = t.rotation
                                      ? apply_rotation(base->second, rotations[static_cast<std::size_t>(*t.rotation)], t.rotation)
                                      : base->second;
          const TripletBytes bytes = render_triplet(cluster, config);
          write_file_atomic(root / paths.xyz, bytes.xyz);
          write_file_atomic(root / paths.png, std::span<const std::uint8_t>(bytes.png));
          write_file_atomic(root / paths.json, bytes.json);
          write_file_atomic(root / paths.txt, bytes.txt);
          const Digests d{sha256_hex(bytes.xyz), sha256_hex(std::span<const std::uint8_t>(bytes.png)),
                          sha256_hex(bytes.json), sha256_hex(bytes.txt)};
          std::lock_guard lock(mutex);
          journal << s << ' ' << d.xyz << ' ' << d.png << ' ' << d.json << ' ' << d.txt << '\n';
          journal.flush();
          wrote = true;
        }
      } catch (const std::exception& e) {
        failure = Issue{s, e.what()};
      }
      std::lock_guard lock(mutex);
      if (wrote) ++report.written;
      if (skipped) ++report.skipped;
      if (failure) report.failures.push_back(*failure);
      ++done;
      if (options.progress) options.progress(done, tasks.size());
    }
  };

  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs) : std::thread::hardware_concurrency();
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  journal.close();

  std::sort(report.failures.begin(), report.failures.end(),
            [](const Issue& a, const Issue& b) { return a.file < b.file; });
  report.manifest = build_manifest(root);
  write_file_atomic(manifest_path, write_manifest_json(report.manifest.manifest));
  if (report.failures.empty()) fs::remove(journal_path);
  return report;
}

}  // namespace mcs
