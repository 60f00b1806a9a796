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

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "mcs/annotation.hpp"
#include "mcs/cluster.hpp"
#include "mcs/io.hpp"
#include "mcs/lattice.hpp"
#include "mcs/metrics_geom.hpp"
#include "mcs/metrics_text.hpp"
#include "mcs/pipeline.hpp"
#include "mcs/projection.hpp"
#include "mcs/rotation.hpp"

namespace {

using namespace mcs;

Material material_arg(const benchmark::State& state) {
  return kAllMaterials[static_cast<std::size_t>(state.range(0))];
}

void BM_Supercell(benchmark::State& state) {
  const UnitCell cell = build_unit_cell(material_arg(state));
  const Multiplicity s = choose_multiplicity(cell, cluster_radius(cell, 10, RadiusReference::PerMaterial));
  for (auto _ : state) benchmark::DoNotOptimize(build_supercell(cell, s));
}
BENCHMARK(BM_Supercell)->DenseRange(0, 3);

void BM_Baseline(benchmark::State& state) {
  const Material m = material_arg(state);
  for (auto _ : state) benchmark::DoNotOptimize(make_baseline_cluster(m, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_Baseline)->ArgsProduct({{0, 2, 3}, {6, 10}});

void BM_Augment(benchmark::State& state) {
  const Cluster c = make_baseline_cluster(Material::PbS, 10);
  for (auto _ : state) benchmark::DoNotOptimize(augment(c, kCanonicalRotations, kCanonicalAngle));
}
BENCHMARK(BM_Augment)->Unit(benchmark::kMillisecond);

void BM_Rasterize(benchmark::State& state) {
  const Cluster c = make_baseline_cluster(Material::PbS, static_cast<int>(state.range(0)));
  RenderSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(c, spec));
}
BENCHMARK(BM_Rasterize)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_EncodePng(benchmark::State& state) {
  const Image img = rasterize(make_baseline_cluster(Material::PbS, 10));
  for (auto _ : state) benchmark::DoNotOptimize(encode_png(img));
}
BENCHMARK(BM_EncodePng)->Unit(benchmark::kMillisecond);

void BM_Annotate(benchmark::State& state) {
  const Cluster c = make_baseline_cluster(Material::PbS, 10);
  AnnotationOptions opt;
  opt.with_rdf = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(annotate(c, opt));
}
BENCHMARK(BM_Annotate)->Arg(0)->Arg(1);

void BM_RenderTriplet(benchmark::State& state) {
  const Cluster c = make_baseline_cluster(Material::PbS, 10);
  const GenerationConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(render_triplet(c, config));
}
BENCHMARK(BM_RenderTriplet)->Unit(benchmark::kMillisecond);

void BM_Align(benchmark::State& state) {
  const Cluster truth = make_baseline_cluster(Material::Ag, static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0, 0.05);
  std::vector<Vec3> q = truth.positions();
  for (Vec3& x : q) x += Vec3(n(rng), n(rng), n(rng));
  std::shuffle(q.begin(), q.end(), rng);
  const auto p = truth.positions();
  for (auto _ : state) benchmark::DoNotOptimize(align_point_sets(p, q));
}
BENCHMARK(BM_Align)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Chamfer(benchmark::State& state) {
  const auto p = make_baseline_cluster(Material::PbS, 10).positions();
  for (auto _ : state) benchmark::DoNotOptimize(chamfer(p, p));
}
BENCHMARK(BM_Chamfer);

void BM_Bleu(benchmark::State& state) {
  const AnnotationRecord r = annotate(make_baseline_cluster(Material::Au, 8));
  const std::string ref = render_summary(r);
  const std::string cand = "Au cluster R8 with 68 atoms and a mean NN distance of 2.884 A in an fcc lattice";
  for (auto _ : state) benchmark::DoNotOptimize(bleu4(cand, ref));
}
BENCHMARK(BM_Bleu);

void BM_Rouge(benchmark::State& state) {
  const AnnotationRecord r = annotate(make_baseline_cluster(Material::Au, 8));
  const std::string ref = render_summary(r);
  const std::string cand = "Au cluster R8 with 68 atoms and a mean NN distance of 2.884 A in an fcc lattice";
  for (auto _ : state) benchmark::DoNotOptimize(rouge(cand, ref));
}
BENCHMARK(BM_Rouge);

}  // namespace

BENCHMARK_MAIN();
