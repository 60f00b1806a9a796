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

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mcs/cluster.hpp"
#include "mcs/metrics_geom.hpp"
#include "mcs/rotation.hpp"
#include "test_support.hpp"

namespace mcs {
namespace {

std::vector<int> identity(std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

TEST(Validity, Cases) {
  const std::vector<Vec3> spaced{Vec3(0, 0, 0), Vec3(2.8, 0, 0), Vec3(0, 2.8, 0)};
  const std::vector<Vec3> coincident{Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(3, 0, 0)};
  const std::vector<Vec3> boundary{Vec3(0, 0, 0), Vec3(0.5, 0, 0)};
  const std::vector<Vec3> just_over{Vec3(0, 0, 0), Vec3(0.5000001, 0, 0)};
  EXPECT_TRUE(is_valid_structure(spaced));
  EXPECT_FALSE(is_valid_structure(coincident));
  EXPECT_FALSE(is_valid_structure(boundary));
  EXPECT_TRUE(is_valid_structure(just_over));
  EXPECT_TRUE(is_valid_structure(std::vector<Vec3>{Vec3(1, 1, 1)}));
  const std::vector<std::vector<Vec3>> all{spaced, spaced};
  EXPECT_EQ(validity(all), 100.0);
  const std::vector<std::vector<Vec3>> half{spaced, coincident};
  EXPECT_EQ(validity(half), 50.0);
}

TEST(Validity, RemovingAtomsNeverLowersSeparation) {
  std::mt19937_64 rng(3);
  auto pts = test::random_points(rng, 40, 2.0);
  double prev = min_separation(pts);
  while (pts.size() > 2) {
    pts.erase(pts.begin() + static_cast<long>(rng() % pts.size()));
    const double now = min_separation(pts);
    EXPECT_GE(now, prev);
    prev = now;
  }
}

TEST(AtomCountError, Cases) {
  const std::vector<CountPair> same{{10, 10}, {5, 5}};
  EXPECT_EQ(atom_count_error(same), 0.0);
  const std::vector<CountPair> one{{120, 100}};
  EXPECT_DOUBLE_EQ(atom_count_error(one), 20.0);
  const std::vector<CountPair> batch{{120, 100}, {80, 100}, {59, 50}, {40, 50}};
  EXPECT_NEAR(atom_count_error(batch), 19.5, 1e-12);
}

TEST(Kabsch, Identity) {
  std::mt19937_64 rng(1);
  const auto p = test::random_points(rng, 12, 3.0);
  const KabschResult r = kabsch_rmsd(p, p, identity(p.size()));
  EXPECT_LT(r.rmsd, 1e-12);
  EXPECT_LT((r.rotation - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Kabsch, RecoversKnownRotation) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto p = test::random_points(rng, 15, 3.0);
    const Mat3 r0 = rodrigues_matrix(test::random_unit(rng), 0.3 + t * 0.2);
    const Vec3 shift(1, -2, 0.5);
    std::vector<Vec3> q;
    for (const Vec3& x : p) q.push_back(r0 * x + shift);
    const KabschResult r = kabsch_rmsd(p, q, identity(p.size()));
    EXPECT_LT(r.rmsd, 1e-10);
    EXPECT_LT((r.rotation - r0).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(r.rotation.determinant(), 1.0, 1e-12);
  }
}

TEST(Kabsch, ChiralMirrorIsNotSuperposable) {
  const std::vector<Vec3> p{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 2, 0), Vec3(0, 0, 3)};
  std::vector<Vec3> mirror;
  for (const Vec3& x : p) mirror.emplace_back(-x.x(), x.y(), x.z());
  const KabschResult r = kabsch_rmsd(p, mirror, identity(4));
  EXPECT_GT(r.rmsd, 1e-3);
  EXPECT_NEAR(r.rotation.determinant(), 1.0, 1e-12);
  EXPECT_GT(align_point_sets(p, mirror).rmsd, 1e-3);
}

TEST(Kabsch, RankDeficientStillProper) {
  const std::vector<Vec3> line{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
  const KabschResult r = kabsch_rmsd(line, line, identity(3));
  EXPECT_LT(r.rmsd, 1e-12);
  EXPECT_NEAR(r.rotation.determinant(), 1.0, 1e-12);
  EXPECT_THROW(kabsch_rmsd(line, std::vector<Vec3>{Vec3::Zero()}, identity(3)), InvalidInput);
  const std::vector<int> bad{0, 0, 1};
  EXPECT_THROW(kabsch_rmsd(line, line, bad), InvalidInput);
}

TEST(Correspondence, RecoversShuffle) {
  const Cluster c = make_baseline_cluster(Material::Au, 7);
  const auto p = c.positions();
  std::mt19937_64 rng(8);
  std::vector<int> shuffle = identity(p.size());
  std::shuffle(shuffle.begin(), shuffle.end(), rng);
  std::vector<Vec3> q(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) q[static_cast<std::size_t>(shuffle[j])] = p[j];
  EXPECT_EQ(correspondence(p, q), shuffle);
  const Mat3 r0 = rodrigues_matrix(test::random_unit(rng), 1.9);
  std::vector<Vec3> qr;
  for (const Vec3& x : q) qr.push_back(r0 * x + Vec3(3, 3, 3));
  EXPECT_LT(align_point_sets(p, qr).rmsd, 1e-10);

  // A symmetric cluster admits several optimal pairings; generic points admit one.
  const auto g = test::random_points(rng, 30, 3.0);
  std::vector<int> gs = identity(g.size());
  std::shuffle(gs.begin(), gs.end(), rng);
  std::vector<Vec3> gq(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) gq[static_cast<std::size_t>(gs[j])] = r0 * g[j] + Vec3(3, 3, 3);
  const Alignment a = align_point_sets(g, gq);
  EXPECT_LT(a.rmsd, 1e-10);
  EXPECT_EQ(a.perm, gs);
}

TEST(Correspondence, ColinearTieBreakDeterministic) {
  const std::vector<Vec3> p{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
  const auto a = correspondence(p, p);
  EXPECT_EQ(a, correspondence(p, p));
  EXPECT_EQ(a, identity(3));
}

TEST(Alignment, OptimalNeverWorseThanIdentity) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + rng() % 20;
    const auto p = test::random_points(rng, n, 2.0);
    const auto q = test::random_points(rng, n, 2.0);
    const double ident = kabsch_rmsd(p, q, identity(n)).rmsd;
    EXPECT_LE(align_point_sets(p, q).rmsd, ident);
  }
}

TEST(Alignment, InvariantUnderRigidMotionAndRelabel) {
  std::mt19937_64 rng(12);
  const Cluster c = make_baseline_cluster(Material::ZnO, 7);
  const auto p = c.positions();
  std::normal_distribution<double> noise(0, 0.1);
  std::vector<Vec3> q = p;
  for (Vec3& x : q) x += Vec3(noise(rng), noise(rng), noise(rng));
  const double base = align_point_sets(p, q).rmsd;
  const Mat3 r0 = rodrigues_matrix(test::random_unit(rng), 2.2);
  std::vector<Vec3> moved;
  for (const Vec3& x : q) moved.push_back(r0 * x - Vec3(4, 1, 2));
  std::shuffle(moved.begin(), moved.end(), rng);
  EXPECT_NEAR(align_point_sets(p, moved).rmsd, base, 1e-9);
}

TEST(Alignment, SpeciesAware) {
  const Cluster c = make_baseline_cluster(Material::PbS, 6);
  const auto p = c.positions();
  std::vector<Species> sp;
  for (const Atom& a : c.atoms) sp.push_back(a.species);
  AlignOptions opt;
  opt.species_aware = true;
  const Alignment a = align_point_sets(p, p, opt, sp, sp);
  EXPECT_LT(a.rmsd, 1e-10);
  for (std::size_t j = 0; j < p.size(); ++j) EXPECT_EQ(sp[j], sp[static_cast<std::size_t>(a.perm[j])]);
  std::vector<Species> wrong(sp.size(), Species::Pb);
  EXPECT_TRUE(align_point_sets(p, p, opt, sp, wrong).species_fallback);
}

TEST(Chamfer, Cases) {
  std::mt19937_64 rng(4);
  const auto p = test::random_points(rng, 10, 1.0);
  const auto q = test::random_points(rng, 13, 1.0);
  EXPECT_EQ(chamfer(p, p), 0.0);
  EXPECT_EQ(chamfer(p, q), chamfer(q, p));
  const std::vector<Vec3> a{Vec3::Zero()};
  const std::vector<Vec3> b{Vec3::Zero(), Vec3(1, 0, 0)};
  EXPECT_DOUBLE_EQ(chamfer(a, b), 0.5);
  EXPECT_DOUBLE_EQ(chamfer(a, b, ChamferMode::MeanOfMeans), 0.25);
  EXPECT_THROW(chamfer(a, std::vector<Vec3>{}), InvalidInput);
  EXPECT_EQ(parse_chamfer_mode("mean"), ChamferMode::MeanOfMeans);
}

TEST(Chamfer, BoundedByRmsdAfterAlignment) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto p = test::random_points(rng, 12, 2.0);
    std::normal_distribution<double> noise(0, 0.3);
    std::vector<Vec3> q = p;
    for (Vec3& x : q) x += Vec3(noise(rng), noise(rng), noise(rng));
    const Alignment a = align_point_sets(p, q);
    Vec3 cp = Vec3::Zero(), cq = Vec3::Zero();
    for (std::size_t j = 0; j < p.size(); ++j) {
      cp += p[j];
      cq += q[j];
    }
    cp /= static_cast<double>(p.size());
    cq /= static_cast<double>(q.size());
    std::vector<Vec3> moved, centred;
    for (const Vec3& x : p) moved.push_back(a.rotation * (x - cp));
    for (const Vec3& x : q) centred.push_back(x - cq);
    EXPECT_LE(chamfer(moved, centred), a.rmsd + 1e-12);
  }
}

PairScore scored(std::size_t n, double chamfer_value) {
  PairScore s;
  s.readable = true;
  s.predicted_count = s.truth_count = n;
  s.chamfer = chamfer_value;
  return s;
}

TEST(MatchRate, Semantics) {
  std::vector<PairScore> exact{scored(4, 0.0), scored(4, 0.0)};
  EXPECT_EQ(*match_rate(exact), 100.0);
  std::vector<PairScore> boundary{scored(4, 0.25)};
  EXPECT_EQ(*match_rate(boundary), 100.0);
  std::vector<PairScore> over{scored(4, 0.2500001)};
  EXPECT_EQ(*match_rate(over), 0.0);
  PairScore mismatched;
  mismatched.readable = true;
  mismatched.predicted_count = 3;
  mismatched.truth_count = 4;
  std::vector<PairScore> none{mismatched, mismatched};
  EXPECT_FALSE(match_rate(none).has_value());
}

TEST(Task2, SelfEvaluation) {
  std::vector<GenPair> pairs;
  for (Material m : kAllMaterials) {
    const Cluster c = make_baseline_cluster(m, 6);
    pairs.push_back({std::string(name(m)), c, c});
  }
  const Task2Scores s = score_task2(pairs);
  EXPECT_EQ(s.validity, 100.0);
  EXPECT_EQ(*s.atom_count_error, 0.0);
  EXPECT_LT(*s.rmsd, 1e-9);
  EXPECT_EQ(*s.match_rate, 100.0);
}

TEST(Task2, DeletedAtomsGiveNotApplicable) {
  const Cluster truth = make_baseline_cluster(Material::Ag, 7);  // 44 atoms
  Cluster pred = truth;
  pred.atoms.resize(36);
  std::vector<GenPair> pairs{{"x", pred, truth}};
  const Task2Scores s = score_task2(pairs);
  EXPECT_NEAR(*s.atom_count_error, 100.0 * 8 / 44, 1e-12);
  EXPECT_FALSE(s.rmsd.has_value());
  EXPECT_FALSE(s.match_rate.has_value());

  const Cluster truth5 = make_baseline_cluster(Material::Ag, 10);  // 140 atoms
  Cluster pred5 = truth5;
  pred5.atoms.resize(112);
  std::vector<GenPair> pairs5{{"y", pred5, truth5}};
  EXPECT_DOUBLE_EQ(*score_task2(pairs5).atom_count_error, 20.0);
}

TEST(Task2, UnreadableExcludedFromRmsdButCountedInValidity) {
  const Cluster c = make_baseline_cluster(Material::Au, 6);
  std::vector<GenPair> pairs{{"ok", c, c}, {"bad", std::nullopt, c}};
  const Task2Scores s = score_task2(pairs);
  EXPECT_EQ(s.validity, 50.0);
  EXPECT_EQ(s.readable, 1u);
  EXPECT_EQ(s.count_matched, 1u);
  EXPECT_EQ(*s.match_rate, 100.0);
  EXPECT_FALSE(s.per_sample[1].warnings.empty());
}

TEST(Task2, ForeignElementWarns) {
  Cluster truth = make_baseline_cluster(Material::Ag, 6);
  Cluster pred = truth;
  pred.atoms[0].species = Species::O;
  std::vector<GenPair> pairs{{"x", pred, truth}};
  const Task2Scores s = score_task2(pairs);
  EXPECT_EQ(s.validity, 100.0);
  EXPECT_FALSE(s.per_sample[0].warnings.empty());
}

TEST(Task2, PermutationInvariantAggregates) {
  std::mt19937_64 rng(6);
  std::vector<GenPair> pairs;
  for (int k = 6; k <= 10; ++k) {
    const Cluster t = make_baseline_cluster(Material::Ag, k);
    Cluster p = t;
    std::normal_distribution<double> n(0, 0.02 * k);
    for (Atom& a : p.atoms) a.position += Vec3(n(rng), n(rng), n(rng));
    if (k == 8) p.atoms.pop_back();
    pairs.push_back({"R" + std::to_string(k), p, t});
  }
  const Task2Scores a = score_task2(pairs);
  std::reverse(pairs.begin(), pairs.end());
  const Task2Scores b = score_task2(pairs);
  EXPECT_EQ(a.validity, b.validity);
  EXPECT_NEAR(*a.atom_count_error, *b.atom_count_error, 1e-12);
  EXPECT_NEAR(*a.rmsd, *b.rmsd, 1e-12);
  EXPECT_EQ(*a.match_rate, *b.match_rate);
}

// Gaussian jitter of the ground truth: expected RMSD ~ sigma sqrt(3); the
// numpy/scipy oracle measures the ratio at 0.972 over 20 draws on Au R9.
TEST(Task2, JitterCalibration) {
  const Cluster truth = make_baseline_cluster(Material::Au, 9);
  ASSERT_EQ(truth.size(), 104u);
  std::mt19937_64 rng(2025);
  for (double sigma : {0.05, 0.5}) {
    std::vector<GenPair> pairs;
    for (int t = 0; t < 5; ++t) {
      Cluster p = truth;
      std::normal_distribution<double> n(0, sigma);
      for (Atom& a : p.atoms) a.position += Vec3(n(rng), n(rng), n(rng));
      std::shuffle(p.atoms.begin(), p.atoms.end(), rng);
      pairs.push_back({std::to_string(t), p, truth});
    }
    const Task2Scores s = score_task2(pairs);
    if (sigma == 0.05) {
      EXPECT_EQ(s.validity, 100.0);
      EXPECT_NEAR(*s.rmsd, sigma * std::sqrt(3.0), 0.2 * sigma * std::sqrt(3.0));
      EXPECT_EQ(*s.match_rate, 100.0);
    } else {
      EXPECT_EQ(*s.match_rate, 0.0);
    }
  }
}

TEST(AlignedChamfer, RotatedCopyIsZero) {
  const Cluster c = make_baseline_cluster(Material::ZnO, 6);
  const auto p = c.positions();
  std::vector<Vec3> q;
  const Mat3 r = rodrigues_matrix(fibonacci_axes(9)[4], 0.8);
  for (const Vec3& x : p) q.push_back(r * x);
  EXPECT_LT(aligned_chamfer(p, q), 1e-9);
  EXPECT_GT(chamfer(p, q), 0.1);
}

}  // namespace
}  // namespace mcs
