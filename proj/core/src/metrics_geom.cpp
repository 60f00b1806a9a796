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

#include "mcs/metrics_geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "mcs/assignment.hpp"

namespace mcs {

namespace {

Vec3 centroid(std::span<const Vec3> pts) {
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : pts) c += p;
  return pts.empty() ? c : Vec3(c / static_cast<double>(pts.size()));
}

std::vector<Vec3> centered(std::span<const Vec3> pts) {
  const Vec3 c = centroid(pts);
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const Vec3& p : pts) out.push_back(p - c);
  return out;
}

std::vector<Vec3> transformed(const Mat3& r, std::span<const Vec3> pts) {
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const Vec3& p : pts) out.push_back(r * p);
  return out;
}

/// Eigenvectors of the (unweighted) second-moment tensor of a centered set,
/// signs fixed by the third moment along each axis, det = +1.
Mat3 principal_frame(std::span<const Vec3> pts) {
  Mat3 m = Mat3::Zero();
  for (const Vec3& p : pts) m += p * p.transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> solver(m);
  Mat3 e = solver.eigenvectors();
  for (int k = 0; k < 3; ++k) {
    double skew3 = 0.0;
    for (const Vec3& p : pts) skew3 += std::pow(e.col(k).dot(p), 3);
    double sign = skew3 < 0.0 ? -1.0 : 1.0;
    if (skew3 == 0.0) {
      Eigen::Index idx = 0;
      e.col(k).cwiseAbs().maxCoeff(&idx);
      sign = e(idx, k) < 0.0 ? -1.0 : 1.0;
    }
    e.col(k) *= sign;
  }
  if (e.determinant() < 0.0) e.col(2) *= -1.0;
  return e;
}

/// The four proper rotations taking the principal frame of p onto that of q,
/// canonical signs first.
std::array<Mat3, 4> principal_alignments(std::span<const Vec3> p, std::span<const Vec3> q) {
  const Mat3 ep = principal_frame(p);
  const Mat3 eq = principal_frame(q);
  const std::array<Vec3, 4> signs = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1),
                                     Vec3(-1, -1, 1)};
  std::array<Mat3, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = eq * signs[i].asDiagonal() * ep.transpose();
  return out;
}

double directed_mean(std::span<const Vec3> from, std::span<const Vec3> to) {
  double sum = 0.0;
  for (const Vec3& a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& b : to) best = std::min(best, (a - b).squaredNorm());
    sum += std::sqrt(best);
  }
  return sum / static_cast<double>(from.size());
}

// Cross-species pairs carry a cost no same-species pairing can reach.
constexpr double kSpeciesPenalty = 1e12;

struct PairingProblem {
  std::vector<Vec3> p;  // centered
  std::vector<Vec3> q;  // centered
  std::span<const Species> p_species;
  std::span<const Species> q_species;
  bool species_aware = false;

  std::vector<int> assign(const Mat3& r) const {
    const auto n = static_cast<Eigen::Index>(p.size());
    Eigen::MatrixXd cost(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vec3 rp = r * p[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < n; ++j) {
        cost(i, j) = (rp - q[static_cast<std::size_t>(j)]).squaredNorm();
        if (species_aware && p_species[static_cast<std::size_t>(i)] !=
                                 q_species[static_cast<std::size_t>(j)]) {
          cost(i, j) += kSpeciesPenalty;
        }
      }
    }
    return solve_assignment(cost);
  }

  bool species_consistent(std::span<const int> perm) const {
    if (!species_aware) return true;
    for (std::size_t j = 0; j < perm.size(); ++j) {
      if (p_species[j] != q_species[static_cast<std::size_t>(perm[j])]) return false;
    }
    return true;
  }
};

}  // namespace

double min_separation(std::span<const Vec3> points) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, (points[i] - points[j]).squaredNorm());
    }
  }
  return std::sqrt(best);
}

bool is_valid_structure(std::span<const Vec3> points, double min_sep) {
  if (points.size() < 2) return true;
  return min_separation(points) > min_sep;
}

double validity(std::span<const std::vector<Vec3>> structures, double min_sep) {
  if (structures.empty()) throw InvalidInput("validity over an empty structure list");
  std::size_t ok = 0;
  for (const auto& s : structures) ok += is_valid_structure(s, min_sep) ? 1 : 0;
  return 100.0 * static_cast<double>(ok) / static_cast<double>(structures.size());
}

double atom_count_error(std::span<const CountPair> pairs) {
  if (pairs.empty()) throw InvalidInput("atom-count error over an empty pair list");
  double sum = 0.0;
  for (const CountPair& c : pairs) {
    if (c.truth == 0) throw InvalidInput("ground-truth cluster has no atoms");
    sum += 100.0 * std::abs(static_cast<double>(c.predicted) - static_cast<double>(c.truth)) /
           static_cast<double>(c.truth);
  }
  return sum / static_cast<double>(pairs.size());
}

KabschResult kabsch_rmsd(std::span<const Vec3> p, std::span<const Vec3> q,
                         std::span<const int> perm) {
  if (p.size() != q.size() || perm.size() != p.size()) {
    throw InvalidInput("Kabsch needs equal-size point sets and a matching permutation");
  }
  if (p.empty()) throw InvalidInput("Kabsch on empty point sets");
  std::vector<char> seen(q.size(), 0);
  for (int j : perm) {
    if (j < 0 || static_cast<std::size_t>(j) >= q.size() || seen[static_cast<std::size_t>(j)]) {
      throw InvalidInput("invalid correspondence permutation");
    }
    seen[static_cast<std::size_t>(j)] = 1;
  }
  const Vec3 cp = centroid(p);
  const Vec3 cq = centroid(q);
  Mat3 h = Mat3::Zero();
  for (std::size_t j = 0; j < p.size(); ++j) {
    h += (p[j] - cp) * (q[static_cast<std::size_t>(perm[j])] - cq).transpose();
  }
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  Vec3 d(1.0, 1.0, (v * u.transpose()).determinant() < 0.0 ? -1.0 : 1.0);
  KabschResult out;
  out.rotation = v * d.asDiagonal() * u.transpose();
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    sum += (out.rotation * (p[j] - cp) - (q[static_cast<std::size_t>(perm[j])] - cq)).squaredNorm();
  }
  out.rmsd = std::sqrt(sum / static_cast<double>(p.size()));
  return out;
}

Alignment align_point_sets(std::span<const Vec3> p, std::span<const Vec3> q,
                           const AlignOptions& options, std::span<const Species> p_species,
                           std::span<const Species> q_species) {
  if (p.size() != q.size()) {
    throw InvalidInput("correspondence needs equal-size sets (" + std::to_string(p.size()) +
                       " vs " + std::to_string(q.size()) + ")");
  }
  if (p.empty()) throw InvalidInput("correspondence on empty point sets");

  PairingProblem problem{centered(p), centered(q), p_species, q_species, false};
  Alignment best;
  if (options.species_aware) {
    if (p_species.size() != p.size() || q_species.size() != q.size()) {
      throw InvalidInput("species-aware pairing needs species for every point");
    }
    std::vector<Species> a(p_species.begin(), p_species.end());
    std::vector<Species> b(q_species.begin(), q_species.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    problem.species_aware = a == b;
    best.species_fallback = a != b;
  }

  best.rmsd = std::numeric_limits<double>::infinity();
  auto refine = [&](std::vector<int> perm) {
    double previous = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= options.max_iterations; ++it) {
      const KabschResult k = kabsch_rmsd(p, q, perm);
      if (k.rmsd < best.rmsd && problem.species_consistent(perm)) {
        const bool fallback = best.species_fallback;
        best = {perm, k.rotation, k.rmsd, it, fallback};
      }
      const double change = std::abs(previous - k.rmsd);
      if (change <= options.tolerance * std::max(k.rmsd, 1e-300) || k.rmsd == 0.0) break;
      previous = k.rmsd;
      perm = problem.assign(k.rotation);
    }
  };

  std::vector<int> identity(p.size());
  std::iota(identity.begin(), identity.end(), 0);
  refine(identity);
  std::vector<Mat3> starts = {Mat3::Identity()};
  for (const Mat3& m : principal_alignments(problem.p, problem.q)) starts.push_back(m);
  for (const Mat3& start : starts) {
    if (best.rmsd <= 1e-12) break;
    refine(problem.assign(start));
  }
  return best;
}

std::vector<int> correspondence(std::span<const Vec3> p, std::span<const Vec3> q,
                                const AlignOptions& options, std::span<const Species> p_species,
                                std::span<const Species> q_species) {
  return align_point_sets(p, q, options, p_species, q_species).perm;
}

std::string_view name(ChamferMode m) { return m == ChamferMode::MeanOfMeans ? "mean" : "max"; }

std::optional<ChamferMode> parse_chamfer_mode(std::string_view text) {
  if (text == "max") return ChamferMode::MaxOfMeans;
  if (text == "mean") return ChamferMode::MeanOfMeans;
  return std::nullopt;
}

double chamfer(std::span<const Vec3> p, std::span<const Vec3> q, ChamferMode mode) {
  if (p.empty() || q.empty()) throw InvalidInput("Chamfer distance of an empty set");
  const double pq = directed_mean(p, q);
  const double qp = directed_mean(q, p);
  return mode == ChamferMode::MaxOfMeans ? std::max(pq, qp) : 0.5 * (pq + qp);
}

double aligned_chamfer(std::span<const Vec3> p, std::span<const Vec3> q, ChamferMode mode,
                       const AlignOptions& options) {
  if (p.empty() || q.empty()) throw InvalidInput("Chamfer distance of an empty set");
  const std::vector<Vec3> pc = centered(p);
  const std::vector<Vec3> qc = centered(q);
  if (p.size() == q.size()) {
    const Alignment a = align_point_sets(p, q, options);
    return chamfer(transformed(a.rotation, pc), qc, mode);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const Mat3& m : principal_alignments(pc, qc)) {
    best = std::min(best, chamfer(transformed(m, pc), qc, mode));
  }
  return best;
}

std::optional<double> match_rate(std::span<const PairScore> pairs, double tolerance) {
  std::size_t matched = 0;
  std::size_t hits = 0;
  for (const PairScore& s : pairs) {
    if (!s.count_matched() || !s.chamfer) continue;
    ++matched;
    if (*s.chamfer <= tolerance) ++hits;
  }
  if (matched == 0) return std::nullopt;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(matched);
}

std::vector<Species> species_of(Material m) {
  switch (m) {
    case Material::Ag: return {Species::Ag};
    case Material::Au: return {Species::Au};
    case Material::PbS: return {Species::Pb, Species::S};
    case Material::ZnO: return {Species::Zn, Species::O};
  }
  return {};
}

Task2Scores score_task2(std::span<const GenPair> pairs, const Task2Options& options) {
  if (pairs.empty()) throw InvalidInput("no Task 2 pairs to score");
  Task2Scores out;
  out.samples = pairs.size();

  std::size_t valid = 0;
  double ace_sum = 0.0;
  double rmsd_sum = 0.0;
  for (const GenPair& pair : pairs) {
    PairScore s;
    s.id = pair.id;
    s.truth_count = pair.truth.size();
    if (s.truth_count == 0) throw InvalidInput("ground truth '" + pair.id + "' has no atoms");
    const std::optional<Material> material =
        options.material ? options.material : pair.truth.provenance.material;
    const std::vector<Species> expected = material ? species_of(*material) : std::vector<Species>{};
    const bool species_aware = options.species_aware.value_or(
        material == Material::PbS || material == Material::ZnO);
    if (pair.prediction && !pair.prediction->atoms.empty()) {
      const Cluster& pred = *pair.prediction;
      const std::vector<Vec3> pp = pred.positions();
      s.readable = true;
      s.predicted_count = pred.size();
      s.single_atom = pred.size() == 1;
      s.valid = is_valid_structure(pp, options.min_separation);
      const CountPair counts{s.predicted_count, s.truth_count};
      s.count_error = atom_count_error(std::span(&counts, 1));
      if (!expected.empty()) {
        for (const Atom& a : pred.atoms) {
          if (std::find(expected.begin(), expected.end(), a.species) == expected.end()) {
            s.warnings.push_back("element " + std::string(symbol(a.species)) +
                                 " not in the target chemistry");
            break;
          }
        }
      }
      if (s.count_matched()) {
        std::vector<Species> ps, qs;
        for (const Atom& a : pred.atoms) ps.push_back(a.species);
        for (const Atom& a : pair.truth.atoms) qs.push_back(a.species);
        AlignOptions align = options.align;
        align.species_aware = species_aware;
        const std::vector<Vec3> qp = pair.truth.positions();
        const Alignment a = align_point_sets(pp, qp, align, ps, qs);
        if (a.species_fallback) s.warnings.push_back("species differ; pairing ignores species");
        s.rmsd = a.rmsd;
        s.chamfer = chamfer(transformed(a.rotation, centered(pp)), centered(qp),
                            options.chamfer_mode);
        rmsd_sum += a.rmsd;
        ++out.count_matched;
      }
      ace_sum += *s.count_error;
      ++out.readable;
    } else {
      s.warnings.push_back("prediction unreadable or empty; scored invalid");
    }
    valid += s.valid ? 1 : 0;
    out.per_sample.push_back(std::move(s));
  }

  out.validity = 100.0 * static_cast<double>(valid) / static_cast<double>(out.samples);
  if (out.readable > 0) out.atom_count_error = ace_sum / static_cast<double>(out.readable);
  if (out.count_matched > 0) out.rmsd = rmsd_sum / static_cast<double>(out.count_matched);
  out.match_rate = match_rate(out.per_sample, options.tolerance);
  return out;
}

}  // namespace mcs
