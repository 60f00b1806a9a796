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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcs/lattice.hpp"
#include "mcs/types.hpp"

namespace mcs {

/// Lowercased tokens: words (ASCII letters/digits plus any non-ASCII byte),
/// and number literals kept whole ("4.086", "-1e-3"). Punctuation is dropped.
std::vector<std::string> tokenize(std::string_view text);

struct BleuOptions {
  /// Replaces a zero n-gram precision by epsilon / total when > 0.
  double smoothing_epsilon = 0.0;
};

struct BleuResult {
  std::array<double, 4> precisions{};
  double brevity_penalty = 0.0;
  double score = 0.0;
  std::size_t candidate_length = 0;
  std::size_t reference_length = 0;
  bool empty_candidate = false;
};

/// Sentence BLEU-4 against one reference: clipped n-gram precisions,
/// BP = exp(min(0, 1 - r/c)), score = BP exp(mean ln p_n); 0 if any p_n = 0.
BleuResult bleu4_detail(std::string_view candidate, std::string_view reference,
                        const BleuOptions& options = {});
double bleu4(std::string_view candidate, std::string_view reference,
             const BleuOptions& options = {});

struct RougeScores {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
};

/// ROUGE-1/2 are n-gram F1; ROUGE-L is the LCS F_beta of Lin.
/// Throws InvalidInput on an empty reference.
RougeScores rouge(std::string_view candidate, std::string_view reference, double beta = 1.2);

/// Decimal literals rounded half away from zero to 1e-3, held as integer
/// thousandths and sorted. Digits glued to a preceding letter ("R9") are part
/// of a word, not a number.
using NumberMultiset = std::vector<std::int64_t>;

NumberMultiset extract_numbers(std::string_view text);

struct TextSample {
  std::string id;
  std::string text;
};

/// Fraction of samples whose number multisets agree exactly. Both lists must
/// carry the same ids (order free).
double fact_score(std::span<const TextSample> predictions, std::span<const TextSample> references);

bool mentions_material(std::string_view text, Material material);
bool mentions_structure(std::string_view text, Symmetry structure);
Symmetry structure_of(Material material);

struct MaterialLabel {
  std::string id;
  Material material;
};

struct MatchRates {
  double material = 0.0;
  double structure = 0.0;
};

MatchRates match_rates(std::span<const TextSample> predictions,
                       std::span<const MaterialLabel> references);

/// Order of the six regression targets.
inline constexpr std::array<std::string_view, 6> kTask1Scalars = {
    "a", "b", "c", "V", "nn_mean", "density_g_cm3"};

using ScalarVector = std::array<std::optional<double>, 6>;

struct ScalarSample {
  std::string id;
  ScalarVector values;
};

/// Component-wise mean absolute error over the samples where both sides carry
/// the component. Throws on empty input or id mismatch.
ScalarVector mae(std::span<const ScalarSample> predictions, std::span<const ScalarSample> targets);

/// 100 |pred - target| / |target|; empty when target == 0.
std::optional<double> percent_delta(double prediction, double target);

/// Column order of the percent-error block: Atoms, V, a, b, c, NN, rho.
inline constexpr std::array<std::string_view, 7> kPercentColumns = {
    "atoms", "V", "a", "b", "c", "nn", "density"};

using PercentVector = std::array<std::optional<double>, 7>;

struct Task1Prediction {
  std::string id;
  ScalarVector scalars;
  std::optional<double> atom_count;
  std::optional<std::string> summary;
};

struct Task1Reference {
  std::string id;
  std::array<double, 6> scalars{};
  double atom_count = 0.0;
  std::string summary;
  Material material = Material::Ag;
};

struct Task1Options {
  BleuOptions bleu;
  double rouge_beta = 1.2;
};

struct Task1SampleScore {
  std::string id;
  ScalarVector abs_error;
  PercentVector percent;
  double bleu = 0.0;
  RougeScores rouge;
  bool fact_match = false;
  bool material_match = false;
  bool structure_match = false;
};

struct Task1Scores {
  std::size_t samples = 0;
  ScalarVector mae;
  PercentVector percent_delta;  // mean over samples with a defined value
  double bleu = 0.0;
  RougeScores rouge;
  double fact_score = 0.0;
  double material_match = 0.0;
  double structure_match = 0.0;
  std::vector<Task1SampleScore> per_sample;
  std::vector<std::string> warnings;
};

/// Scores every prediction against the reference with the same id. Unknown
/// prediction ids are an error; references without a prediction are ignored.
Task1Scores score_task1(std::span<const Task1Prediction> predictions,
                        std::span<const Task1Reference> references,
                        const Task1Options& options = {});

}  // namespace mcs
