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

#include "mcs/metrics_text.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <map>
#include <unordered_map>

namespace mcs {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }
bool is_word_char(char c) { return is_alpha(c) || is_digit(c) || is_high(c) || c == '_'; }

/// Length of a number literal starting at text[i], or 0.
std::size_t number_length(std::string_view text, std::size_t i) {
  std::size_t j = i;
  if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
  const std::size_t int_start = j;
  while (j < text.size() && is_digit(text[j])) ++j;
  const bool has_int = j > int_start;
  bool has_frac = false;
  if (j < text.size() && text[j] == '.') {
    std::size_t k = j + 1;
    while (k < text.size() && is_digit(text[k])) ++k;
    has_frac = k > j + 1;
    if (has_int || has_frac) j = k;
  }
  if (!has_int && !has_frac) return 0;
  if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
    std::size_t k = j + 1;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
    const std::size_t exp_start = k;
    while (k < text.size() && is_digit(text[k])) ++k;
    if (k > exp_start) j = k;
  }
  return j - i;
}

bool starts_number(std::string_view text, std::size_t i) {
  if (i > 0 && (is_word_char(text[i - 1]) || text[i - 1] == '.')) return false;
  return number_length(text, i) > 0;
}

/// Round a decimal literal to integer thousandths, half away from zero,
/// working on the digits so that "4.0855" rounds up exactly.
std::int64_t round_thousandths(std::string_view literal) {
  bool negative = false;
  std::size_t i = 0;
  if (literal[i] == '+' || literal[i] == '-') negative = literal[i++] == '-';
  std::string digits;
  long long point = 0;
  bool seen_point = false;
  for (; i < literal.size() && literal[i] != 'e' && literal[i] != 'E'; ++i) {
    if (literal[i] == '.') {
      seen_point = true;
      continue;
    }
    digits.push_back(literal[i]);
    if (!seen_point) ++point;
  }
  long long exponent = 0;
  if (i < literal.size()) {
    const std::string exp_text(literal.substr(i + 1));
    exponent = std::clamp(std::strtoll(exp_text.c_str(), nullptr, 10), -100000LL, 100000LL);
  }
  const long long keep = point + exponent + 3;  // digits left of the 1e-3 place
  if (keep > 18) {
    const long double v = std::strtold(std::string(literal).c_str(), nullptr) * 1000.0L;
    return v > static_cast<long double>(INT64_MAX)    ? INT64_MAX
           : v < static_cast<long double>(INT64_MIN) ? INT64_MIN
                                                     : std::llround(v);
  }
  std::int64_t value = 0;
  for (long long k = 0; k < keep; ++k) {
    const char d = k < static_cast<long long>(digits.size()) ? digits[static_cast<std::size_t>(k)] : '0';
    value = value * 10 + (d - '0');
  }
  if (keep >= 0 && keep < static_cast<long long>(digits.size()) &&
      digits[static_cast<std::size_t>(keep)] >= '5') {
    ++value;
  }
  return negative ? -value : value;
}

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

int clipped_overlap(const NgramCounts& candidate, const NgramCounts& reference) {
  int overlap = 0;
  for (const auto& [gram, count] : candidate) {
    const auto it = reference.find(gram);
    if (it != reference.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

double f1(int overlap, std::size_t cand_total, std::size_t ref_total) {
  if (overlap == 0 || cand_total == 0 || ref_total == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(cand_total);
  const double r = static_cast<double>(overlap) / static_cast<double>(ref_total);
  return 2.0 * p * r / (p + r);
}

std::size_t lcs_length(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  std::vector<std::size_t> prev(y.size() + 1, 0);
  std::vector<std::size_t> cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

/// Lowercase, non-alphanumerics to single spaces, space padded.
std::string normalize_phrase(std::string_view text) {
  std::string out = " ";
  for (char c : text) {
    if (is_alpha(c) || is_digit(c)) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (out.back() != ' ') {
      out.push_back(' ');
    }
  }
  if (out.back() != ' ') out.push_back(' ');
  return out;
}

bool contains_phrase(const std::string& normalized_text, std::string_view phrase) {
  return normalized_text.find(normalize_phrase(phrase)) != std::string::npos;
}

template <class Sample>
std::unordered_map<std::string, const Sample*> index_by_id(std::span<const Sample> samples) {
  std::unordered_map<std::string, const Sample*> index;
  for (const Sample& s : samples) {
    if (!index.emplace(s.id, &s).second) throw InvalidInput("duplicate sample id '" + s.id + "'");
  }
  return index;
}

template <class A, class B>
void require_same_ids(std::span<const A> lhs, std::span<const B> rhs) {
  if (lhs.size() != rhs.size()) {
    throw InvalidInput("sample lists differ in length (" + std::to_string(lhs.size()) + " vs " +
                       std::to_string(rhs.size()) + ")");
  }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_word_char(c) && !is_digit(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      for (char& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      tokens.push_back(std::move(word));
      i = j;
    } else if (starts_number(text, i)) {
      const std::size_t len = number_length(text, i);
      std::string number(text.substr(i, len));
      for (char& ch : number) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      tokens.push_back(std::move(number));
      i += len;
    } else {
      ++i;
    }
  }
  return tokens;
}

BleuResult bleu4_detail(std::string_view candidate, std::string_view reference,
                        const BleuOptions& options) {
  const std::vector<std::string> cand = tokenize(candidate);
  const std::vector<std::string> ref = tokenize(reference);
  BleuResult out;
  out.candidate_length = cand.size();
  out.reference_length = ref.size();
  if (cand.empty()) {
    out.empty_candidate = true;
    return out;
  }
  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 1; n <= 4; ++n) {
    const NgramCounts cn = ngrams(cand, n);
    const std::size_t total = cand.size() >= n ? cand.size() - n + 1 : 0;
    const int matched = clipped_overlap(cn, ngrams(ref, n));
    double p = total > 0 ? static_cast<double>(matched) / static_cast<double>(total) : 0.0;
    if (matched == 0 && options.smoothing_epsilon > 0.0) {
      p = options.smoothing_epsilon / static_cast<double>(std::max<std::size_t>(total, 1));
    }
    out.precisions[n - 1] = p;
    if (p <= 0.0) {
      zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  const double ratio = static_cast<double>(ref.size()) / static_cast<double>(cand.size());
  out.brevity_penalty = std::exp(std::min(0.0, 1.0 - ratio));
  out.score = zero ? 0.0 : out.brevity_penalty * std::exp(0.25 * log_sum);
  return out;
}

double bleu4(std::string_view candidate, std::string_view reference, const BleuOptions& options) {
  return bleu4_detail(candidate, reference, options).score;
}

RougeScores rouge(std::string_view candidate, std::string_view reference, double beta) {
  const std::vector<std::string> cand = tokenize(candidate);
  const std::vector<std::string> ref = tokenize(reference);
  if (ref.empty()) throw InvalidInput("ROUGE needs a nonempty reference");
  RougeScores out;
  if (cand.empty()) return out;

  out.rouge1 = f1(clipped_overlap(ngrams(cand, 1), ngrams(ref, 1)), cand.size(), ref.size());
  if (cand.size() < 2 && ref.size() < 2) {
    out.rouge2 = cand == ref ? 1.0 : 0.0;
  } else {
    out.rouge2 = f1(clipped_overlap(ngrams(cand, 2), ngrams(ref, 2)),
                    cand.size() >= 2 ? cand.size() - 1 : 0, ref.size() >= 2 ? ref.size() - 1 : 0);
  }

  const auto lcs = static_cast<double>(lcs_length(cand, ref));
  if (lcs > 0.0) {
    const double p = lcs / static_cast<double>(cand.size());
    const double r = lcs / static_cast<double>(ref.size());
    const double b2 = beta * beta;
    out.rougeL = (1.0 + b2) * p * r / (r + b2 * p);
  }
  return out;
}

NumberMultiset extract_numbers(std::string_view text) {
  NumberMultiset out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (starts_number(text, i)) {
      const std::size_t len = number_length(text, i);
      out.push_back(round_thousandths(text.substr(i, len)));
      i += len;
    } else if (is_word_char(text[i])) {
      while (i < text.size() && is_word_char(text[i])) ++i;
    } else {
      ++i;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double fact_score(std::span<const TextSample> predictions, std::span<const TextSample> references) {
  require_same_ids(predictions, references);
  if (predictions.empty()) throw InvalidInput("FactScore over an empty sample list");
  const auto refs = index_by_id(references);
  std::size_t hits = 0;
  for (const TextSample& p : predictions) {
    const auto it = refs.find(p.id);
    if (it == refs.end()) throw InvalidInput("prediction id '" + p.id + "' has no reference");
    if (extract_numbers(p.text) == extract_numbers(it->second->text)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

Symmetry structure_of(Material material) {
  switch (material) {
    case Material::Ag:
    case Material::Au: return Symmetry::Fcc;
    case Material::PbS: return Symmetry::RockSalt;
    case Material::ZnO: return Symmetry::Wurtzite;
  }
  return Symmetry::Fcc;
}

bool mentions_material(std::string_view text, Material material) {
  static const std::map<Material, std::vector<std::string_view>> kNames = {
      {Material::Ag, {"ag", "silver"}},
      {Material::Au, {"au", "gold"}},
      {Material::PbS, {"pbs", "lead sulfide", "lead sulphide", "lead ii sulfide", "galena"}},
      {Material::ZnO, {"zno", "zinc oxide", "zincite"}},
  };
  const std::string normalized = normalize_phrase(text);
  for (std::string_view phrase : kNames.at(material)) {
    if (contains_phrase(normalized, phrase)) return true;
  }
  return false;
}

bool mentions_structure(std::string_view text, Symmetry structure) {
  static const std::vector<std::string_view> kFcc = {
      "fcc", "face centred cubic", "face centered cubic", "face centred", "face centered",
      "cubic close packed", "ccp"};
  static const std::vector<std::string_view> kRockSalt = {"rock salt", "rocksalt", "halite",
                                                          "nacl type", "nacl structure"};
  static const std::vector<std::string_view> kWurtzite = {"wurtzite", "hexagonal"};
  const std::string normalized = normalize_phrase(text);
  auto any = [&](const std::vector<std::string_view>& phrases) {
    return std::any_of(phrases.begin(), phrases.end(),
                       [&](std::string_view p) { return contains_phrase(normalized, p); });
  };
  switch (structure) {
    case Symmetry::Fcc: return any(kFcc);
    // rock salt is two interpenetrating fcc sublattices; either name counts
    case Symmetry::RockSalt: return any(kRockSalt) || any(kFcc);
    case Symmetry::Wurtzite: return any(kWurtzite);
  }
  return false;
}

MatchRates match_rates(std::span<const TextSample> predictions,
                       std::span<const MaterialLabel> references) {
  require_same_ids(predictions, references);
  MatchRates out;
  if (predictions.empty()) return out;
  const auto refs = index_by_id(references);
  std::size_t mat = 0;
  std::size_t str = 0;
  for (const TextSample& p : predictions) {
    const auto it = refs.find(p.id);
    if (it == refs.end()) throw InvalidInput("prediction id '" + p.id + "' has no reference");
    mat += mentions_material(p.text, it->second->material) ? 1 : 0;
    str += mentions_structure(p.text, structure_of(it->second->material)) ? 1 : 0;
  }
  const auto n = static_cast<double>(predictions.size());
  out.material = static_cast<double>(mat) / n;
  out.structure = static_cast<double>(str) / n;
  return out;
}

ScalarVector mae(std::span<const ScalarSample> predictions, std::span<const ScalarSample> targets) {
  require_same_ids(predictions, targets);
  if (predictions.empty()) throw InvalidInput("MAE over an empty sample list");
  const auto index = index_by_id(targets);
  std::array<double, 6> sum{};
  std::array<std::size_t, 6> count{};
  for (const ScalarSample& p : predictions) {
    const auto it = index.find(p.id);
    if (it == index.end()) throw InvalidInput("prediction id '" + p.id + "' has no target");
    for (std::size_t k = 0; k < 6; ++k) {
      const auto& yhat = p.values[k];
      const auto& y = it->second->values[k];
      if (yhat && y) {
        sum[k] += std::abs(*yhat - *y);
        ++count[k];
      }
    }
  }
  ScalarVector out;
  for (std::size_t k = 0; k < 6; ++k) {
    if (count[k] > 0) out[k] = sum[k] / static_cast<double>(count[k]);
  }
  return out;
}

std::optional<double> percent_delta(double prediction, double target) {
  if (target == 0.0 || !std::isfinite(prediction) || !std::isfinite(target)) return std::nullopt;
  return 100.0 * std::abs(prediction - target) / std::abs(target);
}

Task1Scores score_task1(std::span<const Task1Prediction> predictions,
                        std::span<const Task1Reference> references,
                        const Task1Options& options) {
  if (predictions.empty()) throw InvalidInput("no Task 1 predictions to score");
  const auto refs = index_by_id(references);

  Task1Scores out;
  out.samples = predictions.size();
  std::vector<ScalarSample> pred_scalars;
  std::vector<ScalarSample> ref_scalars;
  std::vector<TextSample> pred_text;
  std::vector<TextSample> ref_text;
  std::vector<MaterialLabel> labels;
  std::array<double, 7> pct_sum{};
  std::array<std::size_t, 7> pct_count{};

  for (const Task1Prediction& p : predictions) {
    const auto it = refs.find(p.id);
    if (it == refs.end()) throw InvalidInput("prediction id '" + p.id + "' has no reference");
    const Task1Reference& r = *it->second;

    ScalarSample ref_sample{r.id, {}};
    for (std::size_t k = 0; k < 6; ++k) ref_sample.values[k] = r.scalars[k];
    pred_scalars.push_back({p.id, p.scalars});
    ref_scalars.push_back(ref_sample);
    const std::string summary = p.summary.value_or("");
    pred_text.push_back({p.id, summary});
    ref_text.push_back({r.id, r.summary});
    labels.push_back({r.id, r.material});

    Task1SampleScore s;
    s.id = p.id;
    for (std::size_t k = 0; k < 6; ++k) {
      if (p.scalars[k]) s.abs_error[k] = std::abs(*p.scalars[k] - r.scalars[k]);
    }
    // Atoms, V, a, b, c, NN, rho
    const std::array<std::optional<double>, 7> pred_cols = {
        p.atom_count, p.scalars[3], p.scalars[0], p.scalars[1],
        p.scalars[2], p.scalars[4], p.scalars[5]};
    const std::array<double, 7> ref_cols = {r.atom_count,  r.scalars[3], r.scalars[0],
                                            r.scalars[1], r.scalars[2], r.scalars[4],
                                            r.scalars[5]};
    for (std::size_t k = 0; k < 7; ++k) {
      if (pred_cols[k]) s.percent[k] = percent_delta(*pred_cols[k], ref_cols[k]);
      if (s.percent[k]) {
        pct_sum[k] += *s.percent[k];
        ++pct_count[k];
      }
    }
    const BleuResult bleu = bleu4_detail(summary, r.summary, options.bleu);
    if (bleu.empty_candidate) out.warnings.push_back(p.id + ": empty summary, BLEU = 0");
    s.bleu = bleu.score;
    s.rouge = r.summary.empty() ? RougeScores{} : rouge(summary, r.summary, options.rouge_beta);
    s.fact_match = extract_numbers(summary) == extract_numbers(r.summary);
    s.material_match = mentions_material(summary, r.material);
    s.structure_match = mentions_structure(summary, structure_of(r.material));
    out.per_sample.push_back(std::move(s));
  }

  out.mae = mae(pred_scalars, ref_scalars);
  for (std::size_t k = 0; k < 7; ++k) {
    if (pct_count[k] > 0) out.percent_delta[k] = pct_sum[k] / static_cast<double>(pct_count[k]);
  }
  for (const Task1SampleScore& s : out.per_sample) {
    out.bleu += s.bleu;
    out.rouge.rouge1 += s.rouge.rouge1;
    out.rouge.rouge2 += s.rouge.rouge2;
    out.rouge.rougeL += s.rouge.rougeL;
  }
  const auto n = static_cast<double>(out.per_sample.size());
  out.bleu /= n;
  out.rouge.rouge1 /= n;
  out.rouge.rouge2 /= n;
  out.rouge.rougeL /= n;
  out.fact_score = fact_score(pred_text, ref_text);
  const MatchRates rates = match_rates(pred_text, labels);
  out.material_match = rates.material;
  out.structure_match = rates.structure;
  return out;
}

}  // namespace mcs
