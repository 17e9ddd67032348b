#include "ctfeat/refscore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "ctfeat/io.hpp"

namespace ctfeat {

ReferenceSet ReferenceSet::from_lines(const std::vector<std::string>& lines,
                                      const std::string& source) {
  ReferenceSet set;
  set.source = source;
  size_t lineno = 0;
  for (const auto& raw : lines) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto tokens = tokenize(line);
    if (tokens.empty())
      throw std::runtime_error("reference line " + std::to_string(lineno) +
                               " has no word tokens (" + source + ")");
    set.references.push_back(std::move(tokens));
  }
  if (set.references.empty())
    throw std::runtime_error("reference set is empty: " + source);
  return set;
}

ReferenceSet ReferenceSet::load(const std::string& path) {
  return from_lines(split_lines(read_file(path)), path);
}

double bleu_n(const std::vector<std::string>& candidate,
              const std::vector<std::string>& reference, int n,
              const BleuOptions& options) {
  if (n < 1 || n > 4)
    throw std::runtime_error("bleu_n: order must be in 1..4, got " +
                             std::to_string(n));
  if (reference.empty()) throw std::runtime_error("bleu_n: empty reference");
  const size_t c = candidate.size();
  const size_t r = reference.size();
  if (c == 0) return 0.0;

  double log_sum = 0.0;
  int k_begin = options.cumulative ? 1 : n;
  for (int k = k_begin; k <= n; ++k) {
    auto cand_grams = ngrams(candidate, k);
    auto ref_grams = ngrams(reference, k);
    double matched = 0.0;
    for (const auto& [gram, count] : cand_grams) {
      auto it = ref_grams.find(gram);
      if (it != ref_grams.end()) matched += std::min(count, it->second);
    }
    double total = static_cast<double>(
        std::max<long>(1, static_cast<long>(c) - k + 1));
    if (matched == 0.0) {
      if (k == 1 || !options.smoothing) return 0.0;
      matched = options.smoothing_epsilon;
    }
    log_sum += std::log(matched / total);
  }
  int orders = n - k_begin + 1;
  double brevity =
      c > r ? 1.0
            : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return brevity * std::exp(log_sum / orders);
}

namespace {

enum class MatchKind { None, Exact, Stem };

// Candidate positions are labeled exact or stem according to per-type
// match quotas (stage 1 exact, stage 2 stems over the residual), then each
// labeled position picks a reference occurrence left to right, preferring
// to extend the current contiguous run and otherwise the occurrence that
// starts the longest forward run.
MeteorAlignment align(const std::vector<std::string>& cand_tokens,
                      const std::vector<std::string>& cand_stems,
                      const std::vector<std::string>& ref_tokens,
                      const std::vector<std::string>& ref_stems) {
  const size_t nc = cand_tokens.size();
  const size_t nr = ref_tokens.size();
  MeteorAlignment out;
  if (nc == 0 || nr == 0) return out;

  std::unordered_map<std::string, int> cand_count, ref_count;
  for (const auto& w : cand_tokens) ++cand_count[w];
  for (const auto& w : ref_tokens) ++ref_count[w];

  std::unordered_map<std::string, int> exact_quota;
  for (const auto& [w, cnt] : cand_count) {
    auto it = ref_count.find(w);
    if (it != ref_count.end()) exact_quota[w] = std::min(cnt, it->second);
  }

  // Label candidate positions, consuming exact quotas first.
  std::vector<MatchKind> label(nc, MatchKind::None);
  auto exact_left = exact_quota;
  for (size_t i = 0; i < nc; ++i) {
    auto it = exact_left.find(cand_tokens[i]);
    if (it != exact_left.end() && it->second > 0) {
      label[i] = MatchKind::Exact;
      --it->second;
    }
  }

  // Reference occurrences of a type not claimed by exact matching are free
  // for the stem stage.
  std::unordered_map<std::string, int> ref_free = ref_count;
  for (const auto& [w, q] : exact_quota) ref_free[w] -= q;

  std::unordered_map<std::string, int> cand_resid_stem, ref_free_stem;
  for (size_t i = 0; i < nc; ++i)
    if (label[i] == MatchKind::None) ++cand_resid_stem[cand_stems[i]];
  for (const auto& [w, free] : ref_free) {
    if (free > 0) ref_free_stem[porter_stem(w)] += free;
  }

  std::unordered_map<std::string, int> stem_quota;
  for (const auto& [s, cnt] : cand_resid_stem) {
    auto it = ref_free_stem.find(s);
    if (it != ref_free_stem.end()) stem_quota[s] = std::min(cnt, it->second);
  }
  auto stem_left = stem_quota;
  for (size_t i = 0; i < nc; ++i) {
    if (label[i] != MatchKind::None) continue;
    auto it = stem_left.find(cand_stems[i]);
    if (it != stem_left.end() && it->second > 0) {
      label[i] = MatchKind::Stem;
      --it->second;
    }
  }

  std::vector<bool> used(nr, false);
  auto legal = [&](size_t i, size_t j) {
    if (used[j]) return false;
    if (label[i] == MatchKind::Exact) return cand_tokens[i] == ref_tokens[j];
    return cand_stems[i] == ref_stems[j] && ref_free[ref_tokens[j]] > 0;
  };
  auto run_length = [&](size_t i, size_t j) {
    size_t l = 0;
    while (i + l < nc && j + l < nr && label[i + l] != MatchKind::None &&
           !used[j + l] &&
           (label[i + l] == MatchKind::Exact
                ? cand_tokens[i + l] == ref_tokens[j + l]
                : cand_stems[i + l] == ref_stems[j + l]))
      ++l;
    return l;
  };

  long prev_i = -2, prev_j = -2;
  for (size_t i = 0; i < nc; ++i) {
    if (label[i] == MatchKind::None) continue;
    size_t chosen = nr;
    if (static_cast<long>(i) == prev_i + 1 && prev_j + 1 >= 0 &&
        static_cast<size_t>(prev_j + 1) < nr && legal(i, prev_j + 1)) {
      chosen = static_cast<size_t>(prev_j + 1);
    } else {
      size_t best_run = 0;
      for (size_t j = 0; j < nr; ++j) {
        if (!legal(i, j)) continue;
        size_t run = run_length(i, j);
        if (chosen == nr || run > best_run) {
          chosen = j;
          best_run = run;
        }
      }
    }
    if (chosen == nr) continue;  // quota said match, occurrences disagree
    used[chosen] = true;
    if (label[i] == MatchKind::Stem) --ref_free[ref_tokens[chosen]];
    if (!(static_cast<long>(i) == prev_i + 1 &&
          static_cast<long>(chosen) == prev_j + 1))
      ++out.chunks;
    ++out.matches;
    prev_i = static_cast<long>(i);
    prev_j = static_cast<long>(chosen);
  }
  return out;
}

}  // namespace

MeteorAlignment meteor_alignment(const TokenizedDoc& candidate,
                                 const std::vector<std::string>& reference) {
  std::vector<std::string> ref_stems;
  ref_stems.reserve(reference.size());
  for (const auto& w : reference) ref_stems.push_back(porter_stem(w));

  MeteorAlignment a =
      align(candidate.tokens, candidate.stems, reference, ref_stems);
  if (a.matches == 0) {
    a.score = 0.0;
    return a;
  }
  double m = a.matches;
  double precision = m / static_cast<double>(candidate.tokens.size());
  double recall = m / static_cast<double>(reference.size());
  double f_mean = 10.0 * precision * recall / (precision + 9.0 * recall);
  double penalty = 0.5 * std::pow(a.chunks / m, 3.0);
  a.score = f_mean * (1.0 - penalty);
  return a;
}

double meteor(const TokenizedDoc& candidate,
              const std::vector<std::string>& reference) {
  if (reference.empty()) throw std::runtime_error("meteor: empty reference");
  return meteor_alignment(candidate, reference).score;
}

RefScores score_against_references(const TokenizedDoc& candidate,
                                   const ReferenceSet& refs,
                                   const BleuOptions& options) {
  if (refs.references.empty())
    throw std::runtime_error("score_against_references: empty reference set");
  RefScores sum;
  for (const auto& ref : refs.references) {
    sum.bleu1 += bleu_n(candidate.tokens, ref, 1, options);
    sum.bleu2 += bleu_n(candidate.tokens, ref, 2, options);
    sum.bleu3 += bleu_n(candidate.tokens, ref, 3, options);
    sum.bleu4 += bleu_n(candidate.tokens, ref, 4, options);
    sum.meteor += meteor(candidate, ref);
  }
  double n = static_cast<double>(refs.references.size());
  return {sum.bleu1 / n, sum.bleu2 / n, sum.bleu3 / n, sum.bleu4 / n,
          sum.meteor / n};
}

}  // namespace ctfeat
