// refscore.hpp -- sentence BLEU-1..4 and METEOR against the golden
// reference descriptions, averaged over the reference set.

#ifndef CTFEAT_REFSCORE_HPP
#define CTFEAT_REFSCORE_HPP

#include <string>
#include <vector>

#include "ctfeat/textproc.hpp"

namespace ctfeat {

/// Tokenized golden-standard descriptions. Intended size is 15 but any
/// nonempty set is accepted; the size travels with the provenance string.
struct ReferenceSet {
  std::vector<std::vector<std::string>> references;
  std::string source;

  /// Load from a UTF-8 file, one description per line, '#' comments and
  /// blank lines ignored.
  static ReferenceSet load(const std::string& path);
  static ReferenceSet from_lines(const std::vector<std::string>& lines,
                                 const std::string& source);
};

struct BleuOptions {
  // Zero match counts at order >= 2 are replaced by this numerator; a zero
  // unigram match still scores 0. Turning smoothing off makes any zero
  // precision collapse the score to 0.
  bool smoothing = true;
  double smoothing_epsilon = 0.1;
  // Cumulative mode takes the geometric mean of orders 1..n; individual
  // mode uses the order-n precision alone.
  bool cumulative = true;
};

/// Sentence BLEU-n of a candidate against one reference: modified
/// (clipped) k-gram precisions with uniform weights and a brevity penalty
/// of exp(1 - r/c) when the candidate is not longer than the reference.
double bleu_n(const std::vector<std::string>& candidate,
              const std::vector<std::string>& reference, int n,
              const BleuOptions& options = {});

struct MeteorAlignment {
  int matches = 0;
  int chunks = 0;
  double score = 0.0;
};

/// METEOR with exact and Porter-stem matching stages: F_mean weighted 9:1
/// toward recall, times a fragmentation penalty 0.5*(chunks/matches)^3.
MeteorAlignment meteor_alignment(const TokenizedDoc& candidate,
                                 const std::vector<std::string>& reference);
double meteor(const TokenizedDoc& candidate,
              const std::vector<std::string>& reference);

struct RefScores {
  double bleu1 = 0, bleu2 = 0, bleu3 = 0, bleu4 = 0;
  double meteor = 0;
};

/// Each metric scored per reference, then arithmetic-averaged over the set.
RefScores score_against_references(const TokenizedDoc& candidate,
                                   const ReferenceSet& refs,
                                   const BleuOptions& options = {});

}  // namespace ctfeat

#endif
