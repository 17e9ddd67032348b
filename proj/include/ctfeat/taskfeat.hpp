// taskfeat.hpp -- topic keyword hit rates, filled-pause features, parse
// depth, WER, and assembly of the full fifteen-dimensional feature row.

#ifndef CTFEAT_TASKFEAT_HPP
#define CTFEAT_TASKFEAT_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctfeat/ingest.hpp"
#include "ctfeat/refscore.hpp"
#include "ctfeat/textproc.hpp"
#include "ctfeat/tfidf.hpp"

namespace ctfeat {

enum class Topic { T1_children, T2_mother_sink, T3_window };

std::string topic_to_string(Topic t);
Topic topic_from_string(const std::string& s);  // accepts "T1".."T3"

struct KeywordSet {
  int id = 0;
  std::vector<std::string> words;  // lowercase, unique after stemming
  Topic topic = Topic::T1_children;
};

/// Keyword file: {"sets":[{"id":0,"topic":"T1","words":[...]}, ...]}.
std::vector<KeywordSet> load_keyword_file(const std::string& path);
void save_keyword_file(const std::string& path,
                       const std::vector<KeywordSet>& sets);

enum class TopicMapping { Union, Literal };

/// Resolve the three per-topic keyword sets. Union mode merges every set
/// tagged with a topic (deduplicating by stem); literal mode takes sets
/// with ids 1, 2 and 3 as topics 1, 2 and 3.
std::array<KeywordSet, 3> resolve_topics(const std::vector<KeywordSet>& sets,
                                         TopicMapping mapping);

/// Fraction of the set's keywords whose stem occurs among the document
/// stems.
double topic_hit_rate(const TokenizedDoc& doc, const KeywordSet& set);

inline const std::vector<std::string>& default_filler_lexicon() {
  static const std::vector<std::string> kFillers = {
      "uh", "um", "er", "eh", "ah", "hm", "hmm", "mm", "mhm", "uhm"};
  return kFillers;
}

/// Filled-pause count and ratio. A token counts when it is in the filler
/// lexicon or its index carries a CHAT filler code; the two sources are
/// merged as index sets so nothing double-counts.
std::pair<int, double> filled_pause_features(
    const TokenizedDoc& doc, const std::vector<size_t>& chat_filler_indices,
    const std::vector<std::string>& lexicon = default_filler_lexicon());

/// Edit-distance word error rate (S+D+I)/|reference|; may exceed 1.
/// Throws for an empty reference.
double word_error_rate(const std::vector<std::string>& reference_tokens,
                       const std::vector<std::string>& hypothesis_tokens);

constexpr int kFeatureCount = 15;

/// Canonical feature schema, in output-column order.
const std::array<std::string, kFeatureCount>& feature_names();

struct FeatureVector {
  std::string subject_id;
  Label label = Label::Unknown;
  std::array<double, kFeatureCount> values{};
  // Which of avg_depth / wer were imputed rather than measured.
  bool avg_depth_imputed = false;
  bool wer_imputed = false;

  double& operator[](size_t i) { return values[i]; }
  double operator[](size_t i) const { return values[i]; }
};

// Feature indices into FeatureVector::values.
enum FeatureIndex : int {
  kTopic1HitRate = 0,
  kTopic2HitRate,
  kTopic3HitRate,
  kBleu1,
  kBleu2,
  kBleu3,
  kBleu4,
  kMeteor,
  kTfidfSimHC,
  kTfidfSimAD,
  kTfidfKwHitRate,
  kAvgDepth,
  kFilledPauses,
  kFilledPausesRatio,
  kWer,
};

struct AssembleOptions {
  bool strict = false;  // refuse missing trees / ASR instead of marking
  std::vector<std::string> filler_lexicon = default_filler_lexicon();
  bool wer_strip_fillers = false;
  BleuOptions bleu;
};

/// Populate one feature row. Optional inputs left empty are marked for
/// imputation (or rejected under strict mode); the caller fills imputed
/// columns with dataset means afterwards.
FeatureVector assemble_features(
    const TokenizedDoc& doc, const Transcript& transcript,
    const TfIdfModel& tfidf_model, const ReferenceSet& refs,
    const std::array<KeywordSet, 3>& topics,
    const std::optional<std::vector<std::string>>& trees,
    const std::optional<TokenizedDoc>& asr_doc,
    const AssembleOptions& options = {});

/// features.csv header: subject_id,label,then the schema columns.
std::string feature_csv_header();
std::string feature_csv_row(const FeatureVector& row);
std::vector<FeatureVector> read_feature_csv(const std::string& path);

}  // namespace ctfeat

#endif
