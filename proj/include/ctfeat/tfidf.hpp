// tfidf.hpp -- TF-IDF vocabulary fit on the training split, HC/AD class
// reference vectors, the two cosine similarity features and the top-30
// keyword hit rate.

#ifndef CTFEAT_TFIDF_HPP
#define CTFEAT_TFIDF_HPP

#include <string>
#include <utility>
#include <vector>

#include "ctfeat/ingest.hpp"
#include "ctfeat/textproc.hpp"

namespace ctfeat {

struct TfIdfOptions {
  bool use_stems = false;        // terms are raw tokens unless set
  std::vector<std::string> stopwords;  // removed before counting when set
};

/// Fitted model: vocabulary in first-occurrence order, natural-log IDF,
/// per-class mean TF-IDF vectors and the 30 terms with the highest v_HC
/// weight (all terms when the vocabulary is smaller).
struct TfIdfModel {
  std::vector<std::string> vocab;
  std::vector<double> idf;
  std::vector<double> v_hc;
  std::vector<double> v_ad;
  std::vector<std::string> top30;
  int n_train_docs = 0;
  int n_hc_docs = 0;
  int n_ad_docs = 0;
  TfIdfOptions options;

  std::string to_json() const;
  static TfIdfModel from_json(const std::string& json_text);
  void save(const std::string& path) const;
  static TfIdfModel load(const std::string& path);
};

/// Relative frequency of `term` in `doc`. Throws on an empty document.
double term_frequency(const std::string& term, const TokenizedDoc& doc,
                      const TfIdfOptions& options = {});

/// Fit vocabulary, IDF and class reference vectors on labeled training
/// documents. Requires at least one document per class and no empty docs.
TfIdfModel fit_tfidf(const std::vector<TokenizedDoc>& train_docs,
                     const std::vector<Label>& labels,
                     const TfIdfOptions& options = {});

/// Cosine similarity of the document's TF-IDF vector against v_HC and
/// v_AD. Out-of-vocabulary tokens contribute no coordinates; a zero-norm
/// side makes the similarity 0.
std::pair<double, double> similarity_features(const TokenizedDoc& doc,
                                              const TfIdfModel& model);

/// Fraction of the model's top-30 terms whose stem appears among the
/// document's stems.
double tfidf_keyword_hit_rate(const TokenizedDoc& doc, const TfIdfModel& model);

}  // namespace ctfeat

#endif
