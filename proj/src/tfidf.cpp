#include "ctfeat/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ctfeat/io.hpp"

namespace ctfeat {

namespace {

using nlohmann::json;

// The term sequence of a document under the model's term definition.
std::vector<std::string> doc_terms(const TokenizedDoc& doc,
                                   const TfIdfOptions& options) {
  const auto& src = options.use_stems ? doc.stems : doc.tokens;
  if (options.stopwords.empty()) return src;
  std::unordered_set<std::string> stop(options.stopwords.begin(),
                                       options.stopwords.end());
  std::vector<std::string> out;
  for (size_t i = 0; i < src.size(); ++i) {
    // stopwords are matched on the raw token either way
    if (!stop.count(doc.tokens[i])) out.push_back(src[i]);
  }
  return out;
}

std::unordered_map<std::string, int> term_counts(
    const std::vector<std::string>& terms) {
  std::unordered_map<std::string, int> counts;
  for (const auto& t : terms) ++counts[t];
  return counts;
}

}  // namespace

double term_frequency(const std::string& term, const TokenizedDoc& doc,
                      const TfIdfOptions& options) {
  auto terms = doc_terms(doc, options);
  if (terms.empty())
    throw std::runtime_error("empty document has no TF (subject " +
                             doc.subject_id + ")");
  int count = 0;
  for (const auto& t : terms)
    if (t == term) ++count;
  return static_cast<double>(count) / static_cast<double>(terms.size());
}

TfIdfModel fit_tfidf(const std::vector<TokenizedDoc>& train_docs,
                     const std::vector<Label>& labels,
                     const TfIdfOptions& options) {
  if (train_docs.size() != labels.size())
    throw std::runtime_error("fit_tfidf: document/label count mismatch");
  if (train_docs.size() < 2)
    throw std::runtime_error("fit_tfidf: need at least two training documents");

  TfIdfModel model;
  model.options = options;
  model.n_train_docs = static_cast<int>(train_docs.size());

  std::vector<std::vector<std::string>> docs;
  docs.reserve(train_docs.size());
  for (const auto& d : train_docs) {
    docs.push_back(doc_terms(d, options));
    if (docs.back().empty())
      throw std::runtime_error("fit_tfidf: empty document (subject " +
                               d.subject_id + ")");
  }
  for (Label l : labels) {
    if (l == Label::HC) ++model.n_hc_docs;
    else if (l == Label::AD) ++model.n_ad_docs;
    else throw std::runtime_error("fit_tfidf: unlabeled training document");
  }
  if (model.n_hc_docs == 0 || model.n_ad_docs == 0)
    throw std::runtime_error("fit_tfidf: training set must contain both classes");

  // Vocabulary in first-occurrence order; df over documents.
  std::unordered_map<std::string, int> index;
  std::vector<int> df;
  for (const auto& terms : docs) {
    std::unordered_set<std::string> seen;
    for (const auto& t : terms) {
      auto [it, inserted] = index.try_emplace(t, model.vocab.size());
      if (inserted) {
        model.vocab.push_back(t);
        df.push_back(0);
      }
      if (seen.insert(t).second) ++df[it->second];
    }
  }

  const size_t dim = model.vocab.size();
  model.idf.resize(dim);
  for (size_t i = 0; i < dim; ++i)
    model.idf[i] = std::log(static_cast<double>(model.n_train_docs) / df[i]);

  model.v_hc.assign(dim, 0.0);
  model.v_ad.assign(dim, 0.0);
  for (size_t d = 0; d < docs.size(); ++d) {
    auto counts = term_counts(docs[d]);
    double total = static_cast<double>(docs[d].size());
    auto& acc = labels[d] == Label::HC ? model.v_hc : model.v_ad;
    for (const auto& [term, count] : counts) {
      size_t i = index.at(term);
      acc[i] += (count / total) * model.idf[i];
    }
  }
  for (auto& v : model.v_hc) v /= model.n_hc_docs;
  for (auto& v : model.v_ad) v /= model.n_ad_docs;

  std::vector<size_t> order(dim);
  for (size_t i = 0; i < dim; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (model.v_hc[a] != model.v_hc[b]) return model.v_hc[a] > model.v_hc[b];
    return model.vocab[a] < model.vocab[b];
  });
  size_t k = std::min<size_t>(30, dim);
  for (size_t i = 0; i < k; ++i) model.top30.push_back(model.vocab[order[i]]);

  return model;
}

std::pair<double, double> similarity_features(const TokenizedDoc& doc,
                                              const TfIdfModel& model) {
  auto terms = doc_terms(doc, model.options);
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < model.vocab.size(); ++i) index[model.vocab[i]] = i;

  std::vector<double> vec(model.vocab.size(), 0.0);
  if (!terms.empty()) {
    auto counts = term_counts(terms);
    double total = static_cast<double>(terms.size());
    for (const auto& [term, count] : counts) {
      auto it = index.find(term);
      if (it != index.end())
        vec[it->second] = (count / total) * model.idf[it->second];
    }
  }

  auto cosine = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      dot += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
  };
  return {cosine(vec, model.v_hc), cosine(vec, model.v_ad)};
}

double tfidf_keyword_hit_rate(const TokenizedDoc& doc, const TfIdfModel& model) {
  if (model.top30.empty()) return 0.0;
  std::unordered_set<std::string> doc_stems(doc.stems.begin(), doc.stems.end());
  int hits = 0;
  for (const auto& k : model.top30)
    if (doc_stems.count(porter_stem(k))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(model.top30.size());
}

std::string TfIdfModel::to_json() const {
  json j;
  j["vocab"] = vocab;
  j["idf"] = idf;
  j["v_hc"] = v_hc;
  j["v_ad"] = v_ad;
  j["top30"] = top30;
  j["n_train"] = n_train_docs;
  j["n_hc"] = n_hc_docs;
  j["n_ad"] = n_ad_docs;
  j["options"] = {{"use_stems", options.use_stems},
                  {"stopwords", options.stopwords}};
  return j.dump(2) + "\n";
}

TfIdfModel TfIdfModel::from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  TfIdfModel m;
  m.vocab = j.at("vocab").get<std::vector<std::string>>();
  m.idf = j.at("idf").get<std::vector<double>>();
  m.v_hc = j.at("v_hc").get<std::vector<double>>();
  m.v_ad = j.at("v_ad").get<std::vector<double>>();
  m.top30 = j.at("top30").get<std::vector<std::string>>();
  m.n_train_docs = j.at("n_train").get<int>();
  m.n_hc_docs = j.at("n_hc").get<int>();
  m.n_ad_docs = j.at("n_ad").get<int>();
  if (j.contains("options")) {
    m.options.use_stems = j["options"].value("use_stems", false);
    m.options.stopwords =
        j["options"].value("stopwords", std::vector<std::string>{});
  }
  if (m.idf.size() != m.vocab.size() || m.v_hc.size() != m.vocab.size() ||
      m.v_ad.size() != m.vocab.size())
    throw std::runtime_error("tfidf model json: inconsistent vector sizes");
  return m;
}

void TfIdfModel::save(const std::string& path) const {
  atomic_write_file(path, to_json());
}

TfIdfModel TfIdfModel::load(const std::string& path) {
  try {
    return from_json(read_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error("invalid tfidf model file " + path + ": " +
                             e.what());
  }
}

}  // namespace ctfeat
