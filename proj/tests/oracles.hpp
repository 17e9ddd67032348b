// Independent oracles used by the unit and acceptance suites. These are
// deliberately naive transcriptions that share no code with the library
// implementations they check.

#ifndef CTFEAT_TESTS_ORACLES_HPP
#define CTFEAT_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace ctfeat::oracles {

// ---- TF-IDF: direct transcription of the weighting and similarity
// equations over token lists.

struct BruteTfIdf {
  std::vector<std::string> vocab;
  std::map<std::string, double> idf;
  std::map<std::string, double> v_hc;
  std::map<std::string, double> v_ad;
};

inline double brute_tf(const std::string& term,
                       const std::vector<std::string>& doc) {
  int count = 0;
  for (const auto& t : doc)
    if (t == term) ++count;
  return static_cast<double>(count) / static_cast<double>(doc.size());
}

// labels: true = HC, false = AD
inline BruteTfIdf brute_fit(const std::vector<std::vector<std::string>>& docs,
                            const std::vector<bool>& is_hc) {
  BruteTfIdf m;
  for (const auto& d : docs)
    for (const auto& t : d)
      if (std::find(m.vocab.begin(), m.vocab.end(), t) == m.vocab.end())
        m.vocab.push_back(t);
  double n_docs = static_cast<double>(docs.size());
  for (const auto& t : m.vocab) {
    int df = 0;
    for (const auto& d : docs)
      if (std::find(d.begin(), d.end(), t) != d.end()) ++df;
    m.idf[t] = std::log(n_docs / df);
  }
  int n_hc = 0, n_ad = 0;
  for (bool h : is_hc) (h ? n_hc : n_ad)++;
  for (const auto& t : m.vocab) {
    m.v_hc[t] = 0.0;
    m.v_ad[t] = 0.0;
  }
  for (size_t i = 0; i < docs.size(); ++i) {
    for (const auto& t : m.vocab) {
      bool present = std::find(docs[i].begin(), docs[i].end(), t) !=
                     docs[i].end();
      double w = present ? brute_tf(t, docs[i]) * m.idf[t] : 0.0;
      (is_hc[i] ? m.v_hc[t] : m.v_ad[t]) += w;
    }
  }
  for (const auto& t : m.vocab) {
    m.v_hc[t] /= n_hc;
    m.v_ad[t] /= n_ad;
  }
  return m;
}

inline std::pair<double, double> brute_similarities(
    const std::vector<std::string>& doc, const BruteTfIdf& m) {
  std::map<std::string, double> vec;
  for (const auto& t : m.vocab) {
    bool present = std::find(doc.begin(), doc.end(), t) != doc.end();
    vec[t] = present && !doc.empty() ? brute_tf(t, doc) * m.idf.at(t) : 0.0;
  }
  auto cosine = [&](const std::map<std::string, double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (const auto& t : m.vocab) {
      dot += vec.at(t) * b.at(t);
      na += vec.at(t) * vec.at(t);
      nb += b.at(t) * b.at(t);
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
  };
  return {cosine(m.v_hc), cosine(m.v_ad)};
}

// ---- WER: exhaustive alignment search (no DP table reuse).

inline int exhaustive_edit_distance(const std::vector<std::string>& ref,
                                    const std::vector<std::string>& hyp,
                                    size_t i, size_t j) {
  if (i == ref.size()) return static_cast<int>(hyp.size() - j);
  if (j == hyp.size()) return static_cast<int>(ref.size() - i);
  int sub = exhaustive_edit_distance(ref, hyp, i + 1, j + 1) +
            (ref[i] == hyp[j] ? 0 : 1);
  int del = exhaustive_edit_distance(ref, hyp, i + 1, j) + 1;
  int ins = exhaustive_edit_distance(ref, hyp, i, j + 1) + 1;
  return std::min({sub, del, ins});
}

inline double exhaustive_wer(const std::vector<std::string>& ref,
                             const std::vector<std::string>& hyp) {
  return exhaustive_edit_distance(ref, hyp, 0, 0) /
         static_cast<double>(ref.size());
}

// ---- two-sample pooled-variance t statistic (squared equals the
// two-group ANOVA F).

inline double pooled_t_squared(const std::vector<double>& a,
                               const std::vector<double>& b) {
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  double ma = 0, mb = 0;
  for (double v : a) ma += v;
  for (double v : b) mb += v;
  ma /= na;
  mb /= nb;
  double ssa = 0, ssb = 0;
  for (double v : a) ssa += (v - ma) * (v - ma);
  for (double v : b) ssb += (v - mb) * (v - mb);
  double sp2 = (ssa + ssb) / (na + nb - 2.0);
  double t = (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
  return t * t;
}

}  // namespace ctfeat::oracles

#endif
