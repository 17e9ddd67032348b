#include <doctest.h>

#include <cmath>

#include "ctfeat/rng.hpp"
#include "ctfeat/tfidf.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace ctfeat;

namespace {

TokenizedDoc doc_of(const std::string& id,
                    const std::vector<std::string>& tokens) {
  return make_doc_from_tokens(id, tokens);
}

// Random corpus with <= 6 docs over <= 12 unique terms, both classes
// present, no empty docs.
struct RandomCorpus {
  std::vector<TokenizedDoc> docs;
  std::vector<Label> labels;
  std::vector<std::vector<std::string>> raw;
  std::vector<bool> is_hc;
};

RandomCorpus random_corpus(RngStream& rng) {
  RandomCorpus c;
  size_t n_terms = 2 + rng.uniform_int(11);  // 2..12
  size_t n_docs = 2 + rng.uniform_int(5);    // 2..6
  for (size_t d = 0; d < n_docs; ++d) {
    size_t len = 1 + rng.uniform_int(20);
    std::vector<std::string> tokens;
    for (size_t i = 0; i < len; ++i)
      tokens.push_back("t" + std::to_string(rng.uniform_int(n_terms)));
    bool hc = d == 0 ? true : (d == 1 ? false : rng.uniform_int(2) == 0);
    c.docs.push_back(doc_of("d" + std::to_string(d), tokens));
    c.labels.push_back(hc ? Label::HC : Label::AD);
    c.raw.push_back(tokens);
    c.is_hc.push_back(hc);
  }
  return c;
}

}  // namespace

TEST_CASE("term_frequency follows the relative-count definition") {
  auto d = doc_of("d", {"the", "boy", "the"});
  CHECK(term_frequency("the", d) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(term_frequency("girl", d) == 0.0);
  CHECK_THROWS_WITH_AS(term_frequency("x", doc_of("d", {})),
                       doctest::Contains("empty document"),
                       std::runtime_error);
}

TEST_CASE("fit on the two-document corpus reproduces hand values") {
  auto model = fit_tfidf({doc_of("d1", {"a", "b"}), doc_of("d2", {"a", "c"})},
                         {Label::HC, Label::AD});
  REQUIRE(model.vocab == std::vector<std::string>{"a", "b", "c"});
  CHECK(model.idf[0] == 0.0);
  CHECK(model.idf[1] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(model.idf[2] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(model.v_hc[0] == 0.0);
  CHECK(model.v_hc[1] ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(model.v_hc[2] == 0.0);
  CHECK(model.v_ad[1] == 0.0);
  CHECK(model.v_ad[2] ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(model.n_train_docs == 2);
  CHECK(model.n_hc_docs == 1);
  CHECK(model.n_ad_docs == 1);

  auto [sim_hc, sim_ad] = similarity_features(doc_of("q", {"a", "b"}), model);
  CHECK(sim_hc == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sim_ad == 0.0);
}

TEST_CASE("identical training documents give zero reference vectors") {
  auto model = fit_tfidf({doc_of("d1", {"a", "b"}), doc_of("d2", {"a", "b"})},
                         {Label::HC, Label::AD});
  for (double v : model.v_hc) CHECK(v == 0.0);
  for (double v : model.v_ad) CHECK(v == 0.0);
  for (double v : model.idf) CHECK(v == 0.0);
  // zero-norm convention
  auto [sim_hc, sim_ad] = similarity_features(doc_of("q", {"a"}), model);
  CHECK(sim_hc == 0.0);
  CHECK(sim_ad == 0.0);
}

TEST_CASE("top30 is the whole vocabulary when it is small") {
  auto model = fit_tfidf(
      {doc_of("d1", {"a", "b", "c"}), doc_of("d2", {"d", "e", "a"})},
      {Label::HC, Label::AD});
  CHECK(model.top30.size() == 5);
}

TEST_CASE("top30 sorts by value then lexicographically and caps at 30") {
  // 40 terms, doc1 (HC) holds t00..t19 so those get positive v_hc weight
  std::vector<std::string> hc_tokens, ad_tokens;
  for (int i = 0; i < 20; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "t%02d", i);
    hc_tokens.push_back(buf);
  }
  for (int i = 20; i < 40; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "t%02d", i);
    ad_tokens.push_back(buf);
  }
  auto model = fit_tfidf({doc_of("d1", hc_tokens), doc_of("d2", ad_tokens)},
                         {Label::HC, Label::AD});
  REQUIRE(model.top30.size() == 30);
  // first 20 entries are the HC terms (equal weight -> lexicographic)
  for (int i = 0; i < 20; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "t%02d", i);
    CHECK(model.top30[i] == buf);
  }
  // remainder are zero-weight terms in lexicographic order
  CHECK(model.top30[20] == "t20");
  CHECK(model.top30[29] == "t29");
}

TEST_CASE("fit rejects degenerate inputs") {
  CHECK_THROWS(fit_tfidf({doc_of("d1", {"a"})}, {Label::HC}));
  CHECK_THROWS_WITH_AS(
      fit_tfidf({doc_of("d1", {"a"}), doc_of("d2", {"b"})},
                {Label::HC, Label::HC}),
      doctest::Contains("both classes"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      fit_tfidf({doc_of("d1", {"a"}), doc_of("d2", {})},
                {Label::HC, Label::AD}),
      doctest::Contains("empty document"), std::runtime_error);
  CHECK_THROWS(fit_tfidf({doc_of("d1", {"a"}), doc_of("d2", {"b"})},
                         {Label::HC, Label::Unknown}));
}

TEST_CASE("similarity features ignore out-of-vocabulary tokens") {
  auto model = fit_tfidf({doc_of("d1", {"a", "b"}), doc_of("d2", {"a", "c"})},
                         {Label::HC, Label::AD});
  auto [sim_hc, sim_ad] = similarity_features(doc_of("q", {"zz", "qq"}), model);
  CHECK(sim_hc == 0.0);
  CHECK(sim_ad == 0.0);
  // OOV tokens dilute TF but cosine is scale invariant
  auto with_oov = similarity_features(doc_of("q", {"a", "b", "zz"}), model);
  auto without = similarity_features(doc_of("q", {"a", "b"}), model);
  CHECK(with_oov.first == doctest::Approx(without.first).epsilon(1e-12));
}

TEST_CASE("tfidf keyword hit rate uses stem equality") {
  TfIdfModel model;
  model.top30 = {"boy", "reach", "window"};
  for (int i = 0; i < 27; ++i)
    model.top30.push_back("unmatched" + std::to_string(i));
  CHECK(tfidf_keyword_hit_rate(doc_of("q", {"the", "boy", "reached"}), model) ==
        doctest::Approx(2.0 / 30.0).epsilon(1e-15));
  CHECK(tfidf_keyword_hit_rate(doc_of("q", {"zz"}), model) == 0.0);

  TfIdfModel small;
  small.top30 = {"boy", "jar"};
  CHECK(tfidf_keyword_hit_rate(doc_of("q", {"boy", "jar"}), small) == 1.0);
}

TEST_CASE("training document similarities stay in [0,1]") {
  RngStream rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    auto corpus = random_corpus(rng);
    auto model = fit_tfidf(corpus.docs, corpus.labels);
    for (const auto& d : corpus.docs) {
      auto [sim_hc, sim_ad] = similarity_features(d, model);
      CHECK(sim_hc >= 0.0);
      CHECK(sim_hc <= 1.0 + 1e-12);
      CHECK(sim_ad >= 0.0);
      CHECK(sim_ad <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("fit matches the brute-force transcription of the equations") {
  RngStream rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    auto corpus = random_corpus(rng);
    auto model = fit_tfidf(corpus.docs, corpus.labels);
    auto brute = oracles::brute_fit(corpus.raw, corpus.is_hc);
    REQUIRE(model.vocab == brute.vocab);
    for (size_t i = 0; i < model.vocab.size(); ++i) {
      const auto& t = model.vocab[i];
      CHECK(model.idf[i] == doctest::Approx(brute.idf[t]).epsilon(1e-12));
      CHECK(model.v_hc[i] == doctest::Approx(brute.v_hc[t]).epsilon(1e-12));
      CHECK(model.v_ad[i] == doctest::Approx(brute.v_ad[t]).epsilon(1e-12));
    }
    for (const auto& d : corpus.docs) {
      auto [sim_hc, sim_ad] = similarity_features(d, model);
      auto [b_hc, b_ad] = oracles::brute_similarities(d.tokens, brute);
      CHECK(sim_hc == doctest::Approx(b_hc).epsilon(1e-12));
      CHECK(sim_ad == doctest::Approx(b_ad).epsilon(1e-12));
    }
  }
}

TEST_CASE("idf is zero exactly for terms present in every document") {
  RngStream rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto corpus = random_corpus(rng);
    auto model = fit_tfidf(corpus.docs, corpus.labels);
    for (size_t i = 0; i < model.vocab.size(); ++i) {
      int df = 0;
      for (const auto& d : corpus.raw)
        if (std::find(d.begin(), d.end(), model.vocab[i]) != d.end()) ++df;
      if (df == static_cast<int>(corpus.raw.size()))
        CHECK(model.idf[i] == 0.0);
      else
        CHECK(model.idf[i] > 0.0);
    }
  }
}

TEST_CASE("cosine similarity is invariant under positive scaling of v_hc") {
  auto model = fit_tfidf({doc_of("d1", {"a", "b", "b"}),
                          doc_of("d2", {"a", "c"}),
                          doc_of("d3", {"b", "c", "d"})},
                         {Label::HC, Label::AD, Label::HC});
  auto q = doc_of("q", {"a", "b", "d"});
  auto before = similarity_features(q, model);

  TfIdfModel scaled = model;
  for (auto& v : scaled.v_hc) v *= 37.5;
  auto after = similarity_features(q, scaled);
  CHECK(after.first == doctest::Approx(before.first).epsilon(1e-12));

  // rank order of the top-30 selection is unchanged by scaling
  std::vector<size_t> order(model.vocab.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto rank = [&](const std::vector<double>& vhc) {
    auto o = order;
    std::sort(o.begin(), o.end(), [&](size_t x, size_t y) {
      if (vhc[x] != vhc[y]) return vhc[x] > vhc[y];
      return model.vocab[x] < model.vocab[y];
    });
    return o;
  };
  CHECK(rank(model.v_hc) == rank(scaled.v_hc));
}

TEST_CASE("model json round trip is exact") {
  auto model = fit_tfidf({doc_of("d1", {"a", "b", "b"}),
                          doc_of("d2", {"a", "c"})},
                         {Label::HC, Label::AD});
  auto loaded = TfIdfModel::from_json(model.to_json());
  CHECK(loaded.vocab == model.vocab);
  CHECK(loaded.top30 == model.top30);
  CHECK(loaded.n_train_docs == model.n_train_docs);
  CHECK(loaded.n_hc_docs == model.n_hc_docs);
  CHECK(loaded.n_ad_docs == model.n_ad_docs);
  for (size_t i = 0; i < model.vocab.size(); ++i) {
    CHECK(loaded.idf[i] == model.idf[i]);
    CHECK(loaded.v_hc[i] == model.v_hc[i]);
    CHECK(loaded.v_ad[i] == model.v_ad[i]);
  }

  testutil::TempDir dir("tfidf");
  model.save(dir.file("m.json"));
  auto from_disk = TfIdfModel::load(dir.file("m.json"));
  CHECK(from_disk.to_json() == model.to_json());
}

TEST_CASE("stem and stopword switches change the term definition") {
  TfIdfOptions stems;
  stems.use_stems = true;
  auto model = fit_tfidf({make_doc("d1", "the boys reaching"),
                          make_doc("d2", "the boy reaches")},
                         {Label::HC, Label::AD}, stems);
  // boys/boy and reaching/reaches collapse; vocabulary is {the, boi, reach}
  CHECK(model.vocab.size() == 3);

  TfIdfOptions stop;
  stop.stopwords = {"the"};
  auto model2 = fit_tfidf({make_doc("d1", "the boys reaching"),
                           make_doc("d2", "the boy reaches")},
                          {Label::HC, Label::AD}, stop);
  CHECK(std::find(model2.vocab.begin(), model2.vocab.end(), "the") ==
        model2.vocab.end());
}
