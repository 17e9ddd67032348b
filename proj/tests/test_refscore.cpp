#include <doctest.h>

#include <cmath>

#include "ctfeat/io.hpp"
#include "ctfeat/refscore.hpp"
#include "ctfeat/rng.hpp"
#include "testutil.hpp"

using namespace ctfeat;

namespace {

std::vector<std::string> toks(const std::string& text) {
  return tokenize(text);
}

TokenizedDoc doc_of(const std::string& text) {
  return make_doc("cand", text);
}

}  // namespace

TEST_CASE("bleu identity scores exactly one for every order") {
  auto sent = toks("the boy is reaching for the cookie jar");
  for (int n = 1; n <= 4; ++n) CHECK(bleu_n(sent, sent, n) == 1.0);
}

TEST_CASE("bleu clipping: repeated candidate token") {
  double got = bleu_n({"the", "the", "the"}, {"the", "boy"}, 1);
  CHECK(got == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("bleu zero unigram overlap short-circuits to zero") {
  CHECK(bleu_n({"a", "b"}, {"c", "d"}, 1) == 0.0);
  CHECK(bleu_n({"a", "b"}, {"c", "d"}, 4) == 0.0);
}

TEST_CASE("bleu empty candidate scores zero") {
  CHECK(bleu_n({}, {"a", "b"}, 2) == 0.0);
}

TEST_CASE("bleu order outside 1..4 is an error") {
  CHECK_THROWS(bleu_n({"a"}, {"a"}, 0));
  CHECK_THROWS(bleu_n({"a"}, {"a"}, 5));
  CHECK_THROWS(bleu_n({"a"}, {}, 1));
}

TEST_CASE("bleu brevity penalty applies when candidate is short") {
  // perfect unigram overlap, c=2, r=4
  double got = bleu_n({"a", "b"}, {"a", "b", "c", "d"}, 1);
  CHECK(got == doctest::Approx(std::exp(1.0 - 2.0)).epsilon(1e-12));
}

TEST_CASE("bleu smoothing substitutes epsilon numerator at higher orders") {
  // shared unigrams but no shared bigram
  std::vector<std::string> cand = {"a", "c", "b"};
  std::vector<std::string> ref = {"a", "b", "c"};
  double p1 = 1.0;
  double p2 = 0.1 / 2.0;
  double expected = std::exp((std::log(p1) + std::log(p2)) / 2.0);
  CHECK(bleu_n(cand, ref, 2) == doctest::Approx(expected).epsilon(1e-12));

  BleuOptions off;
  off.smoothing = false;
  CHECK(bleu_n(cand, ref, 2, off) == 0.0);
}

TEST_CASE("bleu individual-precision mode uses only order n") {
  std::vector<std::string> cand = {"a", "b", "x"};
  std::vector<std::string> ref = {"a", "b", "y"};
  BleuOptions indiv;
  indiv.cumulative = false;
  // p2 = 1/2 (one shared bigram of two), BP = 1 applies at equal length? c == r -> exp(0) = 1
  CHECK(bleu_n(cand, ref, 2, indiv) == doctest::Approx(0.5).epsilon(1e-12));
  // cumulative mixes in p1 = 2/3
  double cumulative = std::exp((std::log(2.0 / 3.0) + std::log(0.5)) / 2.0);
  CHECK(bleu_n(cand, ref, 2) == doctest::Approx(cumulative).epsilon(1e-12));
}

TEST_CASE("bleu agrees with the frozen oracle fixture (smoothing off)") {
  std::string path = std::string(CTFEAT_TEST_DATA_DIR) + "/bleu_fixture.csv";
  auto lines = split_lines(read_file(path));
  REQUIRE(lines.size() >= 21);
  REQUIRE(lines[0] == "candidate|reference|n|expected");
  BleuOptions off;
  off.smoothing = false;
  int cases = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : lines[i]) {
      if (c == '|') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    REQUIRE(parts.size() == 4);
    auto cand = toks(parts[0]);
    auto ref = toks(parts[1]);
    int n = std::stoi(parts[2]);
    double expected = std::stod(parts[3]);
    CAPTURE(parts[0]);
    CAPTURE(parts[1]);
    CHECK(bleu_n(cand, ref, n, off) ==
          doctest::Approx(expected).epsilon(1e-9));
    ++cases;
  }
  CHECK(cases == 20);
}

TEST_CASE("meteor identity on a five token sentence") {
  auto cand = doc_of("the boy reaches the jar");
  double got = meteor(cand, cand.tokens);
  CHECK(got == doctest::Approx(0.996).epsilon(1e-12));
}

TEST_CASE("meteor stem-only match scores one half") {
  CHECK(meteor(doc_of("boys"), {"boy"}) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("meteor zero overlap scores zero") {
  CHECK(meteor(doc_of("alpha beta"), {"gamma", "delta"}) == 0.0);
  CHECK(meteor(doc_of(""), {"gamma"}) == 0.0);
}

TEST_CASE("meteor fragmented alignment pays the chunk penalty") {
  // all three words match but in two chunks
  auto a = meteor_alignment(doc_of("the boy runs"), toks("runs the boy"));
  CHECK(a.matches == 3);
  CHECK(a.chunks == 2);
  double expected = 1.0 - 0.5 * std::pow(2.0 / 3.0, 3.0);
  CHECK(a.score == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("meteor weighs recall nine to one") {
  // candidate [a], reference [a,b]: P=1, R=1/2, one chunk of one match
  double p = 1.0, r = 0.5;
  double f_mean = 10.0 * p * r / (p + 9.0 * r);
  double expected = f_mean * (1.0 - 0.5);
  CHECK(meteor(doc_of("a"), {"a", "b"}) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("meteor self-score identity holds for duplicated-token sentences") {
  RngStream rng(555);
  for (int trial = 0; trial < 30; ++trial) {
    size_t len = 1 + rng.uniform_int(12);
    std::vector<std::string> tokens;
    for (size_t i = 0; i < len; ++i)
      tokens.push_back(std::string(1, static_cast<char>('a' + rng.uniform_int(4))));
    auto a = meteor_alignment(make_doc_from_tokens("c", tokens), tokens);
    CHECK(a.matches == static_cast<int>(len));
    CHECK(a.chunks == 1);
    double expected = 1.0 - 0.5 / std::pow(static_cast<double>(len), 3.0);
    CHECK(a.score == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("exact matches take precedence over stem matches") {
  // "running" must pair exactly; "run" takes the stem match
  auto a = meteor_alignment(doc_of("run running"), toks("running runs"));
  CHECK(a.matches == 2);
}

TEST_CASE("reference set loader skips comments and blanks") {
  testutil::TempDir dir("refs");
  testutil::write_file(dir.path / "refs.txt",
                       "# header comment\n"
                       "the boy reaches for the jar\n"
                       "\n"
                       "the mother washes dishes\n");
  auto refs = ReferenceSet::load(dir.file("refs.txt"));
  CHECK(refs.references.size() == 2);
  CHECK(refs.references[0].size() == 6);

  testutil::write_file(dir.path / "empty.txt", "# only a comment\n");
  CHECK_THROWS_WITH_AS(ReferenceSet::load(dir.file("empty.txt")),
                       doctest::Contains("empty"), std::runtime_error);
}

TEST_CASE("score_against_references averages per reference") {
  auto refs2 = ReferenceSet::from_lines(
      {"the boy reaches for the jar", "the boy reaches for the jar"}, "t");
  auto refs1 =
      ReferenceSet::from_lines({"the boy reaches for the jar"}, "t");
  auto cand = doc_of("the boy reaches for the jar today");
  auto a = score_against_references(cand, refs2);
  auto b = score_against_references(cand, refs1);
  CHECK(a.bleu1 == doctest::Approx(b.bleu1).epsilon(1e-15));
  CHECK(a.bleu4 == doctest::Approx(b.bleu4).epsilon(1e-15));
  CHECK(a.meteor == doctest::Approx(b.meteor).epsilon(1e-15));
}

TEST_CASE("candidate equals one of two disjoint references") {
  auto refs = ReferenceSet::from_lines({"a b c d", "x y z w"}, "t");
  auto scores = score_against_references(doc_of("a b c d"), refs);
  CHECK(scores.bleu1 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reference order does not change the averages") {
  auto fwd = ReferenceSet::from_lines(
      {"the boy reaches", "mother washes dishes", "water overflows the sink"},
      "t");
  auto rev = ReferenceSet::from_lines(
      {"water overflows the sink", "mother washes dishes", "the boy reaches"},
      "t");
  auto cand = doc_of("the mother washes the dishes while water overflows");
  auto a = score_against_references(cand, fwd);
  auto b = score_against_references(cand, rev);
  CHECK(a.bleu1 == doctest::Approx(b.bleu1).epsilon(1e-15));
  CHECK(a.bleu2 == doctest::Approx(b.bleu2).epsilon(1e-15));
  CHECK(a.bleu3 == doctest::Approx(b.bleu3).epsilon(1e-15));
  CHECK(a.bleu4 == doctest::Approx(b.bleu4).epsilon(1e-15));
  CHECK(a.meteor == doctest::Approx(b.meteor).epsilon(1e-15));
}

TEST_CASE("all metric outputs stay within the unit interval") {
  RngStream rng(808);
  auto refs = ReferenceSet::from_lines(
      {"the boy is reaching for the cookie jar on the stool",
       "the mother is washing dishes at the sink",
       "water overflows onto the kitchen floor"},
      "t");
  for (int trial = 0; trial < 30; ++trial) {
    size_t len = rng.uniform_int(15);
    std::vector<std::string> tokens;
    const char* vocab[] = {"the", "boy",   "is",  "reaching", "water",
                           "a",   "stool", "jar", "zzz",      "uh"};
    for (size_t i = 0; i < len; ++i) tokens.push_back(vocab[rng.uniform_int(10)]);
    auto scores = score_against_references(make_doc_from_tokens("c", tokens),
                                           refs);
    for (double v : {scores.bleu1, scores.bleu2, scores.bleu3, scores.bleu4,
                     scores.meteor}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}
