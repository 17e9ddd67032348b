// Seeded synthetic screening corpus: "HC" transcripts with broad keyword
// coverage and reference-like phrasing, "AD" transcripts with sparse
// keywords and heavy fillers. The construction margin is what the
// end-to-end acceptance threshold relies on.

#ifndef CTFEAT_TESTS_SYNTH_HPP
#define CTFEAT_TESTS_SYNTH_HPP

#include <string>
#include <vector>

#include "ctfeat/rng.hpp"

namespace ctfeat::synth {

inline const std::vector<std::string>& hc_sentences() {
  static const std::vector<std::string> kPool = {
      "the boy is standing on a stool reaching for the cookie jar",
      "the stool is tipping over and he is about to fall",
      "the girl stands on the floor and holds out her hand for a cookie",
      "the girl looks worried but she smiles at her brother",
      "the mother is washing dishes at the sink",
      "mom is busy drying a plate and does not turn around",
      "the water is overflowing from the sink onto the floor",
      "there is soap and a stack of dishes on the counter",
      "the cupboard door is open above the counter",
      "outside the window you can see trees and the garden",
      "the curtains are pulled back to let in the light",
      "he grabs a cookie from the jar in the cupboard",
      "the boy reaches up high to take the cookie jar down",
      "she is looking at the boy taking cookies",
      "the kitchen floor is getting wet from the overflowing water",
  };
  return kPool;
}

inline const std::vector<std::string>& ad_sentences() {
  static const std::vector<std::string> kPool = {
      "there is a person doing something over there",
      "i do not really know what this is",
      "well it is some kind of room i think",
      "somebody is doing something with the things",
      "it looks like they are busy with it",
      "i cannot quite tell what that is supposed to be",
      "there is some stuff on that side",
      "that one is doing i do not know what",
      "maybe they are getting something from somewhere",
      "it is hard to say what is happening here",
  };
  return kPool;
}

inline const std::vector<std::string>& ad_keyword_sentences() {
  static const std::vector<std::string> kPool = {
      "there is a boy there",
      "someone is at the sink i think",
      "there is a window in the back",
  };
  return kPool;
}

// One transcript as plain text, one sentence per line.
inline std::string make_transcript(bool is_hc, RngStream& rng) {
  std::string out;
  auto append_sentence = [&](const std::string& sentence,
                             double filler_prob) {
    std::string line;
    for (char c : sentence) {
      if (c == ' ' && rng.uniform_real() < filler_prob)
        line += rng.uniform_real() < 0.5 ? " uh" : " um";
      line.push_back(c);
    }
    out += line + "\n";
  };
  if (is_hc) {
    const auto& pool = hc_sentences();
    std::vector<int> order(pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    rng.shuffle(order);
    size_t count = 11 + rng.uniform_int(3);  // 11..13 distinct sentences
    for (size_t k = 0; k < count; ++k)
      append_sentence(pool[order[k]], 0.02);
  } else {
    const auto& pool = ad_sentences();
    size_t count = 3 + rng.uniform_int(3);  // 3..5 sentences
    for (size_t k = 0; k < count; ++k)
      append_sentence(pool[rng.uniform_int(pool.size())], 0.30);
    if (rng.uniform_real() < 0.15) {
      const auto& kw = ad_keyword_sentences();
      append_sentence(kw[rng.uniform_int(kw.size())], 0.30);
    }
  }
  return out;
}

struct SynthCorpus {
  std::vector<std::string> subject_ids;
  std::vector<std::string> texts;
  std::vector<bool> is_hc;
};

inline SynthCorpus make_corpus(int per_class, uint64_t seed) {
  SynthCorpus c;
  RngStream rng = RngStream::derive(seed, 424242);
  for (int i = 0; i < 2 * per_class; ++i) {
    bool hc = i % 2 == 0;
    c.subject_ids.push_back((hc ? "HC" : "AD") + std::to_string(i / 2));
    c.texts.push_back(make_transcript(hc, rng));
    c.is_hc.push_back(hc);
  }
  return c;
}

}  // namespace ctfeat::synth

#endif
