// textproc.hpp -- tokenization, Porter stemming and n-gram extraction
// shared by every feature module.

#ifndef CTFEAT_TEXTPROC_HPP
#define CTFEAT_TEXTPROC_HPP

#include <map>
#include <string>
#include <vector>

namespace ctfeat {

/// A subject's transcript reduced to lowercase word tokens plus the
/// parallel Porter stems. |tokens| == |stems| always holds.
struct TokenizedDoc {
  std::string subject_id;
  std::vector<std::string> tokens;
  std::vector<std::string> stems;
};

/// Split UTF-8 text into lowercase word tokens. Apostrophes are kept when
/// they sit between word characters (don't stays one token); every other
/// punctuation character separates. Common Latin combining marks are
/// composed first so "café" and "café" tokenize identically.
std::vector<std::string> tokenize(const std::string& text);

/// Porter (1980) stem of a lowercase token. Tokens shorter than three
/// characters or containing non a-z characters are returned unchanged.
std::string porter_stem(const std::string& token);

/// All contiguous n-grams of `tokens` with multiplicity.
/// Throws std::runtime_error for n < 1.
std::map<std::vector<std::string>, int> ngrams(
    const std::vector<std::string>& tokens, int n);

/// Tokenize `text` and stem each token.
TokenizedDoc make_doc(const std::string& subject_id, const std::string& text);

/// Wrap pre-tokenized input, computing the stem column.
TokenizedDoc make_doc_from_tokens(const std::string& subject_id,
                                  std::vector<std::string> tokens);

}  // namespace ctfeat

#endif
