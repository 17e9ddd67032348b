// porter.cpp -- the 1980 suffix-stripping algorithm, steps 1a through 5b.
// Within each step the longest matching suffix is selected first and its
// condition tested afterwards; a failed condition ends the step.

#include <string>
#include <vector>

#include "ctfeat/textproc.hpp"

namespace ctfeat {

namespace {

bool all_lower_alpha(const std::string& w) {
  for (char c : w)
    if (c < 'a' || c > 'z') return false;
  return true;
}

// True when w[i] is a consonant: any letter outside aeiou, except that a
// 'y' preceded by a consonant counts as a vowel.
bool is_cons(const std::string& w, size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
  if (c == 'y') return i == 0 ? true : !is_cons(w, i - 1);
  return true;
}

// The measure m of a stem: the number of vowel->consonant transitions in
// its [C](VC)^m[V] form.
int measure(const std::string& w) {
  int m = 0;
  bool prev_vowel = false;
  for (size_t i = 0; i < w.size(); ++i) {
    bool cons = is_cons(w, i);
    if (prev_vowel && cons) ++m;
    prev_vowel = !cons;
  }
  return m;
}

bool contains_vowel(const std::string& w) {
  for (size_t i = 0; i < w.size(); ++i)
    if (!is_cons(w, i)) return true;
  return false;
}

bool ends_double_cons(const std::string& w) {
  size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_cons(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant where the final consonant is
// not w, x or y.
bool ends_cvc(const std::string& w) {
  size_t n = w.size();
  if (n < 3) return false;
  if (!is_cons(w, n - 3) || is_cons(w, n - 2) || !is_cons(w, n - 1))
    return false;
  char c = w[n - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, const char* suf) {
  size_t len = std::string(suf).size();
  return w.size() >= len && w.compare(w.size() - len, len, suf) == 0;
}

struct Rule {
  const char* suffix;
  const char* replacement;
  int min_measure;  // condition m(stem) > min_measure; -1 means none
};

// Applies the longest matching rule of `rules`. Returns true when a suffix
// matched (whether or not the measure condition passed).
bool apply_rules(std::string& w, const std::vector<Rule>& rules) {
  const Rule* best = nullptr;
  for (const auto& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    if (!best || std::string(r.suffix).size() > std::string(best->suffix).size())
      best = &r;
  }
  if (!best) return false;
  std::string stem = w.substr(0, w.size() - std::string(best->suffix).size());
  if (best->min_measure < 0 || measure(stem) > best->min_measure)
    w = stem + best->replacement;
  return true;
}

void step1a(std::string& w) {
  if (ends_with(w, "sses")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.resize(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // unchanged
  } else if (ends_with(w, "s")) {
    w.pop_back();
  }
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (measure(stem) > 0) w = stem + "ee";
    return;
  }
  bool stripped = false;
  if (ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (contains_vowel(stem)) {
      w = stem;
      stripped = true;
    }
  } else if (ends_with(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    if (contains_vowel(stem)) {
      w = stem;
      stripped = true;
    }
  }
  if (!stripped) return;
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_cons(w)) {
    char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w) == 1 && ends_cvc(w)) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y")) {
    std::string stem = w.substr(0, w.size() - 1);
    if (contains_vowel(stem)) w = stem + "i";
  }
}

void step2(std::string& w) {
  static const std::vector<Rule> rules = {
      {"ational", "ate", 0}, {"tional", "tion", 0}, {"enci", "ence", 0},
      {"anci", "ance", 0},   {"izer", "ize", 0},    {"abli", "able", 0},
      {"alli", "al", 0},     {"entli", "ent", 0},   {"eli", "e", 0},
      {"ousli", "ous", 0},   {"ization", "ize", 0}, {"ation", "ate", 0},
      {"ator", "ate", 0},    {"alism", "al", 0},    {"iveness", "ive", 0},
      {"fulness", "ful", 0}, {"ousness", "ous", 0}, {"aliti", "al", 0},
      {"iviti", "ive", 0},   {"biliti", "ble", 0},
  };
  apply_rules(w, rules);
}

void step3(std::string& w) {
  static const std::vector<Rule> rules = {
      {"icate", "ic", 0}, {"ative", "", 0}, {"alize", "al", 0},
      {"iciti", "ic", 0}, {"ical", "ic", 0}, {"ful", "", 0},
      {"ness", "", 0},
  };
  apply_rules(w, rules);
}

void step4(std::string& w) {
  static const std::vector<Rule> rules = {
      {"al", "", 1},    {"ance", "", 1}, {"ence", "", 1}, {"er", "", 1},
      {"ic", "", 1},    {"able", "", 1}, {"ible", "", 1}, {"ant", "", 1},
      {"ement", "", 1}, {"ment", "", 1}, {"ent", "", 1},  {"ou", "", 1},
      {"ism", "", 1},   {"ate", "", 1},  {"iti", "", 1},  {"ous", "", 1},
      {"ive", "", 1},   {"ize", "", 1},
  };
  // "ion" deletes only when the remaining stem ends in s or t; it competes
  // on length with the plain rules above.
  const Rule* best = nullptr;
  for (const auto& r : rules) {
    if (!ends_with(w, r.suffix)) continue;
    if (!best || std::string(r.suffix).size() > std::string(best->suffix).size())
      best = &r;
  }
  bool ion = ends_with(w, "ion");
  if (ion && (!best || std::string(best->suffix).size() < 3)) {
    std::string stem = w.substr(0, w.size() - 3);
    if (!stem.empty() && (stem.back() == 's' || stem.back() == 't') &&
        measure(stem) > 1)
      w = stem;
    return;
  }
  if (best) {
    std::string stem = w.substr(0, w.size() - std::string(best->suffix).size());
    if (measure(stem) > 1) w = stem;
  }
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::string stem = w.substr(0, w.size() - 1);
  int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w = stem;
}

void step5b(std::string& w) {
  if (w.size() >= 2 && w.back() == 'l' && ends_double_cons(w) &&
      measure(w) > 1)
    w.pop_back();
}

}  // namespace

std::string porter_stem(const std::string& token) {
  if (token.size() < 3 || !all_lower_alpha(token)) return token;
  std::string w = token;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace ctfeat
