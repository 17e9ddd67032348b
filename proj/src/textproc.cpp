#include "ctfeat/textproc.hpp"

#include <cstdint>
#include <stdexcept>

namespace ctfeat {

namespace {

// Decodes one UTF-8 code point starting at text[i]; advances i past it.
// Malformed bytes decode as U+FFFD and advance by one byte.
uint32_t decode_utf8(const std::string& text, size_t& i) {
  const auto byte = [&](size_t k) { return static_cast<unsigned char>(text[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    i += 1;
    return b0;
  }
  int len = 0;
  uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    i += 1;
    return 0xFFFD;
  }
  if (i + len > text.size()) {
    i += 1;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char bk = byte(i + k);
    if ((bk & 0xC0) != 0x80) {
      i += 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

uint32_t to_lower_cp(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  // Latin-1 uppercase block, skipping the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

// Combining-mark composition for the Latin letters that actually occur in
// English-language transcripts. Unknown (base, mark) pairs drop the mark.
uint32_t compose(uint32_t base, uint32_t mark) {
  struct Entry {
    char base;
    uint32_t mark;
    uint32_t composed;
  };
  static const Entry kTable[] = {
      {'a', 0x300, 0xE0}, {'a', 0x301, 0xE1}, {'a', 0x302, 0xE2},
      {'a', 0x303, 0xE3}, {'a', 0x308, 0xE4}, {'e', 0x300, 0xE8},
      {'e', 0x301, 0xE9}, {'e', 0x302, 0xEA}, {'e', 0x308, 0xEB},
      {'i', 0x300, 0xEC}, {'i', 0x301, 0xED}, {'i', 0x302, 0xEE},
      {'i', 0x308, 0xEF}, {'n', 0x303, 0xF1}, {'o', 0x300, 0xF2},
      {'o', 0x301, 0xF3}, {'o', 0x302, 0xF4}, {'o', 0x303, 0xF5},
      {'o', 0x308, 0xF6}, {'u', 0x300, 0xF9}, {'u', 0x301, 0xFA},
      {'u', 0x302, 0xFB}, {'u', 0x308, 0xFC}, {'y', 0x301, 0xFD},
      {'y', 0x308, 0xFF}, {'c', 0x327, 0xE7},
  };
  for (const auto& e : kTable)
    if (static_cast<uint32_t>(e.base) == base && e.mark == mark)
      return e.composed;
  return base;
}

bool is_combining_mark(uint32_t cp) { return cp >= 0x300 && cp <= 0x36F; }

bool is_word_cp(uint32_t cp) {
  if (cp < 0x80)
    return (cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9');
  if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
  if (cp == 0xFFFD) return false;
  return true;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  // First pass: lowercase, map curly apostrophes, compose combining marks.
  std::vector<uint32_t> cps;
  cps.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    uint32_t cp = to_lower_cp(decode_utf8(text, i));
    if (cp == 0x2018 || cp == 0x2019 || cp == 0x02BC) cp = '\'';
    if (is_combining_mark(cp) && !cps.empty()) {
      cps.back() = compose(cps.back(), cp);
      continue;
    }
    cps.push_back(cp);
  }

  std::vector<std::string> tokens;
  std::string cur;
  for (size_t k = 0; k < cps.size(); ++k) {
    uint32_t cp = cps[k];
    if (is_word_cp(cp)) {
      append_utf8(cur, cp);
    } else if (cp == '\'' && !cur.empty() && k + 1 < cps.size() &&
               is_word_cp(cps[k + 1])) {
      cur.push_back('\'');
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::map<std::vector<std::string>, int> ngrams(
    const std::vector<std::string>& tokens, int n) {
  if (n < 1) throw std::runtime_error("ngrams: n must be >= 1");
  std::map<std::vector<std::string>, int> out;
  if (tokens.size() < static_cast<size_t>(n)) return out;
  for (size_t i = 0; i + n <= tokens.size(); ++i)
    ++out[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  return out;
}

TokenizedDoc make_doc(const std::string& subject_id, const std::string& text) {
  return make_doc_from_tokens(subject_id, tokenize(text));
}

TokenizedDoc make_doc_from_tokens(const std::string& subject_id,
                                  std::vector<std::string> tokens) {
  TokenizedDoc doc;
  doc.subject_id = subject_id;
  doc.stems.reserve(tokens.size());
  for (const auto& t : tokens) doc.stems.push_back(porter_stem(t));
  doc.tokens = std::move(tokens);
  return doc;
}

}  // namespace ctfeat
