#include "ctfeat/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <stdexcept>

#include "ctfeat/io.hpp"
#include "ctfeat/textproc.hpp"

namespace ctfeat {

namespace fs = std::filesystem;

std::string label_to_string(Label l) {
  switch (l) {
    case Label::HC: return "HC";
    case Label::AD: return "AD";
    default: return "";
  }
}

Label label_from_string(const std::string& s) {
  std::string t;
  for (char c : trim(s)) t.push_back(static_cast<char>(std::tolower(c)));
  if (t.empty()) return Label::Unknown;
  if (t == "hc") return Label::HC;
  if (t == "ad") return Label::AD;
  throw std::runtime_error("unknown label token '" + trim(s) + "'");
}

std::string Transcript::joined() const {
  std::string out;
  for (const auto& u : utterances) {
    if (!out.empty()) out.push_back(' ');
    out += u;
  }
  return out;
}

namespace {

// Strips spans delimited by byte 0x15 (CLAN media timestamps).
std::string strip_timestamps(const std::string& s) {
  std::string out;
  bool inside = false;
  for (char c : s) {
    if (c == '\x15') {
      inside = !inside;
      continue;
    }
    if (!inside) out.push_back(c);
  }
  return out;
}

// Removes [...] annotation spans (nesting tolerated) and drops the angle
// bracket and parenthesis characters while keeping their content.
std::string strip_annotation_codes(const std::string& s) {
  std::string out;
  int depth = 0;
  for (char c : s) {
    if (c == '[') {
      ++depth;
    } else if (c == ']') {
      if (depth > 0) --depth;
    } else if (depth == 0 && c != '<' && c != '>' && c != '(' && c != ')') {
      out.push_back(c);
    }
  }
  return out;
}

bool is_unintelligible(const std::string& w) {
  return w == "xxx" || w == "yyy" || w == "www";
}

struct CleanResult {
  std::string utterance;
  std::vector<size_t> filler_token_indices;  // global, via tokenize()
};

// Normalizes one participant tier line. `token_offset` is the running
// token count of previously kept utterances.
CleanResult clean_utterance(const std::string& raw, size_t token_offset,
                            const ChatOptions& options) {
  std::string s = strip_annotation_codes(strip_timestamps(raw));

  CleanResult res;
  std::vector<std::string> kept;
  size_t tokens_so_far = 0;
  std::string word;
  auto flush = [&](std::string w) {
    if (w.empty()) return;
    bool filler = false;
    if (w[0] == '&') {
      if (w.rfind("&-", 0) == 0) {
        w = w.substr(2);
        filler = true;
      } else if (w.rfind("&=", 0) == 0 || w.rfind("&+", 0) == 0) {
        return;  // event code / phonological fragment
      } else {
        // legacy bare form: &uh is a filler, anything else a fragment
        std::string bare = w.substr(1);
        auto toks = tokenize(bare);
        if (toks.size() == 1 &&
            std::find(options.filler_words.begin(), options.filler_words.end(),
                      toks[0]) != options.filler_words.end()) {
          w = bare;
          filler = true;
        } else {
          return;
        }
      }
    }
    // special-form marker, e.g. word@u
    if (auto at = w.find('@'); at != std::string::npos) w = w.substr(0, at);
    if (w.empty() || is_unintelligible(w)) return;
    auto toks = tokenize(w);
    if (filler && !toks.empty())
      res.filler_token_indices.push_back(token_offset + tokens_so_far);
    tokens_so_far += toks.size();
    kept.push_back(w);
  };
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      flush(word);
      word.clear();
    } else {
      word.push_back(c);
    }
  }
  flush(word);

  std::string joined;
  for (const auto& w : kept) {
    if (!joined.empty()) joined.push_back(' ');
    joined += w;
  }
  res.utterance = joined;
  return res;
}

// Joins CHAT continuation lines (leading tab) onto their tier line.
std::vector<std::string> logical_lines(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& line : split_lines(text)) {
    if (!line.empty() && (line[0] == '\t' || line[0] == ' ') && !out.empty()) {
      out.back() += " " + trim(line);
    } else {
      out.push_back(line);
    }
  }
  return out;
}

}  // namespace

Transcript parse_chat(const std::string& text, const std::string& subject_id,
                      const ChatOptions& options) {
  Transcript t;
  t.subject_id = subject_id;
  t.raw_source = RawSource::CHAT;

  const std::string prefix = options.participant_tier + ":";
  size_t token_count = 0;
  for (const auto& line : logical_lines(text)) {
    if (line.rfind(prefix, 0) != 0) continue;
    std::string content = trim(line.substr(prefix.size()));
    CleanResult cleaned = clean_utterance(content, token_count, options);
    if (cleaned.utterance.empty()) continue;
    token_count += tokenize(cleaned.utterance).size();
    t.utterances.push_back(std::move(cleaned.utterance));
    t.fillers_marked.insert(t.fillers_marked.end(),
                            cleaned.filler_token_indices.begin(),
                            cleaned.filler_token_indices.end());
  }
  if (t.utterances.empty())
    throw std::runtime_error("empty participant speech (subject " +
                             subject_id + ")");
  return t;
}

Transcript parse_plain(const std::string& text, const std::string& subject_id) {
  Transcript t;
  t.subject_id = subject_id;
  t.raw_source = RawSource::Plain;
  for (const auto& line : split_lines(text)) {
    std::string u = trim(line);
    if (!u.empty()) t.utterances.push_back(u);
  }
  if (t.utterances.empty())
    throw std::runtime_error("empty participant speech (subject " +
                             subject_id + ")");
  return t;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  static const std::vector<std::string> kHeader = {"subject_id", "label",
                                                   "transcript", "asr",
                                                   "trees"};
  auto lines = split_lines(read_file(path));
  size_t row = 0;
  while (row < lines.size() && trim(lines[row]).empty()) ++row;
  if (row == lines.size())
    throw std::runtime_error("manifest is empty: " + path);

  auto header = split_csv_line(lines[row]);
  for (auto& h : header) h = trim(h);
  if (header != kHeader) {
    std::string expected, found;
    for (const auto& h : kHeader) expected += (expected.empty() ? "" : ",") + h;
    for (const auto& h : header) found += (found.empty() ? "" : ",") + h;
    throw std::runtime_error("manifest header mismatch: expected '" +
                             expected + "', found '" + found + "'");
  }

  fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    fs::path fp(p);
    return (fp.is_absolute() ? fp : base / fp).string();
  };

  std::vector<ManifestEntry> entries;
  std::vector<std::string> seen;
  for (++row; row < lines.size(); ++row) {
    if (trim(lines[row]).empty()) continue;
    auto fields = split_csv_line(lines[row]);
    if (fields.size() != kHeader.size())
      throw std::runtime_error("manifest row " + std::to_string(row + 1) +
                               ": expected " + std::to_string(kHeader.size()) +
                               " fields, found " +
                               std::to_string(fields.size()));
    ManifestEntry e;
    e.subject_id = trim(fields[0]);
    if (e.subject_id.empty())
      throw std::runtime_error("manifest row " + std::to_string(row + 1) +
                               ": empty subject_id");
    if (std::find(seen.begin(), seen.end(), e.subject_id) != seen.end())
      throw std::runtime_error("duplicate subject_id " + e.subject_id);
    seen.push_back(e.subject_id);
    try {
      e.label = label_from_string(fields[1]);
    } catch (const std::exception& ex) {
      throw std::runtime_error(std::string(ex.what()) + " (subject " +
                               e.subject_id + ")");
    }
    std::string tp = trim(fields[2]);
    if (tp.empty())
      throw std::runtime_error("manifest row " + std::to_string(row + 1) +
                               ": empty transcript path");
    e.transcript_path = resolve(tp);
    if (!fs::exists(e.transcript_path))
      throw std::runtime_error("missing transcript file: " +
                               e.transcript_path + " (subject " +
                               e.subject_id + ")");
    if (std::string a = trim(fields[3]); !a.empty()) {
      e.asr_transcript_path = resolve(a);
      if (!fs::exists(*e.asr_transcript_path))
        throw std::runtime_error("missing asr file: " +
                                 *e.asr_transcript_path + " (subject " +
                                 e.subject_id + ")");
    }
    if (std::string tr = trim(fields[4]); !tr.empty()) {
      e.parse_trees_path = resolve(tr);
      if (!fs::exists(*e.parse_trees_path))
        throw std::runtime_error("missing trees file: " +
                                 *e.parse_trees_path + " (subject " +
                                 e.subject_id + ")");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

Transcript load_transcript(const std::string& path,
                           const std::string& subject_id,
                           const ChatOptions& options) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::string text = read_file(path);
  if (ext == ".cha") return parse_chat(text, subject_id, options);
  return parse_plain(text, subject_id);
}

}  // namespace ctfeat
