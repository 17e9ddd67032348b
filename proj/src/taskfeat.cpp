#include "ctfeat/taskfeat.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ctfeat/io.hpp"
#include "ctfeat/parsetree.hpp"

namespace ctfeat {

using nlohmann::json;

std::string topic_to_string(Topic t) {
  switch (t) {
    case Topic::T1_children: return "T1";
    case Topic::T2_mother_sink: return "T2";
    default: return "T3";
  }
}

Topic topic_from_string(const std::string& s) {
  if (s == "T1") return Topic::T1_children;
  if (s == "T2") return Topic::T2_mother_sink;
  if (s == "T3") return Topic::T3_window;
  throw std::runtime_error("unknown topic '" + s + "' (expected T1/T2/T3)");
}

std::vector<KeywordSet> load_keyword_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error("invalid keyword file " + path + ": " + e.what());
  }
  if (!j.contains("sets") || !j["sets"].is_array())
    throw std::runtime_error("keyword file " + path + ": missing 'sets' array");
  std::vector<KeywordSet> sets;
  for (const auto& js : j["sets"]) {
    KeywordSet set;
    set.id = js.at("id").get<int>();
    set.topic = topic_from_string(js.at("topic").get<std::string>());
    std::unordered_set<std::string> stems;
    for (const auto& w : js.at("words")) {
      std::string word = trim(w.get<std::string>());
      std::transform(word.begin(), word.end(), word.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (word.empty()) continue;
      if (!stems.insert(porter_stem(word)).second)
        throw std::runtime_error("keyword set " + std::to_string(set.id) +
                                 ": duplicate stem for '" + word + "'");
      set.words.push_back(word);
    }
    if (set.words.empty())
      throw std::runtime_error("keyword set " + std::to_string(set.id) +
                               " is empty");
    sets.push_back(std::move(set));
  }
  if (sets.empty())
    throw std::runtime_error("keyword file " + path + ": no sets");
  return sets;
}

void save_keyword_file(const std::string& path,
                       const std::vector<KeywordSet>& sets) {
  json j;
  j["sets"] = json::array();
  for (const auto& s : sets)
    j["sets"].push_back({{"id", s.id},
                         {"topic", topic_to_string(s.topic)},
                         {"words", s.words}});
  atomic_write_file(path, j.dump(2) + "\n");
}

std::array<KeywordSet, 3> resolve_topics(const std::vector<KeywordSet>& sets,
                                         TopicMapping mapping) {
  std::array<KeywordSet, 3> topics{};
  topics[0].topic = Topic::T1_children;
  topics[1].topic = Topic::T2_mother_sink;
  topics[2].topic = Topic::T3_window;

  if (mapping == TopicMapping::Literal) {
    for (int t = 0; t < 3; ++t) {
      auto it = std::find_if(sets.begin(), sets.end(),
                             [&](const KeywordSet& s) { return s.id == t + 1; });
      if (it == sets.end())
        throw std::runtime_error("literal topic mapping needs keyword set id " +
                                 std::to_string(t + 1));
      topics[t].id = it->id;
      topics[t].words = it->words;
    }
    return topics;
  }

  std::array<std::unordered_set<std::string>, 3> seen_stems;
  for (const auto& s : sets) {
    int t = static_cast<int>(s.topic);
    for (const auto& w : s.words)
      if (seen_stems[t].insert(porter_stem(w)).second)
        topics[t].words.push_back(w);
  }
  for (int t = 0; t < 3; ++t) {
    topics[t].id = t + 1;
    if (topics[t].words.empty())
      throw std::runtime_error("no keywords resolve to topic " +
                               topic_to_string(topics[t].topic));
  }
  return topics;
}

double topic_hit_rate(const TokenizedDoc& doc, const KeywordSet& set) {
  if (set.words.empty())
    throw std::runtime_error("topic_hit_rate: empty keyword set");
  std::unordered_set<std::string> doc_stems(doc.stems.begin(),
                                            doc.stems.end());
  int hits = 0;
  for (const auto& w : set.words)
    if (doc_stems.count(porter_stem(w))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(set.words.size());
}

std::pair<int, double> filled_pause_features(
    const TokenizedDoc& doc, const std::vector<size_t>& chat_filler_indices,
    const std::vector<std::string>& lexicon) {
  std::unordered_set<std::string> lex(lexicon.begin(), lexicon.end());
  std::unordered_set<size_t> indices;
  for (size_t i = 0; i < doc.tokens.size(); ++i)
    if (lex.count(doc.tokens[i])) indices.insert(i);
  for (size_t i : chat_filler_indices)
    if (i < doc.tokens.size()) indices.insert(i);
  int count = static_cast<int>(indices.size());
  double ratio = doc.tokens.empty()
                     ? 0.0
                     : count / static_cast<double>(doc.tokens.size());
  return {count, ratio};
}

double word_error_rate(const std::vector<std::string>& reference_tokens,
                       const std::vector<std::string>& hypothesis_tokens) {
  const size_t nr = reference_tokens.size();
  const size_t nh = hypothesis_tokens.size();
  if (nr == 0) throw std::runtime_error("WER undefined for empty reference");

  std::vector<int> prev(nh + 1), cur(nh + 1);
  for (size_t j = 0; j <= nh; ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= nr; ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= nh; ++j) {
      int sub = prev[j - 1] +
                (reference_tokens[i - 1] == hypothesis_tokens[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[nh] / static_cast<double>(nr);
}

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> kNames = {
      "topic1_hit_rate", "topic2_hit_rate",  "topic3_hit_rate",
      "bleu1",           "bleu2",            "bleu3",
      "bleu4",           "meteor",           "tfidf_sim_hc",
      "tfidf_sim_ad",    "tfidf_kw_hit_rate", "avg_depth",
      "filled_pauses",   "filled_pauses_ratio", "wer"};
  return kNames;
}

FeatureVector assemble_features(
    const TokenizedDoc& doc, const Transcript& transcript,
    const TfIdfModel& tfidf_model, const ReferenceSet& refs,
    const std::array<KeywordSet, 3>& topics,
    const std::optional<std::vector<std::string>>& trees,
    const std::optional<TokenizedDoc>& asr_doc,
    const AssembleOptions& options) {
  FeatureVector row;
  row.subject_id = doc.subject_id;

  row[kTopic1HitRate] = topic_hit_rate(doc, topics[0]);
  row[kTopic2HitRate] = topic_hit_rate(doc, topics[1]);
  row[kTopic3HitRate] = topic_hit_rate(doc, topics[2]);

  RefScores scores = score_against_references(doc, refs, options.bleu);
  row[kBleu1] = scores.bleu1;
  row[kBleu2] = scores.bleu2;
  row[kBleu3] = scores.bleu3;
  row[kBleu4] = scores.bleu4;
  row[kMeteor] = scores.meteor;

  auto [sim_hc, sim_ad] = similarity_features(doc, tfidf_model);
  row[kTfidfSimHC] = sim_hc;
  row[kTfidfSimAD] = sim_ad;
  row[kTfidfKwHitRate] = tfidf_keyword_hit_rate(doc, tfidf_model);

  if (trees.has_value()) {
    row[kAvgDepth] = avg_parse_depth(*trees);
  } else if (options.strict) {
    throw std::runtime_error("missing parse trees for subject " +
                             doc.subject_id + " (strict mode)");
  } else {
    row[kAvgDepth] = std::numeric_limits<double>::quiet_NaN();
    row.avg_depth_imputed = true;
  }

  auto [fp_count, fp_ratio] =
      filled_pause_features(doc, transcript.fillers_marked,
                            options.filler_lexicon);
  row[kFilledPauses] = fp_count;
  row[kFilledPausesRatio] = fp_ratio;

  if (asr_doc.has_value()) {
    std::vector<std::string> ref = doc.tokens;
    std::vector<std::string> hyp = asr_doc->tokens;
    if (options.wer_strip_fillers) {
      std::unordered_set<std::string> lex(options.filler_lexicon.begin(),
                                          options.filler_lexicon.end());
      std::unordered_set<size_t> chat(transcript.fillers_marked.begin(),
                                      transcript.fillers_marked.end());
      std::vector<std::string> kept;
      for (size_t i = 0; i < ref.size(); ++i)
        if (!lex.count(ref[i]) && !chat.count(i)) kept.push_back(ref[i]);
      ref = std::move(kept);
      std::erase_if(hyp, [&](const std::string& w) { return lex.count(w) > 0; });
    }
    if (ref.empty()) {
      if (options.strict)
        throw std::runtime_error("WER undefined for empty reference (subject " +
                                 doc.subject_id + ")");
      row[kWer] = std::numeric_limits<double>::quiet_NaN();
      row.wer_imputed = true;
    } else {
      row[kWer] = word_error_rate(ref, hyp);
    }
  } else if (options.strict) {
    throw std::runtime_error("missing ASR transcript for subject " +
                             doc.subject_id + " (strict mode)");
  } else {
    row[kWer] = std::numeric_limits<double>::quiet_NaN();
    row.wer_imputed = true;
  }

  row.label = Label::Unknown;
  return row;
}

std::string feature_csv_header() {
  std::string h = "subject_id,label";
  for (const auto& name : feature_names()) h += "," + name;
  return h;
}

std::string feature_csv_row(const FeatureVector& row) {
  std::string out = csv_escape(row.subject_id) + "," +
                    label_to_string(row.label);
  char buf[64];
  for (double v : row.values) {
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    out += ",";
    out += buf;
  }
  return out;
}

std::vector<FeatureVector> read_feature_csv(const std::string& path) {
  auto lines = split_lines(read_file(path));
  size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size())
    throw std::runtime_error("feature csv is empty: " + path);
  if (trim(lines[i]) != feature_csv_header())
    throw std::runtime_error("feature csv header mismatch: expected '" +
                             feature_csv_header() + "', found '" +
                             trim(lines[i]) + "'");
  std::vector<FeatureVector> rows;
  for (++i; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != 2 + kFeatureCount)
      throw std::runtime_error("feature csv row " + std::to_string(i + 1) +
                               ": expected " +
                               std::to_string(2 + kFeatureCount) +
                               " fields, found " +
                               std::to_string(fields.size()));
    FeatureVector row;
    row.subject_id = trim(fields[0]);
    row.label = label_from_string(fields[1]);
    for (int k = 0; k < kFeatureCount; ++k) {
      try {
        row.values[k] = std::stod(fields[2 + k]);
      } catch (const std::exception&) {
        throw std::runtime_error("feature csv row " + std::to_string(i + 1) +
                                 ": bad number '" + fields[2 + k] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ctfeat
