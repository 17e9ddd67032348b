#include "ctfeat/config.hpp"

#include <sstream>
#include <stdexcept>

#include "ctfeat/io.hpp"

namespace ctfeat {

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::vector<int> split_int_list(const std::string& value,
                                const std::string& key) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::runtime_error("config " + key + ": bad integer '" + item +
                               "'");
    }
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes" || value == "on")
    return true;
  if (value == "false" || value == "0" || value == "no" || value == "off")
    return false;
  throw std::runtime_error("config " + key + ": bad boolean '" + value + "'");
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string join_int_list(const std::vector<int>& items) {
  std::string out;
  for (int v : items) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

}  // namespace

void RunConfig::apply_entry(const std::string& key, const std::string& value) {
  if (key == "keyword_file") keyword_file = value;
  else if (key == "reference_file") reference_file = value;
  else if (key == "out_dir") out_dir = value;
  else if (key == "participant_tier") participant_tier = value;
  else if (key == "tfidf_use_stems") tfidf_use_stems = parse_bool(value, key);
  else if (key == "tfidf_stopword_file") tfidf_stopword_file = value;
  else if (key == "bleu_smoothing") bleu_smoothing = parse_bool(value, key);
  else if (key == "bleu_cumulative") bleu_cumulative = parse_bool(value, key);
  else if (key == "topic_mapping") topic_mapping = value;
  else if (key == "filler_lexicon") filler_lexicon = split_list(value);
  else if (key == "wer_strip_fillers")
    wer_strip_fillers = parse_bool(value, key);
  else if (key == "strict") strict = parse_bool(value, key);
  else if (key == "imputation") imputation = value;
  else if (key == "n_trees") n_trees = std::stoi(value);
  else if (key == "max_features") max_features = std::stoi(value);
  else if (key == "min_samples_leaf") min_samples_leaf = std::stoi(value);
  else if (key == "max_depth") max_depth = std::stoi(value);
  else if (key == "bootstrap") bootstrap = parse_bool(value, key);
  else if (key == "seed") seed = std::stoull(value);
  else if (key == "threads") threads = std::stoi(value);
  else if (key == "folds") folds = std::stoi(value);
  else if (key == "grid_n_trees") grid_n_trees = split_int_list(value, key);
  else if (key == "grid_max_features")
    grid_max_features = split_int_list(value, key);
  else if (key == "grid_max_depth") grid_max_depth = split_int_list(value, key);
  else if (key == "grid_min_samples_leaf")
    grid_min_samples_leaf = split_int_list(value, key);
  else if (key == "llm_endpoint") llm_endpoint = value;
  else if (key == "llm_model") llm_model = value;
  else if (key == "llm_temperature") llm_temperature = std::stod(value);
  else if (key == "llm_api_key_env") llm_api_key_env = value;
  else if (key == "llm_retries") llm_retries = std::stoi(value);
  else if (key == "llm_parallelism") llm_parallelism = std::stoi(value);
  else if (key == "llm_min_frequency") llm_min_frequency = std::stod(value);
  else throw std::runtime_error("unknown config key '" + key + "'");
}

void RunConfig::apply_file(const std::string& path) {
  size_t lineno = 0;
  for (const auto& raw : split_lines(read_file(path))) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
    try {
      apply_entry(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
}

std::string RunConfig::resolved() const {
  std::ostringstream out;
  out << "keyword_file = " << keyword_file << "\n";
  out << "reference_file = " << reference_file << "\n";
  out << "out_dir = " << out_dir << "\n";
  out << "participant_tier = " << participant_tier << "\n";
  out << "tfidf_use_stems = " << (tfidf_use_stems ? "true" : "false") << "\n";
  out << "tfidf_stopword_file = " << tfidf_stopword_file << "\n";
  out << "bleu_smoothing = " << (bleu_smoothing ? "true" : "false") << "\n";
  out << "bleu_cumulative = " << (bleu_cumulative ? "true" : "false") << "\n";
  out << "topic_mapping = " << topic_mapping << "\n";
  out << "filler_lexicon = " << join_list(filler_lexicon) << "\n";
  out << "wer_strip_fillers = " << (wer_strip_fillers ? "true" : "false")
      << "\n";
  out << "strict = " << (strict ? "true" : "false") << "\n";
  out << "imputation = " << imputation << "\n";
  out << "n_trees = " << n_trees << "\n";
  out << "max_features = " << max_features << "\n";
  out << "min_samples_leaf = " << min_samples_leaf << "\n";
  out << "max_depth = " << max_depth << "\n";
  out << "bootstrap = " << (bootstrap ? "true" : "false") << "\n";
  out << "seed = " << seed << "\n";
  out << "threads = " << threads << "\n";
  out << "folds = " << folds << "\n";
  out << "grid_n_trees = " << join_int_list(grid_n_trees) << "\n";
  out << "grid_max_features = " << join_int_list(grid_max_features) << "\n";
  out << "grid_max_depth = " << join_int_list(grid_max_depth) << "\n";
  out << "grid_min_samples_leaf = " << join_int_list(grid_min_samples_leaf)
      << "\n";
  out << "llm_endpoint = " << llm_endpoint << "\n";
  out << "llm_model = " << llm_model << "\n";
  out << "llm_temperature = " << llm_temperature << "\n";
  out << "llm_api_key_env = " << llm_api_key_env << "\n";
  out << "llm_retries = " << llm_retries << "\n";
  out << "llm_parallelism = " << llm_parallelism << "\n";
  out << "llm_min_frequency = " << llm_min_frequency << "\n";
  return out.str();
}

ForestConfig RunConfig::forest_config() const {
  ForestConfig cfg;
  cfg.n_trees = n_trees;
  cfg.max_features = max_features;
  cfg.min_samples_leaf = min_samples_leaf;
  cfg.max_depth = max_depth;
  cfg.bootstrap = bootstrap;
  cfg.seed = seed;
  return cfg;
}

ChatOptions RunConfig::chat_options() const {
  ChatOptions opt;
  opt.participant_tier = participant_tier;
  opt.filler_words = filler_lexicon;
  return opt;
}

AssembleOptions RunConfig::assemble_options() const {
  AssembleOptions opt;
  opt.strict = strict;
  opt.filler_lexicon = filler_lexicon;
  opt.wer_strip_fillers = wer_strip_fillers;
  opt.bleu.smoothing = bleu_smoothing;
  opt.bleu.cumulative = bleu_cumulative;
  return opt;
}

TfIdfOptions RunConfig::tfidf_options() const {
  TfIdfOptions opt;
  opt.use_stems = tfidf_use_stems;
  if (!tfidf_stopword_file.empty()) {
    for (const auto& line : split_lines(read_file(tfidf_stopword_file))) {
      std::string w = trim(line);
      if (!w.empty() && w[0] != '#') opt.stopwords.push_back(w);
    }
  }
  return opt;
}

TopicMapping RunConfig::topic_mapping_mode() const {
  if (topic_mapping == "union") return TopicMapping::Union;
  if (topic_mapping == "literal") return TopicMapping::Literal;
  throw std::runtime_error("config topic_mapping must be union or literal, got '" +
                           topic_mapping + "'");
}

}  // namespace ctfeat
