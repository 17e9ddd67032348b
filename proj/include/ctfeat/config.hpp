// config.hpp -- run configuration: simple "key = value" text files with
// CLI-flag overrides; every command writes a resolved snapshot beside its
// outputs.

#ifndef CTFEAT_CONFIG_HPP
#define CTFEAT_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ctfeat/forest.hpp"
#include "ctfeat/taskfeat.hpp"

namespace ctfeat {

struct RunConfig {
  // data files
  std::string keyword_file;
  std::string reference_file;
  std::string out_dir = ".";

  // ingest
  std::string participant_tier = "*PAR";

  // tfidf term definition
  bool tfidf_use_stems = false;
  std::string tfidf_stopword_file;

  // reference scoring
  bool bleu_smoothing = true;
  bool bleu_cumulative = true;

  // task features
  std::string topic_mapping = "union";  // union | literal
  std::vector<std::string> filler_lexicon = default_filler_lexicon();
  bool wer_strip_fillers = false;
  bool strict = false;
  std::string imputation = "mean";  // mean | zero

  // forest
  int n_trees = 300;
  int max_features = 4;
  int min_samples_leaf = 1;
  int max_depth = 0;
  bool bootstrap = true;
  uint64_t seed = 0;
  int threads = 1;
  int folds = 5;

  // grid-search axes (cartesian product)
  std::vector<int> grid_n_trees = {100, 300};
  std::vector<int> grid_max_features = {2, 4};
  std::vector<int> grid_max_depth = {0, 8};
  std::vector<int> grid_min_samples_leaf = {1, 2};

  // llm generation
  std::string llm_endpoint = "https://api.openai.com/v1/chat/completions";
  std::string llm_model = "gpt-4o";
  double llm_temperature = 1.0;
  std::string llm_api_key_env = "OPENAI_API_KEY";
  int llm_retries = 3;
  int llm_parallelism = 1;
  double llm_min_frequency = 0.1;

  /// Apply "key = value" lines from a config file over the defaults.
  void apply_file(const std::string& path);
  void apply_entry(const std::string& key, const std::string& value);

  /// Full settings snapshot in config-file syntax.
  std::string resolved() const;

  ForestConfig forest_config() const;
  ChatOptions chat_options() const;
  AssembleOptions assemble_options() const;
  TfIdfOptions tfidf_options() const;  // loads the stopword file if set
  TopicMapping topic_mapping_mode() const;
};

}  // namespace ctfeat

#endif
