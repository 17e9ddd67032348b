// llmgen.hpp -- optional client for the keyword / golden-description
// generation protocol against any chat-completions-compatible endpoint.
// The rest of the pipeline runs from bundled files without it.

#ifndef CTFEAT_LLMGEN_HPP
#define CTFEAT_LLMGEN_HPP

#include <string>
#include <vector>

#include "ctfeat/taskfeat.hpp"

namespace ctfeat {

struct EndpointConfig {
  std::string endpoint_url;
  std::string model_name;
  double temperature = 1.0;
  // Name of the environment variable holding the API key; empty sends no
  // Authorization header (local endpoints).
  std::string api_key_env = "OPENAI_API_KEY";
  int max_retries = 3;
  int parallelism = 1;
  int timeout_seconds = 120;
};

enum class GenerationKind { Keywords, Descriptions };

std::string generation_kind_name(GenerationKind kind);

struct GenerationResponse {
  int iteration = 0;
  bool ok = false;
  std::string content;  // raw response text, persisted verbatim
  std::string error;
};

struct GenerationRun {
  GenerationKind kind = GenerationKind::Descriptions;
  std::string prompt_template_id;
  std::string image_path;  // empty when no image was sent
  int iterations = 0;
  std::vector<GenerationResponse> responses;
  std::string started_at;
  std::string endpoint_url;
  std::string model_name;

  std::vector<std::string> ok_responses() const;
  std::string to_jsonl() const;
  static GenerationRun load_log(const std::string& path);
};

/// The instruction sent per iteration for each generation kind.
const std::string& keyword_prompt();
const std::string& description_prompt();

/// Issue `iterations` independent requests. Keyword generation requires an
/// image path (the sub-picture); each raw response is appended to
/// `log_path` as it arrives. Per-iteration failures are recorded and the
/// run proceeds; zero successes is an error, as is a missing API key
/// (checked before any request).
GenerationRun generate(GenerationKind kind, const std::string& image_path,
                       int iterations, const EndpointConfig& config,
                       const std::string& log_path = "");

struct KeywordCandidate {
  std::string stem;
  std::string surface;  // first surface form seen for the stem
  int frequency = 0;    // number of responses mentioning the stem
};

/// Split responses on commas, tokenize, count response-level frequency per
/// stem, and keep stems reaching min_frequency * |ok responses|. Sorted by
/// descending frequency, ties lexicographic. Pure function of the run.
std::vector<KeywordCandidate> aggregate_keywords(const GenerationRun& run,
                                                 double min_frequency);

std::string candidates_to_csv(const std::vector<KeywordCandidate>& candidates);
std::vector<KeywordCandidate> candidates_from_csv(const std::string& path);

/// Apply an accept/reject decisions file ("accept word" / "reject word",
/// one per line) to the candidate list. Every candidate needs a decision;
/// an empty accepted set is an error. The result carries the given id and
/// topic.
KeywordSet curate(const std::vector<KeywordCandidate>& candidates,
                  const std::string& decisions_path, int id, Topic topic);

}  // namespace ctfeat

#endif
