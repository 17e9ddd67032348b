#include "ctfeat/llmgen.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "ctfeat/io.hpp"
#include "ctfeat/textproc.hpp"

namespace ctfeat {

using nlohmann::json;

std::string generation_kind_name(GenerationKind kind) {
  return kind == GenerationKind::Keywords ? "keywords" : "descriptions";
}

const std::string& keyword_prompt() {
  static const std::string kPrompt =
      "Imagine you are an expert on cognitive assessment using Cookie Theft "
      "picture description task. You have the knowledge of the Cookie Theft "
      "picture and the key point to assess the AD. Now I will provide you "
      "with a sub-picture of the Cookie Theft picture, please give me some "
      "key content words related to that part. These words should be "
      "helpful for people to distinguish AD patients that the missing of "
      "the words may indicate potential cognitive impairment. Please only "
      "give the keywords list separated by comma without any further "
      "explanation.";
  return kPrompt;
}

const std::string& description_prompt() {
  static const std::string kPrompt =
      "This is the picture of the Cookie Theft description task which is "
      "widely used for cognitive assessment. Now imagine that you are an "
      "elderly people with healthy cognitive state. Please give me a verbal "
      "description of this picture to cover as much content as possible in "
      "the picture.";
  return kPrompt;
}

namespace {

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string base64_encode(const std::string& data) {
  static const char* kChars =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  size_t i = 0;
  while (i + 3 <= data.size()) {
    uint32_t v = (static_cast<unsigned char>(data[i]) << 16) |
                 (static_cast<unsigned char>(data[i + 1]) << 8) |
                 static_cast<unsigned char>(data[i + 2]);
    out.push_back(kChars[(v >> 18) & 63]);
    out.push_back(kChars[(v >> 12) & 63]);
    out.push_back(kChars[(v >> 6) & 63]);
    out.push_back(kChars[v & 63]);
    i += 3;
  }
  size_t rest = data.size() - i;
  if (rest == 1) {
    uint32_t v = static_cast<unsigned char>(data[i]) << 16;
    out.push_back(kChars[(v >> 18) & 63]);
    out.push_back(kChars[(v >> 12) & 63]);
    out += "==";
  } else if (rest == 2) {
    uint32_t v = (static_cast<unsigned char>(data[i]) << 16) |
                 (static_cast<unsigned char>(data[i + 1]) << 8);
    out.push_back(kChars[(v >> 18) & 63]);
    out.push_back(kChars[(v >> 12) & 63]);
    out.push_back(kChars[(v >> 6) & 63]);
    out += "=";
  }
  return out;
}

std::string image_mime(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == "jpg" || ext == "jpeg") return "image/jpeg";
  if (ext == "gif") return "image/gif";
  if (ext == "webp") return "image/webp";
  return "image/png";
}

struct ParsedUrl {
  std::string scheme_host;  // e.g. http://localhost:8080
  std::string path;         // e.g. /v1/chat/completions
};

ParsedUrl parse_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw std::runtime_error("endpoint url needs a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

// One chat-completions request; throws on transport or schema errors.
std::string request_once(const EndpointConfig& config,
                         const std::string& api_key, const json& body) {
  ParsedUrl url = parse_url(config.endpoint_url);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.scheme_host.rfind("https://", 0) == 0)
    throw std::runtime_error(
        "built without OpenSSL; https endpoints are unavailable");
#endif
  httplib::Client client(url.scheme_host);
  client.set_connection_timeout(config.timeout_seconds, 0);
  client.set_read_timeout(config.timeout_seconds, 0);
  httplib::Headers headers;
  if (!api_key.empty())
    headers.emplace("Authorization", "Bearer " + api_key);
  auto res = client.Post(url.path, headers, body.dump(), "application/json");
  if (!res)
    throw std::runtime_error("request failed: " +
                             httplib::to_string(res.error()));
  if (res->status != 200)
    throw std::runtime_error("http status " + std::to_string(res->status) +
                             ": " + res->body.substr(0, 200));
  json j = json::parse(res->body);
  if (!j.contains("choices") || j["choices"].empty())
    throw std::runtime_error("response has no choices");
  const auto& msg = j["choices"][0].at("message");
  return msg.at("content").get<std::string>();
}

}  // namespace

std::vector<std::string> GenerationRun::ok_responses() const {
  std::vector<std::string> out;
  for (const auto& r : responses)
    if (r.ok) out.push_back(r.content);
  return out;
}

std::string GenerationRun::to_jsonl() const {
  std::string out;
  json header = {{"type", "run"},
                 {"kind", generation_kind_name(kind)},
                 {"prompt_template_id", prompt_template_id},
                 {"image", image_path},
                 {"iterations", iterations},
                 {"endpoint", endpoint_url},
                 {"model", model_name},
                 {"started", started_at}};
  out += header.dump() + "\n";
  for (const auto& r : responses) {
    json line = {{"type", "response"},
                 {"iteration", r.iteration},
                 {"ok", r.ok},
                 {"content", r.content},
                 {"error", r.error}};
    out += line.dump() + "\n";
  }
  return out;
}

GenerationRun GenerationRun::load_log(const std::string& path) {
  GenerationRun run;
  bool have_header = false;
  for (const auto& line : split_lines(read_file(path))) {
    if (trim(line).empty()) continue;
    json j = json::parse(line);
    std::string type = j.value("type", "");
    if (type == "run") {
      run.kind = j.value("kind", "descriptions") == "keywords"
                     ? GenerationKind::Keywords
                     : GenerationKind::Descriptions;
      run.prompt_template_id = j.value("prompt_template_id", "");
      run.image_path = j.value("image", "");
      run.iterations = j.value("iterations", 0);
      run.endpoint_url = j.value("endpoint", "");
      run.model_name = j.value("model", "");
      run.started_at = j.value("started", "");
      have_header = true;
    } else if (type == "response") {
      GenerationResponse r;
      r.iteration = j.value("iteration", 0);
      r.ok = j.value("ok", false);
      r.content = j.value("content", "");
      r.error = j.value("error", "");
      run.responses.push_back(std::move(r));
    }
  }
  if (!have_header)
    throw std::runtime_error("run log has no header line: " + path);
  std::sort(run.responses.begin(), run.responses.end(),
            [](const GenerationResponse& a, const GenerationResponse& b) {
              return a.iteration < b.iteration;
            });
  return run;
}

GenerationRun generate(GenerationKind kind, const std::string& image_path,
                       int iterations, const EndpointConfig& config,
                       const std::string& log_path) {
  if (iterations < 1) throw std::runtime_error("iterations must be >= 1");
  if (kind == GenerationKind::Keywords && image_path.empty())
    throw std::runtime_error("keyword generation requires an image path");

  std::string api_key;
  if (!config.api_key_env.empty()) {
    const char* key = std::getenv(config.api_key_env.c_str());
    if (!key || std::string(key).empty())
      throw std::runtime_error("missing API key: environment variable " +
                               config.api_key_env + " is not set");
    api_key = key;
  }

  GenerationRun run;
  run.kind = kind;
  run.prompt_template_id = kind == GenerationKind::Keywords
                               ? "keyword_generation_v1"
                               : "description_generation_v1";
  run.image_path = image_path;
  run.iterations = iterations;
  run.started_at = iso_timestamp();
  run.endpoint_url = config.endpoint_url;
  run.model_name = config.model_name;
  run.responses.resize(iterations);

  const std::string& prompt = kind == GenerationKind::Keywords
                                  ? keyword_prompt()
                                  : description_prompt();
  json content;
  if (!image_path.empty()) {
    std::string data_url = "data:" + image_mime(image_path) + ";base64," +
                           base64_encode(read_file(image_path));
    content = json::array(
        {{{"type", "text"}, {"text", prompt}},
         {{"type", "image_url"}, {"image_url", {{"url", data_url}}}}});
  } else {
    content = prompt;
  }
  json body = {{"model", config.model_name},
               {"temperature", config.temperature},
               {"messages", json::array({{{"role", "user"},
                                          {"content", content}}})}};

  std::mutex log_mutex;
  if (!log_path.empty()) {
    json header = {{"type", "run"},
                   {"kind", generation_kind_name(kind)},
                   {"prompt_template_id", run.prompt_template_id},
                   {"image", image_path},
                   {"iterations", iterations},
                   {"endpoint", config.endpoint_url},
                   {"model", config.model_name},
                   {"started", run.started_at}};
    atomic_write_file(log_path, header.dump() + "\n");
  }
  auto log_response = [&](const GenerationResponse& r) {
    if (log_path.empty()) return;
    json line = {{"type", "response"},
                 {"iteration", r.iteration},
                 {"ok", r.ok},
                 {"content", r.content},
                 {"error", r.error}};
    std::lock_guard<std::mutex> lock(log_mutex);
    std::ofstream out(log_path, std::ios::app);
    out << line.dump() << "\n";
  };

  auto run_iteration = [&](int i) {
    GenerationResponse r;
    r.iteration = i;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
      try {
        r.content = request_once(config, api_key, body);
        r.ok = true;
        r.error.clear();
        break;
      } catch (const std::exception& e) {
        r.error = e.what();
        if (attempt < config.max_retries)
          std::this_thread::sleep_for(
              std::chrono::milliseconds(100 * (attempt + 1)));
      }
    }
    log_response(r);
    run.responses[i] = std::move(r);
  };

  int parallelism = std::max(1, config.parallelism);
  if (parallelism == 1) {
    for (int i = 0; i < iterations; ++i) run_iteration(i);
  } else {
    std::vector<std::thread> pool;
    std::mutex next_mutex;
    int next = 0;
    for (int w = 0; w < std::min(parallelism, iterations); ++w) {
      pool.emplace_back([&]() {
        while (true) {
          int i;
          {
            std::lock_guard<std::mutex> lock(next_mutex);
            if (next >= iterations) return;
            i = next++;
          }
          run_iteration(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  if (run.ok_responses().empty())
    throw std::runtime_error("no successful responses after " +
                             std::to_string(iterations) + " iterations (" +
                             run.responses[0].error + ")");
  return run;
}

std::vector<KeywordCandidate> aggregate_keywords(const GenerationRun& run,
                                                 double min_frequency) {
  if (run.kind != GenerationKind::Keywords)
    throw std::runtime_error("aggregate_keywords needs a keywords run");
  if (min_frequency <= 0.0 || min_frequency > 1.0)
    throw std::runtime_error("min_frequency must be in (0,1]");
  auto texts = run.ok_responses();
  if (texts.empty()) throw std::runtime_error("run has no responses");

  std::map<std::string, int> freq;             // stem -> responses containing it
  std::map<std::string, std::string> surface;  // stem -> first surface form
  for (const auto& text : texts) {
    std::unordered_set<std::string> seen;
    std::string piece;
    auto consume = [&](const std::string& chunk) {
      for (const auto& token : tokenize(chunk)) {
        std::string stem = porter_stem(token);
        if (!seen.insert(stem).second) continue;
        ++freq[stem];
        surface.try_emplace(stem, token);
      }
    };
    for (char c : text) {
      if (c == ',') {
        consume(piece);
        piece.clear();
      } else {
        piece.push_back(c);
      }
    }
    consume(piece);
  }

  double threshold = min_frequency * static_cast<double>(texts.size()) - 1e-9;
  std::vector<KeywordCandidate> out;
  for (const auto& [stem, count] : freq)
    if (count >= threshold) out.push_back({stem, surface[stem], count});
  std::sort(out.begin(), out.end(),
            [](const KeywordCandidate& a, const KeywordCandidate& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              return a.stem < b.stem;
            });
  return out;
}

std::string candidates_to_csv(const std::vector<KeywordCandidate>& candidates) {
  std::string out = "stem,surface,frequency\n";
  for (const auto& c : candidates)
    out += csv_escape(c.stem) + "," + csv_escape(c.surface) + "," +
           std::to_string(c.frequency) + "\n";
  return out;
}

std::vector<KeywordCandidate> candidates_from_csv(const std::string& path) {
  auto lines = split_lines(read_file(path));
  if (lines.empty() || trim(lines[0]) != "stem,surface,frequency")
    throw std::runtime_error(
        "candidate csv header mismatch: expected 'stem,surface,frequency'");
  std::vector<KeywordCandidate> out;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != 3)
      throw std::runtime_error("candidate csv row " + std::to_string(i + 1) +
                               ": expected 3 fields");
    out.push_back({trim(fields[0]), trim(fields[1]), std::stoi(fields[2])});
  }
  return out;
}

KeywordSet curate(const std::vector<KeywordCandidate>& candidates,
                  const std::string& decisions_path, int id, Topic topic) {
  std::unordered_map<std::string, bool> decisions;  // word -> accepted
  size_t lineno = 0;
  for (const auto& raw : split_lines(read_file(decisions_path))) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto space = line.find_first_of(" \t");
    if (space == std::string::npos)
      throw std::runtime_error(decisions_path + ":" + std::to_string(lineno) +
                               ": expected 'accept word' or 'reject word'");
    std::string verb = line.substr(0, space);
    std::string word = trim(line.substr(space));
    if (verb != "accept" && verb != "reject")
      throw std::runtime_error(decisions_path + ":" + std::to_string(lineno) +
                               ": unknown decision '" + verb + "'");
    decisions[word] = verb == "accept";
  }

  KeywordSet set;
  set.id = id;
  set.topic = topic;
  std::vector<std::string> undecided;
  std::unordered_set<std::string> used_stems;
  for (const auto& c : candidates) {
    auto it = decisions.find(c.stem);
    if (it == decisions.end()) it = decisions.find(c.surface);
    if (it == decisions.end()) {
      undecided.push_back(c.surface);
      continue;
    }
    if (it->second && used_stems.insert(c.stem).second)
      set.words.push_back(c.surface);
  }
  if (!undecided.empty()) {
    std::string list;
    for (const auto& w : undecided) list += (list.empty() ? "" : ", ") + w;
    throw std::runtime_error("undecided candidates: " + list);
  }
  if (set.words.empty()) throw std::runtime_error("empty keyword set");
  return set;
}

}  // namespace ctfeat
