#include "ctfeat/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ctfeat/io.hpp"
#include "ctfeat/parsetree.hpp"

namespace ctfeat {

std::vector<TokenizedDoc> load_docs(const std::vector<ManifestEntry>& entries,
                                    const RunConfig& config) {
  std::vector<TokenizedDoc> docs;
  docs.reserve(entries.size());
  ChatOptions chat = config.chat_options();
  for (const auto& e : entries) {
    Transcript t = load_transcript(e.transcript_path, e.subject_id, chat);
    docs.push_back(make_doc(e.subject_id, t.joined()));
  }
  return docs;
}

TfIdfModel fit_from_manifest(const std::vector<ManifestEntry>& entries,
                             const RunConfig& config) {
  std::vector<Label> labels;
  for (const auto& e : entries) {
    if (e.label == Label::Unknown)
      throw std::runtime_error("manifest row for subject " + e.subject_id +
                               " has no label; fit needs labeled data");
    labels.push_back(e.label);
  }
  return fit_tfidf(load_docs(entries, config), labels, config.tfidf_options());
}

FeaturizeResult featurize_manifest(const std::vector<ManifestEntry>& entries,
                                   const TfIdfModel& model,
                                   const ReferenceSet& refs,
                                   const std::array<KeywordSet, 3>& topics,
                                   const RunConfig& config) {
  if (config.imputation != "mean" && config.imputation != "zero")
    throw std::runtime_error("config imputation must be mean or zero, got '" +
                             config.imputation + "'");

  FeaturizeResult result;
  result.rows.resize(entries.size());
  ChatOptions chat = config.chat_options();
  AssembleOptions assemble = config.assemble_options();

  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto process = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      try {
        const auto& e = entries[i];
        Transcript t = load_transcript(e.transcript_path, e.subject_id, chat);
        TokenizedDoc doc = make_doc(e.subject_id, t.joined());
        std::optional<std::vector<std::string>> trees;
        if (e.parse_trees_path) {
          try {
            trees = load_trees_file(*e.parse_trees_path);
            if (!trees->empty()) avg_parse_depth(*trees);  // surface errors
          } catch (const std::exception& ex) {
            throw std::runtime_error("parse trees for subject " +
                                     e.subject_id + ": " + ex.what());
          }
        }
        std::optional<TokenizedDoc> asr;
        if (e.asr_transcript_path) {
          Transcript at =
              load_transcript(*e.asr_transcript_path, e.subject_id, chat);
          asr = make_doc(e.subject_id, at.joined());
        }
        FeatureVector row =
            assemble_features(doc, t, model, refs, topics, trees, asr,
                              assemble);
        row.label = e.label;
        result.rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  int threads = std::max(1, config.threads);
  if (threads == 1 || entries.size() < 2) {
    process(0, entries.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (entries.size() + threads - 1) / threads;
    for (size_t i = 0; i < entries.size(); i += chunk)
      pool.emplace_back(process, i, std::min(entries.size(), i + chunk));
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // Column-mean imputation for the optional annotation features.
  for (int feature : {static_cast<int>(kAvgDepth), static_cast<int>(kWer)}) {
    double sum = 0.0;
    int available = 0;
    for (const auto& row : result.rows) {
      bool imputed = feature == kAvgDepth ? row.avg_depth_imputed
                                          : row.wer_imputed;
      if (!imputed) {
        sum += row.values[feature];
        ++available;
      }
    }
    double fill = 0.0;
    if (config.imputation == "mean" && available > 0) fill = sum / available;
    for (auto& row : result.rows) {
      bool imputed = feature == kAvgDepth ? row.avg_depth_imputed
                                          : row.wer_imputed;
      if (!imputed) continue;
      row.values[feature] = fill;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "subject %s: %s imputed with %s %.6f",
                    row.subject_id.c_str(), feature_names()[feature].c_str(),
                    available > 0 && config.imputation == "mean"
                        ? "column mean"
                        : "fallback value",
                    fill);
      result.notes.push_back(buf);
    }
  }
  return result;
}

Matrix feature_matrix(const std::vector<FeatureVector>& rows) {
  Matrix X;
  X.reserve(rows.size());
  for (const auto& r : rows)
    X.emplace_back(r.values.begin(), r.values.end());
  return X;
}

std::vector<Label> feature_labels(const std::vector<FeatureVector>& rows,
                                  bool require_known) {
  std::vector<Label> y;
  y.reserve(rows.size());
  for (const auto& r : rows) {
    if (require_known && r.label == Label::Unknown)
      throw std::runtime_error("subject " + r.subject_id +
                               " has no label in the feature file");
    y.push_back(r.label);
  }
  return y;
}

}  // namespace ctfeat
