// pipeline.hpp -- manifest-level operations shared by the CLI, bindings
// and tests: fitting the TF-IDF model on a labeled manifest and producing
// the per-subject feature matrix with column-mean imputation.

#ifndef CTFEAT_PIPELINE_HPP
#define CTFEAT_PIPELINE_HPP

#include <string>
#include <vector>

#include "ctfeat/config.hpp"
#include "ctfeat/ingest.hpp"
#include "ctfeat/refscore.hpp"
#include "ctfeat/taskfeat.hpp"
#include "ctfeat/tfidf.hpp"

namespace ctfeat {

/// Load and tokenize every transcript of the manifest in manifest order.
std::vector<TokenizedDoc> load_docs(const std::vector<ManifestEntry>& entries,
                                    const RunConfig& config);

/// Fit the TF-IDF model from a fully labeled manifest; an unlabeled row is
/// an error naming the subject.
TfIdfModel fit_from_manifest(const std::vector<ManifestEntry>& entries,
                             const RunConfig& config);

struct FeaturizeResult {
  std::vector<FeatureVector> rows;       // manifest order
  std::vector<std::string> notes;        // imputation sidecar lines
};

/// Assemble the full feature row for every subject. Missing optional
/// annotations are imputed with the column mean of the subjects that have
/// them (or 0 when none do / imputation = zero); strict mode refuses.
FeaturizeResult featurize_manifest(const std::vector<ManifestEntry>& entries,
                                   const TfIdfModel& model,
                                   const ReferenceSet& refs,
                                   const std::array<KeywordSet, 3>& topics,
                                   const RunConfig& config);

/// Feature matrix and labels from parsed CSV rows.
Matrix feature_matrix(const std::vector<FeatureVector>& rows);
std::vector<Label> feature_labels(const std::vector<FeatureVector>& rows,
                                  bool require_known = true);

}  // namespace ctfeat

#endif
