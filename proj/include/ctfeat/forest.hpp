// forest.hpp -- random forest on CART trees with Gini importance, plus the
// evaluation metrics, ANOVA F scoring, ablation sweep and grid search used
// by the experiment commands.

#ifndef CTFEAT_FOREST_HPP
#define CTFEAT_FOREST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ctfeat/ingest.hpp"

namespace ctfeat {

using Matrix = std::vector<std::vector<double>>;  // rows x features

struct ForestConfig {
  int n_trees = 300;
  int max_features = 4;  // features searched per split
  int min_samples_leaf = 1;
  int max_depth = 0;  // 0 = unlimited
  bool bootstrap = true;
  uint64_t seed = 0;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int count_hc = 0;
  int count_ad = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  Label predict(const std::vector<double>& x) const;
};

struct ForestModel {
  ForestConfig config;
  std::vector<std::string> feature_names;
  std::vector<DecisionTree> trees;
  std::vector<double> importance;  // mean decrease in Gini, sums to 1

  std::string to_json() const;
  static ForestModel from_json(const std::string& json_text);
  void save(const std::string& path) const;
  static ForestModel load(const std::string& path);
};

/// Train on bootstrap samples with per-tree derived RNG streams; the result
/// is identical for any thread count.
ForestModel train_forest(const Matrix& X, const std::vector<Label>& y,
                         const ForestConfig& config,
                         const std::vector<std::string>& feature_names = {},
                         int n_threads = 1);

struct Prediction {
  Label label;
  double probability_ad;  // fraction of trees voting AD; ties go to AD
};

Prediction predict(const ForestModel& model, const std::vector<double>& x);

struct EvalReport {
  double accuracy = 0, precision = 0, recall = 0, f1 = 0;
  int tp = 0, fp = 0, fn = 0, tn = 0;  // AD is the positive class
};

EvalReport evaluate(const ForestModel& model, const Matrix& X_test,
                    const std::vector<Label>& y_test);
EvalReport report_from_confusion(int tp, int fp, int fn, int tn);

/// Evaluate externally produced predictions against reference labels.
EvalReport evaluate_predictions(const std::vector<Label>& predicted,
                                const std::vector<Label>& actual);

/// One-way ANOVA F per feature over the two classes. Zero within-class
/// variance with distinct means yields +infinity; an all-constant feature
/// yields 0. Requires two classes with at least two samples each.
std::vector<double> anova_f(const Matrix& X, const std::vector<Label>& y);

/// Feature indices ordered by descending F (+inf first), ties by schema
/// order.
std::vector<int> rank_by_f(const std::vector<double>& f_values);

struct AblationPoint {
  int n_features = 0;
  int added_feature = 0;  // schema index of the feature added at this step
  double accuracy = 0.0;
};

/// Add features in descending training-set F order; each step trains a
/// fresh forest from the master seed on the selected columns (kept in
/// schema order, so the final step reproduces the full model exactly).
std::vector<AblationPoint> ablation_sweep(const Matrix& X_train,
                                          const std::vector<Label>& y_train,
                                          const Matrix& X_test,
                                          const std::vector<Label>& y_test,
                                          const ForestConfig& config,
                                          int n_threads = 1);

struct GridSearchResult {
  ForestConfig best;
  double best_cv_accuracy = 0.0;
  std::vector<double> cv_accuracies;  // one per grid point, grid order
};

/// Stratified k-fold cross-validated accuracy per grid point; ties break
/// toward fewer trees, then shallower depth, then smaller max_features,
/// then smaller min_samples_leaf.
GridSearchResult grid_search(const Matrix& X, const std::vector<Label>& y,
                             const std::vector<ForestConfig>& grid, int folds,
                             uint64_t seed, int n_threads = 1);

}  // namespace ctfeat

#endif
