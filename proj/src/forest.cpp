#include "ctfeat/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ctfeat/io.hpp"
#include "ctfeat/rng.hpp"

namespace ctfeat {

using nlohmann::json;

std::vector<int> RngStream::sample_without_replacement(int n, int k) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  k = std::min(k, n);
  for (int i = 0; i < k; ++i) {
    int j = i + static_cast<int>(uniform_int(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

int to_class(Label l) {
  if (l == Label::HC) return 0;
  if (l == Label::AD) return 1;
  throw std::runtime_error("unlabeled sample in training/evaluation data");
}

double gini(int n_hc, int n_ad) {
  double n = n_hc + n_ad;
  if (n == 0) return 0.0;
  double ph = n_hc / n, pa = n_ad / n;
  return 1.0 - ph * ph - pa * pa;
}

struct TreeBuilder {
  const Matrix& X;
  const std::vector<int>& y;
  const ForestConfig& cfg;
  int n_features;
  RngStream rng;
  DecisionTree tree;
  std::vector<double> importance;  // unnormalized, weighted by node fraction
  int n_total = 0;

  // Grows the subtree over `idx`; returns the node index.
  int grow(std::vector<int>& idx, int depth) {
    int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    int n_hc = 0, n_ad = 0;
    for (int i : idx) (y[i] == 0 ? n_hc : n_ad)++;
    tree.nodes[node_id].count_hc = n_hc;
    tree.nodes[node_id].count_ad = n_ad;

    bool can_split = n_hc > 0 && n_ad > 0 &&
                     static_cast<int>(idx.size()) >= 2 * cfg.min_samples_leaf &&
                     (cfg.max_depth == 0 || depth < cfg.max_depth);
    if (!can_split) return node_id;

    double parent_gini = gini(n_hc, n_ad);
    double n_node = static_cast<double>(idx.size());

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_gain = 0.0;
    auto features =
        rng.sample_without_replacement(n_features, cfg.max_features);

    std::vector<std::pair<double, int>> vals(idx.size());
    for (int f : features) {
      for (size_t k = 0; k < idx.size(); ++k)
        vals[k] = {X[idx[k]][f], y[idx[k]]};
      std::sort(vals.begin(), vals.end());

      int left_hc = 0, left_ad = 0;
      for (size_t k = 0; k + 1 < vals.size(); ++k) {
        (vals[k].second == 0 ? left_hc : left_ad)++;
        if (vals[k].first == vals[k + 1].first) continue;
        int n_left = static_cast<int>(k) + 1;
        int n_right = static_cast<int>(vals.size()) - n_left;
        if (n_left < cfg.min_samples_leaf || n_right < cfg.min_samples_leaf)
          continue;
        double gain = parent_gini -
                      (n_left / n_node) * gini(left_hc, left_ad) -
                      (n_right / n_node) *
                          gini(n_hc - left_hc, n_ad - left_ad);
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = f;
          best_threshold = (vals[k].first + vals[k + 1].first) / 2.0;
        }
      }
    }
    if (best_feature < 0) return node_id;

    std::vector<int> left_idx, right_idx;
    for (int i : idx)
      (X[i][best_feature] <= best_threshold ? left_idx : right_idx)
          .push_back(i);

    importance[best_feature] += (n_node / n_total) * best_gain;
    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    idx.clear();
    idx.shrink_to_fit();
    int l = grow(left_idx, depth + 1);
    tree.nodes[node_id].left = l;
    int r = grow(right_idx, depth + 1);
    tree.nodes[node_id].right = r;
    return node_id;
  }
};

DecisionTree build_tree(const Matrix& X, const std::vector<int>& y,
                        const ForestConfig& cfg, uint64_t tree_index,
                        std::vector<double>& importance_out) {
  int n = static_cast<int>(X.size());
  int n_features = static_cast<int>(X[0].size());
  TreeBuilder b{X,  y,  cfg, n_features, RngStream::derive(cfg.seed, tree_index),
                {}, {}, 0};
  b.importance.assign(n_features, 0.0);

  std::vector<int> idx(n);
  if (cfg.bootstrap) {
    for (int i = 0; i < n; ++i)
      idx[i] = static_cast<int>(b.rng.uniform_int(n));
  } else {
    for (int i = 0; i < n; ++i) idx[i] = i;
  }
  b.n_total = n;
  b.grow(idx, 0);
  importance_out = std::move(b.importance);
  return std::move(b.tree);
}

void validate_matrix(const Matrix& X, const std::vector<Label>& y) {
  if (X.size() != y.size())
    throw std::runtime_error("feature matrix and label count mismatch");
  if (X.empty()) throw std::runtime_error("empty feature matrix");
  size_t dim = X[0].size();
  if (dim == 0) throw std::runtime_error("feature matrix has no columns");
  for (size_t r = 0; r < X.size(); ++r) {
    if (X[r].size() != dim)
      throw std::runtime_error("ragged feature matrix at row " +
                               std::to_string(r));
    for (size_t c = 0; c < dim; ++c)
      if (std::isnan(X[r][c]))
        throw std::runtime_error("NaN feature value at row " +
                                 std::to_string(r) + ", column " +
                                 std::to_string(c) +
                                 " (impute before training)");
  }
}

}  // namespace

Label DecisionTree::predict(const std::vector<double>& x) const {
  int node = 0;
  while (nodes[node].feature >= 0) {
    node = x[nodes[node].feature] <= nodes[node].threshold
               ? nodes[node].left
               : nodes[node].right;
  }
  return nodes[node].count_ad >= nodes[node].count_hc ? Label::AD : Label::HC;
}

ForestModel train_forest(const Matrix& X, const std::vector<Label>& y,
                         const ForestConfig& config,
                         const std::vector<std::string>& feature_names,
                         int n_threads) {
  validate_matrix(X, y);
  if (config.n_trees < 1) throw std::runtime_error("n_trees must be >= 1");
  if (config.max_features < 1)
    throw std::runtime_error("max_features must be >= 1");
  if (config.min_samples_leaf < 1)
    throw std::runtime_error("min_samples_leaf must be >= 1");
  if (X.size() < 2) throw std::runtime_error("need at least two samples");

  std::vector<int> classes(y.size());
  for (size_t i = 0; i < y.size(); ++i) classes[i] = to_class(y[i]);
  bool has_hc = false, has_ad = false;
  for (int c : classes) (c == 0 ? has_hc : has_ad) = true;
  if (!has_hc || !has_ad)
    throw std::runtime_error("training labels contain a single class");

  const int n_features = static_cast<int>(X[0].size());
  ForestModel model;
  model.config = config;
  if (!feature_names.empty()) {
    if (static_cast<int>(feature_names.size()) != n_features)
      throw std::runtime_error("feature name count does not match matrix");
    model.feature_names = feature_names;
  } else {
    for (int f = 0; f < n_features; ++f)
      model.feature_names.push_back("f" + std::to_string(f));
  }

  model.trees.resize(config.n_trees);
  std::vector<std::vector<double>> per_tree_importance(config.n_trees);

  n_threads = std::max(1, n_threads);
  auto worker = [&](int begin, int end) {
    for (int t = begin; t < end; ++t)
      model.trees[t] = build_tree(X, classes, config, t,
                                  per_tree_importance[t]);
  };
  if (n_threads == 1 || config.n_trees == 1) {
    worker(0, config.n_trees);
  } else {
    std::vector<std::thread> pool;
    int chunk = (config.n_trees + n_threads - 1) / n_threads;
    for (int t = 0; t < config.n_trees; t += chunk)
      pool.emplace_back(worker, t, std::min(config.n_trees, t + chunk));
    for (auto& th : pool) th.join();
  }

  model.importance.assign(n_features, 0.0);
  for (const auto& imp : per_tree_importance)
    for (int f = 0; f < n_features; ++f) model.importance[f] += imp[f];
  for (auto& v : model.importance) v /= config.n_trees;
  double total = 0.0;
  for (double v : model.importance) total += v;
  if (total > 0.0)
    for (auto& v : model.importance) v /= total;
  return model;
}

Prediction predict(const ForestModel& model, const std::vector<double>& x) {
  if (x.size() != model.feature_names.size())
    throw std::runtime_error("feature vector dimension mismatch");
  int ad_votes = 0;
  for (const auto& tree : model.trees)
    if (tree.predict(x) == Label::AD) ++ad_votes;
  double prob = static_cast<double>(ad_votes) /
                static_cast<double>(model.trees.size());
  return {prob >= 0.5 ? Label::AD : Label::HC, prob};
}

EvalReport report_from_confusion(int tp, int fp, int fn, int tn) {
  EvalReport r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.tn = tn;
  int n = tp + fp + fn + tn;
  r.accuracy = n > 0 ? static_cast<double>(tp + tn) / n : 0.0;
  r.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  r.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  r.f1 = r.precision + r.recall > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

EvalReport evaluate_predictions(const std::vector<Label>& predicted,
                                const std::vector<Label>& actual) {
  if (predicted.size() != actual.size())
    throw std::runtime_error("prediction/label count mismatch");
  if (predicted.empty()) throw std::runtime_error("empty evaluation set");
  int tp = 0, fp = 0, fn = 0, tn = 0;
  for (size_t i = 0; i < predicted.size(); ++i) {
    bool pred_ad = to_class(predicted[i]) == 1;
    bool is_ad = to_class(actual[i]) == 1;
    if (pred_ad && is_ad) ++tp;
    else if (pred_ad && !is_ad) ++fp;
    else if (!pred_ad && is_ad) ++fn;
    else ++tn;
  }
  return report_from_confusion(tp, fp, fn, tn);
}

EvalReport evaluate(const ForestModel& model, const Matrix& X_test,
                    const std::vector<Label>& y_test) {
  validate_matrix(X_test, y_test);
  std::vector<Label> preds;
  preds.reserve(X_test.size());
  for (const auto& row : X_test) preds.push_back(predict(model, row).label);
  return evaluate_predictions(preds, y_test);
}

std::vector<double> anova_f(const Matrix& X, const std::vector<Label>& y) {
  validate_matrix(X, y);
  size_t n = X.size();
  size_t dim = X[0].size();
  int n_hc = 0, n_ad = 0;
  for (Label l : y) (to_class(l) == 0 ? n_hc : n_ad)++;
  if (n_hc < 2 || n_ad < 2)
    throw std::runtime_error("anova_f: each class needs at least 2 samples");

  std::vector<double> out(dim);
  for (size_t f = 0; f < dim; ++f) {
    double sum_hc = 0, sum_ad = 0;
    for (size_t i = 0; i < n; ++i)
      (to_class(y[i]) == 0 ? sum_hc : sum_ad) += X[i][f];
    double mean_hc = sum_hc / n_hc;
    double mean_ad = sum_ad / n_ad;
    double grand = (sum_hc + sum_ad) / n;
    double ss_between = n_hc * (mean_hc - grand) * (mean_hc - grand) +
                        n_ad * (mean_ad - grand) * (mean_ad - grand);
    double ss_within = 0;
    for (size_t i = 0; i < n; ++i) {
      double mu = to_class(y[i]) == 0 ? mean_hc : mean_ad;
      ss_within += (X[i][f] - mu) * (X[i][f] - mu);
    }
    double ms_between = ss_between / 1.0;          // k - 1 = 1
    double ms_within = ss_within / (n - 2.0);      // N - k
    if (ms_within == 0.0)
      out[f] = ms_between == 0.0
                   ? 0.0
                   : std::numeric_limits<double>::infinity();
    else
      out[f] = ms_between / ms_within;
  }
  return out;
}

std::vector<int> rank_by_f(const std::vector<double>& f_values) {
  std::vector<int> order(f_values.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (f_values[a] != f_values[b]) return f_values[a] > f_values[b];
    return a < b;
  });
  return order;
}

namespace {

Matrix select_columns(const Matrix& X, const std::vector<int>& cols) {
  Matrix out(X.size());
  for (size_t r = 0; r < X.size(); ++r) {
    out[r].reserve(cols.size());
    for (int c : cols) out[r].push_back(X[r][c]);
  }
  return out;
}

}  // namespace

std::vector<AblationPoint> ablation_sweep(const Matrix& X_train,
                                          const std::vector<Label>& y_train,
                                          const Matrix& X_test,
                                          const std::vector<Label>& y_test,
                                          const ForestConfig& config,
                                          int n_threads) {
  auto f_values = anova_f(X_train, y_train);
  auto ranking = rank_by_f(f_values);

  std::vector<AblationPoint> curve;
  std::vector<int> selected;
  for (int n = 1; n <= static_cast<int>(ranking.size()); ++n) {
    selected.push_back(ranking[n - 1]);
    std::vector<int> cols = selected;
    std::sort(cols.begin(), cols.end());  // keep schema order

    ForestConfig step = config;
    step.max_features = std::min(config.max_features, n);
    ForestModel model = train_forest(select_columns(X_train, cols), y_train,
                                     step, {}, n_threads);
    EvalReport report =
        evaluate(model, select_columns(X_test, cols), y_test);
    curve.push_back({n, ranking[n - 1], report.accuracy});
  }
  return curve;
}

GridSearchResult grid_search(const Matrix& X, const std::vector<Label>& y,
                             const std::vector<ForestConfig>& grid, int folds,
                             uint64_t seed, int n_threads) {
  validate_matrix(X, y);
  if (grid.empty()) throw std::runtime_error("grid_search: empty grid");
  if (folds < 2) throw std::runtime_error("grid_search: folds must be >= 2");

  std::vector<int> hc_idx, ad_idx;
  for (size_t i = 0; i < y.size(); ++i)
    (to_class(y[i]) == 0 ? hc_idx : ad_idx).push_back(static_cast<int>(i));
  if (folds > static_cast<int>(std::min(hc_idx.size(), ad_idx.size())))
    throw std::runtime_error(
        "grid_search: folds exceed the minority class count");

  // Deterministic stratified fold assignment.
  RngStream rng_hc = RngStream::derive(seed, 101);
  RngStream rng_ad = RngStream::derive(seed, 102);
  rng_hc.shuffle(hc_idx);
  rng_ad.shuffle(ad_idx);
  std::vector<int> fold_of(y.size());
  for (size_t k = 0; k < hc_idx.size(); ++k)
    fold_of[hc_idx[k]] = static_cast<int>(k % folds);
  for (size_t k = 0; k < ad_idx.size(); ++k)
    fold_of[ad_idx[k]] = static_cast<int>(k % folds);

  GridSearchResult result;
  result.cv_accuracies.resize(grid.size(), 0.0);
  int best = -1;
  for (size_t g = 0; g < grid.size(); ++g) {
    double acc_sum = 0.0;
    for (int fold = 0; fold < folds; ++fold) {
      Matrix X_tr, X_va;
      std::vector<Label> y_tr, y_va;
      for (size_t i = 0; i < X.size(); ++i) {
        if (fold_of[i] == fold) {
          X_va.push_back(X[i]);
          y_va.push_back(y[i]);
        } else {
          X_tr.push_back(X[i]);
          y_tr.push_back(y[i]);
        }
      }
      ForestConfig cfg = grid[g];
      cfg.seed = seed;
      ForestModel model = train_forest(X_tr, y_tr, cfg, {}, n_threads);
      acc_sum += evaluate(model, X_va, y_va).accuracy;
    }
    result.cv_accuracies[g] = acc_sum / folds;

    auto depth_rank = [](const ForestConfig& c) {
      return c.max_depth == 0 ? std::numeric_limits<int>::max() : c.max_depth;
    };
    bool better =
        best < 0 || result.cv_accuracies[g] > result.best_cv_accuracy;
    if (!better && result.cv_accuracies[g] == result.best_cv_accuracy) {
      const ForestConfig& a = grid[g];
      const ForestConfig& b = grid[best];
      if (a.n_trees != b.n_trees) better = a.n_trees < b.n_trees;
      else if (depth_rank(a) != depth_rank(b))
        better = depth_rank(a) < depth_rank(b);
      else if (a.max_features != b.max_features)
        better = a.max_features < b.max_features;
      else if (a.min_samples_leaf != b.min_samples_leaf)
        better = a.min_samples_leaf < b.min_samples_leaf;
    }
    if (better) {
      best = static_cast<int>(g);
      result.best_cv_accuracy = result.cv_accuracies[g];
    }
  }
  result.best = grid[best];
  result.best.seed = seed;
  return result;
}

std::string ForestModel::to_json() const {
  json j;
  j["config"] = {{"n_trees", config.n_trees},
                 {"max_features", config.max_features},
                 {"min_samples_leaf", config.min_samples_leaf},
                 {"max_depth", config.max_depth},
                 {"bootstrap", config.bootstrap},
                 {"seed", config.seed}};
  j["feature_names"] = feature_names;
  j["importance"] = importance;
  json jt = json::array();
  for (const auto& tree : trees) {
    json jn = json::array();
    for (const auto& n : tree.nodes)
      jn.push_back({n.feature, n.threshold, n.left, n.right, n.count_hc,
                    n.count_ad});
    jt.push_back(std::move(jn));
  }
  j["trees"] = std::move(jt);
  return j.dump() + "\n";
}

ForestModel ForestModel::from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  ForestModel m;
  const auto& jc = j.at("config");
  m.config.n_trees = jc.at("n_trees").get<int>();
  m.config.max_features = jc.at("max_features").get<int>();
  m.config.min_samples_leaf = jc.at("min_samples_leaf").get<int>();
  m.config.max_depth = jc.at("max_depth").get<int>();
  m.config.bootstrap = jc.at("bootstrap").get<bool>();
  m.config.seed = jc.at("seed").get<uint64_t>();
  m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  m.importance = j.at("importance").get<std::vector<double>>();
  for (const auto& jt : j.at("trees")) {
    DecisionTree tree;
    for (const auto& jn : jt) {
      TreeNode n;
      n.feature = jn.at(0).get<int>();
      n.threshold = jn.at(1).get<double>();
      n.left = jn.at(2).get<int>();
      n.right = jn.at(3).get<int>();
      n.count_hc = jn.at(4).get<int>();
      n.count_ad = jn.at(5).get<int>();
      tree.nodes.push_back(n);
    }
    m.trees.push_back(std::move(tree));
  }
  return m;
}

void ForestModel::save(const std::string& path) const {
  atomic_write_file(path, to_json());
}

ForestModel ForestModel::load(const std::string& path) {
  try {
    return from_json(read_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error("invalid forest model file " + path + ": " +
                             e.what());
  }
}

}  // namespace ctfeat
