// ctfeat command line: fit / featurize / train / eval / anova / importance /
// ablate / grid-search plus the LLM generation commands.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ctfeat/config.hpp"
#include "ctfeat/forest.hpp"
#include "ctfeat/io.hpp"
#include "ctfeat/llmgen.hpp"
#include "ctfeat/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ctfeat;

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (fs::path(cfg.out_dir) / name).string();
}

void write_snapshot(const RunConfig& cfg, const std::string& command) {
  atomic_write_file(out_path(cfg, command + ".resolved.cfg"), cfg.resolved());
}

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

EndpointConfig endpoint_from(const RunConfig& cfg) {
  EndpointConfig ep;
  ep.endpoint_url = cfg.llm_endpoint;
  ep.model_name = cfg.llm_model;
  ep.temperature = cfg.llm_temperature;
  ep.api_key_env = cfg.llm_api_key_env;
  ep.max_retries = cfg.llm_retries;
  ep.parallelism = cfg.llm_parallelism;
  return ep;
}

struct FeatureData {
  std::vector<FeatureVector> rows;
  Matrix X;
  std::vector<Label> y;
};

FeatureData load_features(const std::string& path, bool require_labels) {
  FeatureData d;
  d.rows = read_feature_csv(path);
  if (d.rows.empty())
    throw std::runtime_error("feature file has no rows: " + path);
  d.X = feature_matrix(d.rows);
  d.y = feature_labels(d.rows, require_labels);
  return d;
}

std::string metrics_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "acc_pct,pre_pct,rec_pct,f1_pct,accuracy,precision,recall,f1,"
         "tp,fp,fn,tn\n";
  out << fmt(100.0 * r.accuracy, "%.1f") << ","
      << fmt(100.0 * r.precision, "%.1f") << ","
      << fmt(100.0 * r.recall, "%.1f") << "," << fmt(100.0 * r.f1, "%.1f")
      << "," << fmt(r.accuracy) << "," << fmt(r.precision) << ","
      << fmt(r.recall) << "," << fmt(r.f1) << "," << r.tp << "," << r.fp
      << "," << r.fn << "," << r.tn << "\n";
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{
      "ctfeat: explainable features and experiments for Cookie Theft "
      "picture-description transcripts"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::optional<uint64_t> seed_flag;
  std::optional<int> threads_flag;
  bool strict_flag = false;
  std::optional<std::string> out_dir_flag, keywords_flag, references_flag;

  app.add_option("--config", config_path, "configuration file (key = value)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", seed_flag, "RNG seed (overrides config)");
  app.add_flag("--strict", strict_flag,
               "refuse missing optional annotations instead of imputing");
  app.add_option("--out-dir", out_dir_flag, "output directory");
  app.add_option("--threads", threads_flag, "worker threads");
  app.add_option("--keywords", keywords_flag, "keyword set JSON file");
  app.add_option("--references", references_flag, "golden reference file");

  // fit
  auto* fit_cmd = app.add_subcommand(
      "fit", "fit the TF-IDF model on a labeled training manifest");
  std::string fit_manifest, fit_out = "tfidf_model.json";
  fit_cmd->add_option("--manifest", fit_manifest, "training manifest CSV")
      ->required();
  fit_cmd->add_option("--model-out", fit_out, "model file name");

  // featurize
  auto* feat_cmd = app.add_subcommand(
      "featurize", "compute the 15-dimensional feature matrix");
  std::string feat_manifest, feat_model, feat_out = "features.csv";
  feat_cmd->add_option("--manifest", feat_manifest, "manifest CSV")
      ->required();
  feat_cmd->add_option("--tfidf-model", feat_model, "fitted TF-IDF model")
      ->required()
      ->check(CLI::ExistingFile);
  feat_cmd->add_option("--out", feat_out, "feature CSV name");

  // train
  auto* train_cmd =
      app.add_subcommand("train", "train the random forest classifier");
  std::string train_features, train_out = "forest.json";
  train_cmd->add_option("--features", train_features, "training feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--model-out", train_out, "model file name");

  // eval
  auto* eval_cmd = app.add_subcommand(
      "eval", "evaluate a model (or imported predictions) on labeled data");
  std::string eval_features, eval_model, eval_preds, eval_out = "metrics.csv";
  eval_cmd->add_option("--features", eval_features, "labeled feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--model", eval_model, "trained forest model");
  eval_cmd->add_option("--predictions", eval_preds,
                       "externally produced predictions CSV "
                       "(subject_id,predicted)");
  eval_cmd->add_option("--out", eval_out, "metrics file name");

  // anova
  auto* anova_cmd = app.add_subcommand("anova", "per-feature ANOVA F-values");
  std::string anova_features, anova_out = "anova.csv";
  anova_cmd->add_option("--features", anova_features, "labeled feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  anova_cmd->add_option("--out", anova_out, "output file name");

  // importance
  auto* imp_cmd = app.add_subcommand(
      "importance", "normalized Gini importance table of a trained model");
  std::string imp_model, imp_out = "importance.csv";
  imp_cmd->add_option("--model", imp_model, "trained forest model")
      ->required()
      ->check(CLI::ExistingFile);
  imp_cmd->add_option("--out", imp_out, "output file name");

  // ablate
  auto* abl_cmd = app.add_subcommand(
      "ablate", "accuracy curve adding features in descending F order");
  std::string abl_train, abl_test, abl_out = "ablation.csv";
  abl_cmd->add_option("--train-features", abl_train, "training feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  abl_cmd->add_option("--test-features", abl_test, "test feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  abl_cmd->add_option("--out", abl_out, "output file name");

  // grid-search
  auto* grid_cmd = app.add_subcommand(
      "grid-search", "cross-validated hyperparameter grid search");
  std::string grid_features, grid_out = "grid_results.csv";
  grid_cmd->add_option("--features", grid_features, "labeled feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  grid_cmd->add_option("--out", grid_out, "output file name");

  // gen-keywords
  auto* genk_cmd = app.add_subcommand(
      "gen-keywords", "keyword generation iterations for one sub-picture");
  std::string genk_image, genk_from_log, genk_log = "keywords_run.jsonl",
              genk_out = "keyword_candidates.csv";
  int genk_iterations = 50;
  double genk_min_freq = -1.0;
  genk_cmd->add_option("--image", genk_image, "sub-picture image file");
  genk_cmd->add_option("--iterations", genk_iterations,
                       "generation iterations");
  genk_cmd->add_option("--from-log", genk_from_log,
                       "aggregate an existing run log offline");
  genk_cmd->add_option("--log", genk_log, "run log name (JSONL)");
  genk_cmd->add_option("--candidates-out", genk_out, "candidate CSV name");
  genk_cmd->add_option("--min-frequency", genk_min_freq,
                       "keep stems mentioned in at least this fraction of "
                       "responses");

  // gen-refs
  auto* genr_cmd = app.add_subcommand(
      "gen-refs", "golden description generation iterations");
  std::string genr_out = "references_generated.txt",
              genr_log = "references_run.jsonl", genr_image;
  int genr_iterations = 15;
  genr_cmd->add_option("--image", genr_image,
                       "full picture image file (optional)");
  genr_cmd->add_option("--iterations", genr_iterations,
                       "generation iterations");
  genr_cmd->add_option("--out", genr_out, "reference file name");
  genr_cmd->add_option("--log", genr_log, "run log name (JSONL)");

  // curate
  auto* cur_cmd = app.add_subcommand(
      "curate", "apply accept/reject decisions to keyword candidates");
  std::string cur_candidates, cur_decisions, cur_topic,
      cur_out = "keywords_curated.json";
  int cur_id = 0;
  cur_cmd->add_option("--candidates", cur_candidates, "candidate CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cur_cmd->add_option("--decisions", cur_decisions,
                      "decision file: 'accept word' / 'reject word' lines")
      ->required()
      ->check(CLI::ExistingFile);
  cur_cmd->add_option("--id", cur_id, "keyword set id")->required();
  cur_cmd->add_option("--topic", cur_topic, "topic tag T1/T2/T3")->required();
  cur_cmd->add_option("--out", cur_out, "keyword JSON name");

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) cfg.apply_file(config_path);
  if (seed_flag) cfg.seed = *seed_flag;
  if (threads_flag) cfg.threads = *threads_flag;
  if (strict_flag) cfg.strict = true;
  if (out_dir_flag) cfg.out_dir = *out_dir_flag;
  if (keywords_flag) cfg.keyword_file = *keywords_flag;
  if (references_flag) cfg.reference_file = *references_flag;
  fs::create_directories(cfg.out_dir);

  if (fit_cmd->parsed()) {
    auto entries = load_manifest(fit_manifest);
    TfIdfModel model = fit_from_manifest(entries, cfg);
    model.save(out_path(cfg, fit_out));
    write_snapshot(cfg, "fit");
    std::cout << "fit: " << entries.size() << " documents, vocabulary "
              << model.vocab.size() << " terms\n";
    std::cout << "top30:";
    for (const auto& t : model.top30) std::cout << " " << t;
    std::cout << "\nmodel written to " << out_path(cfg, fit_out) << "\n";
    return 0;
  }

  if (feat_cmd->parsed()) {
    if (cfg.keyword_file.empty())
      throw std::runtime_error(
          "no keyword file: set keyword_file in the config or pass "
          "--keywords");
    if (cfg.reference_file.empty())
      throw std::runtime_error(
          "no reference file: set reference_file in the config or pass "
          "--references");
    auto entries = load_manifest(feat_manifest);
    TfIdfModel model = TfIdfModel::load(feat_model);
    ReferenceSet refs = ReferenceSet::load(cfg.reference_file);
    auto topics = resolve_topics(load_keyword_file(cfg.keyword_file),
                                 cfg.topic_mapping_mode());
    FeaturizeResult result =
        featurize_manifest(entries, model, refs, topics, cfg);

    std::string csv = feature_csv_header() + "\n";
    for (const auto& row : result.rows) csv += feature_csv_row(row) + "\n";
    atomic_write_file(out_path(cfg, feat_out), csv);

    std::string log;
    for (const auto& note : result.notes) log += note + "\n";
    atomic_write_file(out_path(cfg, feat_out + ".log"), log);
    write_snapshot(cfg, "featurize");
    std::cout << "featurize: " << result.rows.size() << " subjects, "
              << result.notes.size() << " imputations -> "
              << out_path(cfg, feat_out) << "\n";
    return 0;
  }

  if (train_cmd->parsed()) {
    FeatureData d = load_features(train_features, true);
    ForestModel model =
        train_forest(d.X, d.y, cfg.forest_config(),
                     {feature_names().begin(), feature_names().end()},
                     cfg.threads);
    model.save(out_path(cfg, train_out));
    write_snapshot(cfg, "train");
    std::cout << "train: " << d.rows.size() << " samples, "
              << model.trees.size() << " trees -> "
              << out_path(cfg, train_out) << "\n";
    return 0;
  }

  if (eval_cmd->parsed()) {
    if (eval_model.empty() == eval_preds.empty())
      throw std::runtime_error(
          "eval needs exactly one of --model or --predictions");
    FeatureData d = load_features(eval_features, true);
    EvalReport report;
    if (!eval_model.empty()) {
      ForestModel model = ForestModel::load(eval_model);
      report = evaluate(model, d.X, d.y);
    } else {
      auto lines = split_lines(read_file(eval_preds));
      if (lines.empty() || trim(lines[0]) != "subject_id,predicted")
        throw std::runtime_error(
            "predictions header mismatch: expected 'subject_id,predicted'");
      std::map<std::string, Label> pred;
      for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        auto fields = split_csv_line(lines[i]);
        if (fields.size() != 2)
          throw std::runtime_error("predictions row " + std::to_string(i + 1) +
                                   ": expected 2 fields");
        pred[trim(fields[0])] = label_from_string(fields[1]);
      }
      std::vector<Label> predicted;
      for (const auto& row : d.rows) {
        auto it = pred.find(row.subject_id);
        if (it == pred.end())
          throw std::runtime_error("no prediction for subject " +
                                   row.subject_id);
        predicted.push_back(it->second);
      }
      report = evaluate_predictions(predicted, d.y);
    }
    atomic_write_file(out_path(cfg, eval_out), metrics_csv(report));
    write_snapshot(cfg, "eval");
    std::cout << "eval: acc " << fmt(100.0 * report.accuracy, "%.1f")
              << " pre " << fmt(100.0 * report.precision, "%.1f") << " rec "
              << fmt(100.0 * report.recall, "%.1f") << " f1 "
              << fmt(100.0 * report.f1, "%.1f") << " -> "
              << out_path(cfg, eval_out) << "\n";
    return 0;
  }

  if (anova_cmd->parsed()) {
    FeatureData d = load_features(anova_features, true);
    auto f_values = anova_f(d.X, d.y);
    auto order = rank_by_f(f_values);
    std::string csv = "feature,f_value\n";
    for (int idx : order) {
      double f = f_values[idx];
      csv += feature_names()[idx] + "," +
             (std::isinf(f) ? std::string("inf") : fmt(f)) + "\n";
    }
    atomic_write_file(out_path(cfg, anova_out), csv);
    write_snapshot(cfg, "anova");
    std::cout << "anova: " << out_path(cfg, anova_out) << "\n";
    return 0;
  }

  if (imp_cmd->parsed()) {
    ForestModel model = ForestModel::load(imp_model);
    std::vector<int> order(model.importance.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (model.importance[a] != model.importance[b])
        return model.importance[a] > model.importance[b];
      return a < b;
    });
    std::string csv = "feature,importance\n";
    for (int idx : order)
      csv += model.feature_names[idx] + "," + fmt(model.importance[idx]) + "\n";
    atomic_write_file(out_path(cfg, imp_out), csv);
    write_snapshot(cfg, "importance");
    std::cout << "importance: " << out_path(cfg, imp_out) << "\n";
    return 0;
  }

  if (abl_cmd->parsed()) {
    FeatureData train = load_features(abl_train, true);
    FeatureData test = load_features(abl_test, true);
    auto curve = ablation_sweep(train.X, train.y, test.X, test.y,
                                cfg.forest_config(), cfg.threads);
    std::string csv = "n_features,added_feature,accuracy\n";
    for (const auto& p : curve)
      csv += std::to_string(p.n_features) + "," +
             feature_names()[p.added_feature] + "," + fmt(p.accuracy) + "\n";
    atomic_write_file(out_path(cfg, abl_out), csv);
    write_snapshot(cfg, "ablate");
    std::cout << "ablate: " << curve.size() << " points -> "
              << out_path(cfg, abl_out) << "\n";
    return 0;
  }

  if (grid_cmd->parsed()) {
    FeatureData d = load_features(grid_features, true);
    std::vector<ForestConfig> grid;
    for (int nt : cfg.grid_n_trees)
      for (int mf : cfg.grid_max_features)
        for (int md : cfg.grid_max_depth)
          for (int msl : cfg.grid_min_samples_leaf) {
            ForestConfig c = cfg.forest_config();
            c.n_trees = nt;
            c.max_features = mf;
            c.max_depth = md;
            c.min_samples_leaf = msl;
            grid.push_back(c);
          }
    GridSearchResult result =
        grid_search(d.X, d.y, grid, cfg.folds, cfg.seed, cfg.threads);
    std::string csv =
        "n_trees,max_features,max_depth,min_samples_leaf,cv_accuracy\n";
    for (size_t g = 0; g < grid.size(); ++g)
      csv += std::to_string(grid[g].n_trees) + "," +
             std::to_string(grid[g].max_features) + "," +
             std::to_string(grid[g].max_depth) + "," +
             std::to_string(grid[g].min_samples_leaf) + "," +
             fmt(result.cv_accuracies[g]) + "\n";
    atomic_write_file(out_path(cfg, grid_out), csv);
    write_snapshot(cfg, "grid-search");
    std::cout << "grid-search best: n_trees=" << result.best.n_trees
              << " max_features=" << result.best.max_features
              << " max_depth=" << result.best.max_depth
              << " min_samples_leaf=" << result.best.min_samples_leaf
              << " cv_accuracy=" << fmt(result.best_cv_accuracy) << "\n";
    return 0;
  }

  if (genk_cmd->parsed()) {
    double min_freq =
        genk_min_freq > 0 ? genk_min_freq : cfg.llm_min_frequency;
    GenerationRun run;
    if (!genk_from_log.empty()) {
      run = GenerationRun::load_log(genk_from_log);
    } else {
      if (genk_image.empty())
        throw std::runtime_error(
            "gen-keywords requires --image "
            "(or --from-log for offline aggregation)");
      run = generate(GenerationKind::Keywords, genk_image, genk_iterations,
                     endpoint_from(cfg), out_path(cfg, genk_log));
    }
    auto candidates = aggregate_keywords(run, min_freq);
    atomic_write_file(out_path(cfg, genk_out), candidates_to_csv(candidates));
    write_snapshot(cfg, "gen-keywords");
    std::cout << "gen-keywords: " << run.ok_responses().size() << "/"
              << run.iterations << " responses, " << candidates.size()
              << " candidates -> " << out_path(cfg, genk_out) << "\n";
    return 0;
  }

  if (genr_cmd->parsed()) {
    GenerationRun run =
        generate(GenerationKind::Descriptions, genr_image, genr_iterations,
                 endpoint_from(cfg), out_path(cfg, genr_log));
    std::string text = "# generated golden references (" + run.started_at +
                       ", model " + run.model_name + ")\n";
    for (auto desc : run.ok_responses()) {
      for (auto& c : desc)
        if (c == '\n' || c == '\r') c = ' ';
      text += trim(desc) + "\n";
    }
    atomic_write_file(out_path(cfg, genr_out), text);
    write_snapshot(cfg, "gen-refs");
    std::cout << "gen-refs: " << run.ok_responses().size() << "/"
              << run.iterations << " references -> "
              << out_path(cfg, genr_out) << "\n";
    return 0;
  }

  if (cur_cmd->parsed()) {
    auto candidates = candidates_from_csv(cur_candidates);
    KeywordSet set = curate(candidates, cur_decisions, cur_id,
                            topic_from_string(cur_topic));
    save_keyword_file(out_path(cfg, cur_out), {set});
    write_snapshot(cfg, "curate");
    std::cout << "curate: " << set.words.size() << " keywords -> "
              << out_path(cfg, cur_out) << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
