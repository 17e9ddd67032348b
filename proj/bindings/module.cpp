// module.cpp -- pybind11 bindings over the main ctfeat operations.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctfeat/forest.hpp"
#include "ctfeat/ingest.hpp"
#include "ctfeat/llmgen.hpp"
#include "ctfeat/parsetree.hpp"
#include "ctfeat/refscore.hpp"
#include "ctfeat/taskfeat.hpp"
#include "ctfeat/textproc.hpp"
#include "ctfeat/tfidf.hpp"

namespace py = pybind11;
using namespace ctfeat;

namespace {

Label label_arg(const std::string& s) { return label_from_string(s); }

std::vector<Label> labels_arg(const std::vector<std::string>& labels) {
  std::vector<Label> out;
  out.reserve(labels.size());
  for (const auto& s : labels) out.push_back(label_arg(s));
  return out;
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["accuracy"] = r.accuracy;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f1"] = r.f1;
  d["tp"] = r.tp;
  d["fp"] = r.fp;
  d["fn"] = r.fn;
  d["tn"] = r.tn;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explainable Cookie Theft picture-description features and the "
            "random-forest experiment pipeline.";

  py::class_<TokenizedDoc>(m, "TokenizedDoc")
      .def_readonly("subject_id", &TokenizedDoc::subject_id)
      .def_readonly("tokens", &TokenizedDoc::tokens)
      .def_readonly("stems", &TokenizedDoc::stems);

  py::class_<Transcript>(m, "Transcript")
      .def_readonly("subject_id", &Transcript::subject_id)
      .def_readonly("utterances", &Transcript::utterances)
      .def_readonly("fillers_marked", &Transcript::fillers_marked)
      .def("joined", &Transcript::joined);

  m.def("tokenize", &tokenize, py::arg("text"),
        "Lowercase word tokens; punctuation separates, interior apostrophes "
        "stay.");
  m.def("porter_stem", &porter_stem, py::arg("token"));
  m.def(
      "ngrams",
      [](const std::vector<std::string>& tokens, int n) {
        py::dict out;
        for (const auto& [gram, count] : ngrams(tokens, n))
          out[py::tuple(py::cast(gram))] = count;
        return out;
      },
      py::arg("tokens"), py::arg("n"));
  m.def("make_doc", &make_doc, py::arg("subject_id"), py::arg("text"));

  m.def(
      "parse_chat",
      [](const std::string& text, const std::string& subject_id,
         const std::string& participant_tier) {
        ChatOptions opt;
        opt.participant_tier = participant_tier;
        return parse_chat(text, subject_id, opt);
      },
      py::arg("text"), py::arg("subject_id"),
      py::arg("participant_tier") = "*PAR");
  m.def("parse_plain", &parse_plain, py::arg("text"), py::arg("subject_id"));

  py::class_<TfIdfModel>(m, "TfIdfModel")
      .def_readonly("vocab", &TfIdfModel::vocab)
      .def_readonly("idf", &TfIdfModel::idf)
      .def_readonly("v_hc", &TfIdfModel::v_hc)
      .def_readonly("v_ad", &TfIdfModel::v_ad)
      .def_readonly("top30", &TfIdfModel::top30)
      .def_readonly("n_train_docs", &TfIdfModel::n_train_docs)
      .def_readonly("n_hc_docs", &TfIdfModel::n_hc_docs)
      .def_readonly("n_ad_docs", &TfIdfModel::n_ad_docs)
      .def("to_json", &TfIdfModel::to_json)
      .def_static("from_json", &TfIdfModel::from_json, py::arg("text"))
      .def("save", &TfIdfModel::save, py::arg("path"))
      .def_static("load", &TfIdfModel::load, py::arg("path"));

  m.def(
      "fit_tfidf",
      [](const std::vector<TokenizedDoc>& docs,
         const std::vector<std::string>& labels, bool use_stems) {
        TfIdfOptions opt;
        opt.use_stems = use_stems;
        return fit_tfidf(docs, labels_arg(labels), opt);
      },
      py::arg("docs"), py::arg("labels"), py::arg("use_stems") = false,
      "Fit vocabulary, IDF and the HC/AD reference vectors.");
  m.def("term_frequency",
        [](const std::string& term, const TokenizedDoc& doc) {
          return term_frequency(term, doc);
        },
        py::arg("term"), py::arg("doc"));
  m.def("similarity_features", &similarity_features, py::arg("doc"),
        py::arg("model"));
  m.def("tfidf_keyword_hit_rate", &tfidf_keyword_hit_rate, py::arg("doc"),
        py::arg("model"));

  py::class_<ReferenceSet>(m, "ReferenceSet")
      .def_readonly("references", &ReferenceSet::references)
      .def_readonly("source", &ReferenceSet::source)
      .def_static("load", &ReferenceSet::load, py::arg("path"))
      .def_static("from_lines", &ReferenceSet::from_lines, py::arg("lines"),
                  py::arg("source") = "inline");

  m.def(
      "bleu_n",
      [](const std::vector<std::string>& candidate,
         const std::vector<std::string>& reference, int n, bool smoothing,
         bool cumulative) {
        BleuOptions opt;
        opt.smoothing = smoothing;
        opt.cumulative = cumulative;
        return bleu_n(candidate, reference, n, opt);
      },
      py::arg("candidate"), py::arg("reference"), py::arg("n"),
      py::arg("smoothing") = true, py::arg("cumulative") = true);
  m.def("meteor", &meteor, py::arg("candidate"), py::arg("reference"));
  m.def(
      "score_against_references",
      [](const TokenizedDoc& candidate, const ReferenceSet& refs) {
        RefScores s = score_against_references(candidate, refs);
        py::dict d;
        d["bleu1"] = s.bleu1;
        d["bleu2"] = s.bleu2;
        d["bleu3"] = s.bleu3;
        d["bleu4"] = s.bleu4;
        d["meteor"] = s.meteor;
        return d;
      },
      py::arg("candidate"), py::arg("refs"));

  py::class_<KeywordSet>(m, "KeywordSet")
      .def_readonly("id", &KeywordSet::id)
      .def_readonly("words", &KeywordSet::words);
  m.def("load_keyword_file", &load_keyword_file, py::arg("path"));
  m.def(
      "resolve_topics",
      [](const std::vector<KeywordSet>& sets, const std::string& mapping) {
        auto topics = resolve_topics(sets, mapping == "literal"
                                               ? TopicMapping::Literal
                                               : TopicMapping::Union);
        return std::vector<KeywordSet>(topics.begin(), topics.end());
      },
      py::arg("sets"), py::arg("mapping") = "union");
  m.def("topic_hit_rate", &topic_hit_rate, py::arg("doc"), py::arg("set"));
  m.def(
      "filled_pause_features",
      [](const TokenizedDoc& doc, const std::vector<size_t>& chat_indices) {
        return filled_pause_features(doc, chat_indices);
      },
      py::arg("doc"), py::arg("chat_filler_indices") = std::vector<size_t>{});
  m.def("tree_depth", &tree_depth, py::arg("tree"));
  m.def("avg_parse_depth", &avg_parse_depth, py::arg("trees"));
  m.def("word_error_rate", &word_error_rate, py::arg("reference_tokens"),
        py::arg("hypothesis_tokens"));
  m.def("feature_names", []() {
    return std::vector<std::string>(feature_names().begin(),
                                    feature_names().end());
  });

  py::class_<ForestConfig>(m, "ForestConfig")
      .def(py::init<>())
      .def_readwrite("n_trees", &ForestConfig::n_trees)
      .def_readwrite("max_features", &ForestConfig::max_features)
      .def_readwrite("min_samples_leaf", &ForestConfig::min_samples_leaf)
      .def_readwrite("max_depth", &ForestConfig::max_depth)
      .def_readwrite("bootstrap", &ForestConfig::bootstrap)
      .def_readwrite("seed", &ForestConfig::seed);

  py::class_<ForestModel>(m, "ForestModel")
      .def_readonly("feature_names", &ForestModel::feature_names)
      .def_readonly("importance", &ForestModel::importance)
      .def("to_json", &ForestModel::to_json)
      .def_static("from_json", &ForestModel::from_json, py::arg("text"))
      .def("save", &ForestModel::save, py::arg("path"))
      .def_static("load", &ForestModel::load, py::arg("path"));

  m.def(
      "train_forest",
      [](const Matrix& X, const std::vector<std::string>& y,
         const ForestConfig& config,
         const std::vector<std::string>& feature_names, int n_threads) {
        return train_forest(X, labels_arg(y), config, feature_names,
                            n_threads);
      },
      py::arg("X"), py::arg("y"), py::arg("config") = ForestConfig{},
      py::arg("feature_names") = std::vector<std::string>{},
      py::arg("n_threads") = 1);
  m.def(
      "predict",
      [](const ForestModel& model, const std::vector<double>& x) {
        Prediction p = predict(model, x);
        return py::make_tuple(label_to_string(p.label), p.probability_ad);
      },
      py::arg("model"), py::arg("x"),
      "Returns (label, probability_of_AD).");
  m.def(
      "evaluate",
      [](const ForestModel& model, const Matrix& X,
         const std::vector<std::string>& y) {
        return report_dict(evaluate(model, X, labels_arg(y)));
      },
      py::arg("model"), py::arg("X"), py::arg("y"));
  m.def(
      "anova_f",
      [](const Matrix& X, const std::vector<std::string>& y) {
        return anova_f(X, labels_arg(y));
      },
      py::arg("X"), py::arg("y"));
  m.def(
      "ablation_sweep",
      [](const Matrix& X_train, const std::vector<std::string>& y_train,
         const Matrix& X_test, const std::vector<std::string>& y_test,
         const ForestConfig& config) {
        auto curve =
            ablation_sweep(X_train, labels_arg(y_train), X_test,
                           labels_arg(y_test), config);
        py::list out;
        for (const auto& p : curve)
          out.append(py::make_tuple(p.n_features, p.added_feature,
                                    p.accuracy));
        return out;
      },
      py::arg("X_train"), py::arg("y_train"), py::arg("X_test"),
      py::arg("y_test"), py::arg("config") = ForestConfig{});

  m.attr("__version__") = "0.1.0";
}
