"""Smoke tests for the python bindings: every main operation is callable
and agrees with hand-checkable values."""

import math
import os

import pytest

import ctfeat


def test_tokenize_and_stem():
    assert ctfeat.tokenize("The boy, uh, is reaching.") == [
        "the", "boy", "uh", "is", "reaching",
    ]
    assert ctfeat.porter_stem("reaching") == "reach"
    assert ctfeat.porter_stem("caresses") == "caress"
    grams = ctfeat.ngrams(["a", "b", "a"], 1)
    assert grams[("a",)] == 2 and grams[("b",)] == 1


def test_parse_chat_and_plain():
    t = ctfeat.parse_chat("*PAR:\tthe boy is &-uh reaching .\n", "s1")
    assert t.utterances == ["the boy is uh reaching ."]
    assert list(t.fillers_marked) == [3]
    with pytest.raises(RuntimeError):
        ctfeat.parse_plain("", "s2")


def test_tfidf_round_trip():
    docs = [ctfeat.make_doc("d1", "a b"), ctfeat.make_doc("d2", "a c")]
    model = ctfeat.fit_tfidf(docs, ["HC", "AD"])
    assert model.vocab == ["a", "b", "c"]
    assert model.idf[0] == 0.0
    assert model.idf[1] == pytest.approx(math.log(2), abs=1e-15)
    sim_hc, sim_ad = ctfeat.similarity_features(docs[0], model)
    assert sim_hc == pytest.approx(1.0, abs=1e-12)
    assert sim_ad == 0.0
    loaded = ctfeat.TfIdfModel.from_json(model.to_json())
    assert loaded.vocab == model.vocab


def test_reference_scores():
    assert ctfeat.bleu_n(["the", "the", "the"], ["the", "boy"], 1) == \
        pytest.approx(1 / 3, abs=1e-12)
    assert ctfeat.meteor(ctfeat.make_doc("c", "boys"), ["boy"]) == \
        pytest.approx(0.5, abs=1e-12)
    refs = ctfeat.ReferenceSet.from_lines(["a b c d", "x y z w"], "t")
    scores = ctfeat.score_against_references(ctfeat.make_doc("c", "a b c d"), refs)
    assert scores["bleu1"] == pytest.approx(0.5, abs=1e-12)
    assert 0.0 <= scores["meteor"] <= 1.0


def test_task_features():
    data_dir = os.environ.get("CTFEAT_DATA_DIR")
    assert data_dir, "CTFEAT_DATA_DIR must point at the bundled data files"
    sets = ctfeat.load_keyword_file(os.path.join(data_dir, "keywords_default.json"))
    topics = ctfeat.resolve_topics(sets, "union")
    assert len(topics) == 3
    doc = ctfeat.make_doc("s", "the boy reached for the jar")
    rate = ctfeat.topic_hit_rate(doc, topics[0])
    assert rate == pytest.approx(3 / 12, abs=1e-12)

    assert ctfeat.word_error_rate(["the", "boy", "runs"], ["the", "girl"]) == \
        pytest.approx(2 / 3, abs=1e-15)
    assert ctfeat.avg_parse_depth(["(A x)", "(A (B x))"]) == pytest.approx(1.5)
    count, ratio = ctfeat.filled_pause_features(
        ctfeat.make_doc("s", "uh the um"), [])
    assert count == 2 and ratio == pytest.approx(2 / 3)
    assert len(ctfeat.feature_names()) == 15


def test_forest_and_anova():
    X = [[float(i)] for i in range(20)]
    y = ["HC" if i < 10 else "AD" for i in range(20)]
    cfg = ctfeat.ForestConfig()
    cfg.n_trees = 15
    cfg.seed = 3
    model = ctfeat.train_forest(X, y, cfg)
    report = ctfeat.evaluate(model, X, y)
    assert report["accuracy"] == 1.0
    label, prob = ctfeat.predict(model, [0.0])
    assert label == "HC" and prob <= 0.5

    f = ctfeat.anova_f([[1.0], [2.0], [3.0], [4.0]], ["HC", "HC", "AD", "AD"])
    assert f[0] == pytest.approx(8.0, abs=1e-9)

    again = ctfeat.train_forest(X, y, cfg)
    assert again.to_json() == model.to_json()

    curve = ctfeat.ablation_sweep(X, y, X, y, cfg)
    assert len(curve) == 1  # one feature column
    assert curve[0][2] == report["accuracy"]
