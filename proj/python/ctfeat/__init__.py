"""Explainable Cookie Theft picture-description features.

Thin re-export of the compiled _core module.
"""

from ._core import (  # noqa: F401
    ForestConfig,
    ForestModel,
    KeywordSet,
    ReferenceSet,
    TfIdfModel,
    TokenizedDoc,
    Transcript,
    __version__,
    ablation_sweep,
    anova_f,
    avg_parse_depth,
    bleu_n,
    evaluate,
    feature_names,
    filled_pause_features,
    fit_tfidf,
    load_keyword_file,
    make_doc,
    meteor,
    ngrams,
    parse_chat,
    parse_plain,
    porter_stem,
    predict,
    resolve_topics,
    score_against_references,
    similarity_features,
    term_frequency,
    tfidf_keyword_hit_rate,
    tokenize,
    topic_hit_rate,
    train_forest,
    tree_depth,
    word_error_rate,
)
