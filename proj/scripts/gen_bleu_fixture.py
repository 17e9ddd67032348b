#!/usr/bin/env python3
"""Generate tests/data/bleu_fixture.csv.

Independent sentence-BLEU oracle: modified (clipped) k-gram precisions,
uniform weights, brevity penalty exp(1 - r/c) when c <= r, no smoothing.
Hand-computable anchors are asserted before writing; every emitted case is
checked to have nonzero precision at all orders so the frozen values are
valid with smoothing disabled.
"""

import math
import sys
from collections import Counter
from fractions import Fraction


def ngram_counts(tokens, n):
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def precision(candidate, reference, k):
    cand = ngram_counts(candidate, k)
    ref = ngram_counts(reference, k)
    matched = sum(min(c, ref[g]) for g, c in cand.items())
    total = max(1, len(candidate) - k + 1)
    return Fraction(matched, total)


def bleu(candidate, reference, n):
    c, r = len(candidate), len(reference)
    if c == 0:
        return 0.0
    log_sum = 0.0
    for k in range(1, n + 1):
        p = precision(candidate, reference, k)
        if p == 0:
            return 0.0
        log_sum += math.log(float(p))
    bp = 1.0 if c > r else math.exp(1.0 - r / c)
    return bp * math.exp(log_sum / n)


def self_check():
    # identity scores 1.0 at every order
    sent = "the boy is reaching for the cookie jar".split()
    for n in range(1, 5):
        assert bleu(sent, sent, n) == 1.0
    # clipped repetition: p1 = 1/3, candidate longer so BP = 1
    got = bleu("the the the".split(), "the boy".split(), 1)
    assert abs(got - 1.0 / 3.0) < 1e-15, got
    # plain unigram case: 2 of 3 match, equal lengths
    got = bleu("a b c".split(), "a b d".split(), 1)
    assert abs(got - 2.0 / 3.0) < 1e-15, got
    # brevity penalty: candidate 2, reference 4, perfect overlap
    got = bleu("a b".split(), "a b c d".split(), 1)
    assert abs(got - math.exp(1.0 - 2.0)) < 1e-15, got
    # disjoint -> 0
    assert bleu("a b".split(), "c d".split(), 1) == 0.0


CASES = [
    ("the boy is reaching for the cookie jar", "the boy is reaching for the cookie jar", 4),
    ("the boy is reaching for the cookie jar", "the boy is reaching for the cookie jar", 3),
    ("the boy is reaching for the cookie jar on the stool", "the boy is reaching for the cookie jar", 4),
    ("the boy is reaching for the cookie jar", "a boy is reaching for the cookie jar on a stool", 4),
    ("the mother is washing dishes at the sink", "the mother is washing dishes at the kitchen sink", 4),
    ("the mother is washing dishes at the sink", "mother is washing the dishes at the sink", 3),
    ("water is overflowing onto the kitchen floor", "the water is overflowing onto the floor", 2),
    ("water is overflowing onto the kitchen floor", "the water is overflowing onto the kitchen floor", 4),
    ("the girl is laughing at the boy", "the girl is laughing at her brother", 2),
    ("the girl is laughing at the boy", "the girl is laughing at the boy and smiling", 4),
    ("the stool is tipping over and the boy will fall", "the stool is tipping over", 4),
    ("the stool is tipping over", "the stool is tipping over and the boy will fall", 4),
    ("the the the", "the boy", 1),
    ("the boy the boy the boy", "the boy is here", 2),
    ("a b c d e", "a b c d e f g", 4),
    ("a b c d", "a b c d", 4),
    ("she is drying a plate by the window", "she is drying a plate near the window", 3),
    ("she is drying a plate by the window", "she is drying a dish by the window", 4),
    ("the curtains are open and you can see trees outside", "the curtains are open and there are trees outside", 2),
    ("the curtains are open and you can see the trees", "the curtains are open and you can see the garden", 4),
]


def main():
    self_check()
    rows = ["candidate|reference|n|expected"]
    for cand_text, ref_text, n in CASES:
        cand, ref = cand_text.split(), ref_text.split()
        for k in range(1, n + 1):
            p = precision(cand, ref, k)
            assert p > 0, f"zero p{k} for: {cand_text} / {ref_text}"
        rows.append(f"{cand_text}|{ref_text}|{n}|{bleu(cand, ref, n):.17g}")
    path = sys.argv[1] if len(sys.argv) > 1 else "tests/data/bleu_fixture.csv"
    with open(path, "w") as f:
        f.write("\n".join(rows) + "\n")
    print(f"wrote {len(CASES)} fixture rows to {path}")


if __name__ == "__main__":
    main()
