#!/usr/bin/env python3
"""Generate tests/data/porter_fixture.csv.

Independent transcription of the 1980 suffix-stripping algorithm used as
the oracle for the C++ stemmer. The transcription is validated against the
algorithm definition's published example pairs (per step and full words)
before any fixture line is written, so a transcription bug fails loudly
here instead of freezing bad expectations.
"""

import sys

VOWELS = "aeiou"


def is_cons(w, i):
    c = w[i]
    if c in VOWELS:
        return False
    if c == "y":
        return True if i == 0 else not is_cons(w, i - 1)
    return True


def measure(w):
    m = 0
    prev_vowel = False
    for i in range(len(w)):
        cons = is_cons(w, i)
        if prev_vowel and cons:
            m += 1
        prev_vowel = not cons
    return m


def contains_vowel(w):
    return any(not is_cons(w, i) for i in range(len(w)))


def ends_double_cons(w):
    return len(w) >= 2 and w[-1] == w[-2] and is_cons(w, len(w) - 1)


def ends_cvc(w):
    if len(w) < 3:
        return False
    if not is_cons(w, len(w) - 3) or is_cons(w, len(w) - 2) or not is_cons(w, len(w) - 1):
        return False
    return w[-1] not in "wxy"


def longest_rule(w, rules):
    best = None
    for suffix, repl, min_m in rules:
        if w.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, repl, min_m)
    return best


def apply_rules(w, rules):
    best = longest_rule(w, rules)
    if best is None:
        return w
    suffix, repl, min_m = best
    stem = w[: len(w) - len(suffix)]
    if min_m is None or measure(stem) > min_m:
        return stem + repl
    return w


def step1a(w):
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def step1b(w):
    if w.endswith("eed"):
        stem = w[:-3]
        return stem + "ee" if measure(stem) > 0 else w
    stripped = None
    if w.endswith("ing") and contains_vowel(w[:-3]):
        stripped = w[:-3]
    elif w.endswith("ed") and not w.endswith("eed") and contains_vowel(w[:-2]):
        stripped = w[:-2]
    if stripped is None:
        return w
    w = stripped
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if ends_double_cons(w) and w[-1] not in "lsz":
        return w[:-1]
    if measure(w) == 1 and ends_cvc(w):
        return w + "e"
    return w


def step1c(w):
    if w.endswith("y") and contains_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


STEP2 = [
    ("ational", "ate", 0), ("tional", "tion", 0), ("enci", "ence", 0),
    ("anci", "ance", 0), ("izer", "ize", 0), ("abli", "able", 0),
    ("alli", "al", 0), ("entli", "ent", 0), ("eli", "e", 0),
    ("ousli", "ous", 0), ("ization", "ize", 0), ("ation", "ate", 0),
    ("ator", "ate", 0), ("alism", "al", 0), ("iveness", "ive", 0),
    ("fulness", "ful", 0), ("ousness", "ous", 0), ("aliti", "al", 0),
    ("iviti", "ive", 0), ("biliti", "ble", 0),
]

STEP3 = [
    ("icate", "ic", 0), ("ative", "", 0), ("alize", "al", 0),
    ("iciti", "ic", 0), ("ical", "ic", 0), ("ful", "", 0), ("ness", "", 0),
]

STEP4_PLAIN = [
    ("al", "", 1), ("ance", "", 1), ("ence", "", 1), ("er", "", 1),
    ("ic", "", 1), ("able", "", 1), ("ible", "", 1), ("ant", "", 1),
    ("ement", "", 1), ("ment", "", 1), ("ent", "", 1), ("ou", "", 1),
    ("ism", "", 1), ("ate", "", 1), ("iti", "", 1), ("ous", "", 1),
    ("ive", "", 1), ("ize", "", 1),
]


def step4(w):
    if w.endswith("ion") and longest_rule(w, STEP4_PLAIN) is None:
        stem = w[:-3]
        if stem and stem[-1] in "st" and measure(stem) > 1:
            return stem
        return w
    return apply_rules(w, STEP4_PLAIN)


def step5a(w):
    if not w.endswith("e"):
        return w
    stem = w[:-1]
    m = measure(stem)
    if m > 1 or (m == 1 and not ends_cvc(stem)):
        return stem
    return w


def step5b(w):
    if len(w) >= 2 and w[-1] == "l" and ends_double_cons(w) and measure(w) > 1:
        return w[:-1]
    return w


def porter(word):
    if len(word) < 3 or not word.isalpha() or not word.islower():
        return word
    w = step1a(word)
    w = step1b(w)
    w = step1c(w)
    w = apply_rules(w, STEP2)
    w = apply_rules(w, STEP3)
    w = step4(w)
    w = step5a(w)
    w = step5b(w)
    return w


def self_check():
    # Per-step example pairs from the algorithm definition.
    per_step = [
        (step1a, "caresses", "caress"), (step1a, "ponies", "poni"),
        (step1a, "ties", "ti"), (step1a, "caress", "caress"),
        (step1a, "cats", "cat"),
        (step1b, "feed", "feed"), (step1b, "agreed", "agree"),
        (step1b, "plastered", "plaster"), (step1b, "bled", "bled"),
        (step1b, "motoring", "motor"), (step1b, "sing", "sing"),
        (step1b, "conflated", "conflate"), (step1b, "troubled", "trouble"),
        (step1b, "sized", "size"), (step1b, "hopping", "hop"),
        (step1b, "tanned", "tan"), (step1b, "falling", "fall"),
        (step1b, "hissing", "hiss"), (step1b, "fizzed", "fizz"),
        (step1b, "failing", "fail"), (step1b, "filing", "file"),
        (step1c, "happy", "happi"), (step1c, "sky", "sky"),
    ]
    for fn, src, want in per_step:
        got = fn(src)
        assert got == want, f"{fn.__name__}({src}) = {got}, want {want}"

    step2_pairs = [
        ("relational", "relate"), ("conditional", "condition"),
        ("rational", "rational"), ("valenci", "valence"),
        ("hesitanci", "hesitance"), ("digitizer", "digitize"),
        ("conformabli", "conformable"), ("radicalli", "radical"),
        ("differentli", "different"), ("vileli", "vile"),
        ("analogousli", "analogous"), ("vietnamization", "vietnamize"),
        ("predication", "predicate"), ("operator", "operate"),
        ("feudalism", "feudal"), ("decisiveness", "decisive"),
        ("hopefulness", "hopeful"), ("callousness", "callous"),
        ("formaliti", "formal"), ("sensitiviti", "sensitive"),
        ("sensibiliti", "sensible"),
    ]
    for src, want in step2_pairs:
        got = apply_rules(src, STEP2)
        assert got == want, f"step2({src}) = {got}, want {want}"

    step3_pairs = [
        ("triplicate", "triplic"), ("formative", "form"),
        ("formalize", "formal"), ("electriciti", "electric"),
        ("electrical", "electric"), ("hopeful", "hope"),
        ("goodness", "good"),
    ]
    for src, want in step3_pairs:
        got = apply_rules(src, STEP3)
        assert got == want, f"step3({src}) = {got}, want {want}"

    step4_pairs = [
        ("revival", "reviv"), ("allowance", "allow"),
        ("inference", "infer"), ("airliner", "airlin"),
        ("gyroscopic", "gyroscop"), ("adjustable", "adjust"),
        ("defensible", "defens"), ("irritant", "irrit"),
        ("replacement", "replac"), ("adjustment", "adjust"),
        ("dependent", "depend"), ("adoption", "adopt"),
        ("homologou", "homolog"), ("communism", "commun"),
        ("activate", "activ"), ("angulariti", "angular"),
        ("homologi", "homologi"), ("effective", "effect"),
        ("bowdlerize", "bowdler"),
    ]
    for src, want in step4_pairs:
        got = step4(src)
        assert got == want, f"step4({src}) = {got}, want {want}"

    step5_pairs = [
        (step5a, "probate", "probat"), (step5a, "rate", "rate"),
        (step5a, "cease", "ceas"),
        (step5b, "controll", "control"), (step5b, "roll", "roll"),
    ]
    for fn, src, want in step5_pairs:
        got = fn(src)
        assert got == want, f"{fn.__name__}({src}) = {got}, want {want}"

    # Full-algorithm anchors from the definition's worked examples.
    full_pairs = [
        ("generalizations", "gener"), ("oscillators", "oscil"),
        ("caresses", "caress"), ("reaching", "reach"), ("a", "a"),
    ]
    for src, want in full_pairs:
        got = porter(src)
        assert got == want, f"porter({src}) = {got}, want {want}"


WORDS = """
a the boy girl mother cookie cookies jar jars stool stools reaching reached
reaches wash washes washing washed dish dishes sink sinks overflow overflows
overflowing overflowed water window windows curtain curtains tree trees
kitchen floor standing stands stood tipping tipped tips falling fell laugh
laughing laughed smile smiling smiled busy turning turned dried drying
worried worrying grab grabbing grabbed light lights counter cupboard
cupboards description descriptions describe describing described assessment
assessments cognitive impairment impairments classifier classifiers
classification classifications feature features engineering engineered
similarity similarities frequency frequencies inverse document documents
term terms weight weights vector vectors reference references golden
standard standards keyword keywords generation generated generating
iteration iterations aggregate aggregated aggregation manually manual
checking checked hallucination hallucinations trackable explanation
explanations explainable interpretability interpretable effective
effectiveness efficiency efficient dimension dimensions dimensional
experiment experiments experimental result results consistently outperform
outperforms outperformed traditional linguistic linguistics language
languages spoken speaking speech detection detecting detected screening
screened alzheimer disease diseases healthy control controls patient
patients subject subjects transcript transcripts transcription
transcriptions audio acoustic acoustics model models modeling modeled
training trained tested testing accuracy precision recall score scores
scoring importance important ranking ranked ranks ablation study studies
studied incremental incrementally added adding addition additions optimal
optimality optimize optimized optimization hyperparameter hyperparameters
bayesian forest forests tree decision decisions random randomly randomized
gradient boosting boosted classify classified classifies pause pauses
paused pausing filled filler fillers ratio ratios error errors rate rates
word words token tokens tokenize tokenized tokenizing stem stems stemming
stemmed alignment alignments align aligned aligning chunk chunks penalty
penalties precision recalls harmonic mean means averaged averaging
arithmetic geometric brevity candidate candidates hypothesis hypotheses
dynamic programming insertion insertions deletion deletions substitution
substitutions minimum minimal edit edits distance distances parse parsing
parsed parser parsers depth depths bracket brackets bracketed constituency
utterance utterances participant participants investigator investigators
tier tiers annotation annotations normalize normalized normalization
vocabulary vocabularies unique cosine similarity measure measures measured
measuring natural logarithm logarithms smoothing smoothed topic topics
segment segments segmented segmentation picture pictures visual visually
multimodal prompt prompts prompted prompting response responses instruction
instructions generate generates comprehensive comprehensively coverage
covered covering quantify quantified quantifies degree degrees detail
details detailed connection connections global local locally evaluate
evaluated evaluates evaluation evaluating metric metrics quantitative
qualitative analysis analyses analyzed analyzing observe observed
observation observations certain key overlooked various reason reasons
appropriate select selected selecting selection divided dividing mentioned
mentioning total number numbers relative relatively plays playing played
ran running runs easily easier easiest happily happiness conformity
conditional rationalize rationalized sensational sensationally
troubleshooting troubleshooter misunderstanding misunderstandings
"""


def main():
    self_check()
    words = sorted(set(WORDS.split()))
    out_lines = ["token,stem"]
    for w in words:
        out_lines.append(f"{w},{porter(w)}")
    path = sys.argv[1] if len(sys.argv) > 1 else "tests/data/porter_fixture.csv"
    with open(path, "w") as f:
        f.write("\n".join(out_lines) + "\n")
    print(f"wrote {len(words)} fixture rows to {path}")


if __name__ == "__main__":
    main()
