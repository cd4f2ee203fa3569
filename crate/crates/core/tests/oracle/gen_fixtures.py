#!/usr/bin/env python3
"""Regenerates the frozen oracle fixtures under ../fixtures.

Run once with the reference tools installed:

    pip install sacrebleu==2.6.0 readability==0.3.2 textstat==0.7.13 \
        krippendorff==0.8.2 scikit-learn numpy
    python gen_fixtures.py

Nothing here imports or shells out to the Rust code. Each block uses an
established third-party implementation (or, for SARI, a line-by-line
transcription of the original reference script) so the Rust tests compare
against an independent route.
"""

import json
import math
import os
import random
import re
import statistics
from collections import Counter

import krippendorff
import numpy as np
import textstat
from readability.langdata import countsyllables_en
from readability import getmeasures
from sacrebleu.tokenizers.tokenizer_13a import Tokenizer13a
from sklearn.metrics import f1_score

from texts import FKGL_TEXTS, PARAGRAPH

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "fixtures")
TOK = Tokenizer13a()
VOWELS = "aoeuiäàâáåãëéèêóòöôõðùúüìíïî" + "y"


def dump(name, obj):
    with open(os.path.join(OUT, name), "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=1, ensure_ascii=False)
        f.write("\n")


# ---------------------------------------------------------------- tokenizer
TOKENIZER_EXTRA = [
    "state-of-the-art",
    "He said, \"It's 3.14, not 3,14.\"",
    "Prices rose 5-10% in 2020-2021 (roughly).",
    "e.g. this; that: those [here] {there} <tag> a|b ~c `d` ^e_f",
    "Mr. Smith paid $1,000.50 & left at 5 p.m.!",
    "Ends with dots...",
    "&quot;quoted&quot; &amp; &lt;b&gt;",
    "don't won't can't I'm you're",
    "   leading and trailing   ",
    "",
]


def gen_tokenizer():
    sents = FKGL_TEXTS[:40] + TOKENIZER_EXTRA
    assert len(sents) == 50
    dump("tokenize_13a.json", [{"text": s, "tokens": TOK(s).split()} for s in sents])


# ---------------------------------------------------------------- syllables
def oracle_syllables(word):
    """Reference counter, lower-cased and floored at one syllable."""
    return max(1, countsyllables_en(word.lower()))


def gen_syllables():
    path = os.path.join(os.path.dirname(textstat.__file__), "resources", "en", "easy_words.txt")
    with open(path, encoding="utf-8") as f:
        words = sorted({w.strip().lower() for w in f if w.strip().isalpha()})
    rng = random.Random(20240501)
    sample = rng.sample(words, 870)
    # Longer words the easy-word list under-represents.
    for t in FKGL_TEXTS:
        for w in re.findall(r"[A-Za-z]+", t):
            if len(w) >= 8:
                sample.append(w.lower())
    sample = list(dict.fromkeys(sample))[:1000]
    assert len(sample) == 1000, len(sample)
    dump("syllables_lexicon.json", [{"word": w, "syllables": oracle_syllables(w)} for w in sample])


# ---------------------------------------------------------------- FKGL
def adapted_syllables(token):
    """Reference counter with the three normalisations the library applies:
    case folding, a floor of one syllable (and a ceiling of the token length),
    and keeping the final 'e' of consonant + 'le' endings."""
    w = token.lower()
    if not any(c.isalpha() for c in w):
        return 1
    if len(w) >= 3 and w.endswith("le") and w[-3].isalpha() and w[-3] not in VOWELS:
        # countsyllables_en strips exactly one final 'e'; feed it one extra.
        n = countsyllables_en(w + "e")
    else:
        n = countsyllables_en(w)
    return max(1, min(len(w), n))


def oracle_fkgl(text):
    sentences = [s for s in re.split(r"(?<=[.!?])\s+", text.strip()) if s]
    lines = "\n".join(TOK(s) for s in sentences)
    # getmeasures' own counter has no case folding or floor; count the same
    # word set (non-punctuation tokens) through the adapter.
    m = getmeasures(lines, lang="en")
    info = m["sentence info"]
    punct = re.compile("^[%s]+$" % re.escape("!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~"))
    words = [t for t in lines.split() if not punct.match(t)]
    syll = sum(adapted_syllables(w) for w in words)
    assert info["words"] == len(words)
    assert info["sentences"] == len(sentences)
    grade = 0.39 * (info["words"] / info["sentences"]) + 11.8 * (syll / info["words"]) - 15.59
    return {
        "text": text,
        "words": info["words"],
        "sentences": info["sentences"],
        "syllables": syll,
        "fkgl": grade,
        "fkgl_2dp": math.floor(grade * 100 + 0.5 + 1e-9) / 100,
    }


def gen_fkgl():
    assert len(FKGL_TEXTS) == 100
    rows = [oracle_fkgl(t) for t in FKGL_TEXTS]
    tw = sum(r["words"] for r in rows)
    ts = sum(r["sentences"] for r in rows)
    ty = sum(r["syllables"] for r in rows)
    corpus = 0.39 * tw / ts + 11.8 * ty / tw - 15.59
    dump("fkgl_texts.json", {"texts": rows, "corpus_fkgl": corpus})
    dump(
        "paragraph_sentences.json",
        {"text": PARAGRAPH, "sentence_count": textstat.sentence_count(PARAGRAPH)},
    )


# ---------------------------------------------------------------- SARI
# Transcription of SARIngram / SARIsent from the original SARI.py released
# with the metric (deletion scored by precision, 0/0 -> 0), applied after
# lower-casing and 13a tokenisation as the evaluation toolkit does.
def sari_ngram(sgrams, cgrams, rgramslist, numref):
    rgramsall = [rgram for rgrams in rgramslist for rgram in rgrams]
    rgramcounter = Counter(rgramsall)

    sgramcounter = Counter(sgrams)
    sgramcounter_rep = Counter()
    for sgram, scount in sgramcounter.items():
        sgramcounter_rep[sgram] = scount * numref

    cgramcounter = Counter(cgrams)
    cgramcounter_rep = Counter()
    for cgram, ccount in cgramcounter.items():
        cgramcounter_rep[cgram] = ccount * numref

    # KEEP
    keepgramcounter_rep = sgramcounter_rep & cgramcounter_rep
    keepgramcountergood_rep = keepgramcounter_rep & rgramcounter
    keepgramcounterall_rep = sgramcounter_rep & rgramcounter

    keeptmpscore1 = 0
    keeptmpscore2 = 0
    for keepgram in keepgramcountergood_rep:
        keeptmpscore1 += keepgramcountergood_rep[keepgram] / keepgramcounter_rep[keepgram]
        keeptmpscore2 += keepgramcountergood_rep[keepgram] / keepgramcounterall_rep[keepgram]
    keepscore_precision = 0
    if len(keepgramcounter_rep) > 0:
        keepscore_precision = keeptmpscore1 / len(keepgramcounter_rep)
    keepscore_recall = 0
    if len(keepgramcounterall_rep) > 0:
        keepscore_recall = keeptmpscore2 / len(keepgramcounterall_rep)
    keepscore = 0
    if keepscore_precision > 0 or keepscore_recall > 0:
        keepscore = 2 * keepscore_precision * keepscore_recall / (keepscore_precision + keepscore_recall)

    # DELETION
    delgramcounter_rep = sgramcounter_rep - cgramcounter_rep
    delgramcountergood_rep = delgramcounter_rep - rgramcounter
    delgramcounterall_rep = sgramcounter_rep - rgramcounter
    deltmpscore1 = 0
    for delgram in delgramcountergood_rep:
        deltmpscore1 += delgramcountergood_rep[delgram] / delgramcounter_rep[delgram]
    delscore_precision = 0
    if len(delgramcounter_rep) > 0:
        delscore_precision = deltmpscore1 / len(delgramcounter_rep)

    # ADDITION
    addgramcounter = set(cgramcounter) - set(sgramcounter)
    addgramcountergood = set(addgramcounter) & set(rgramcounter)
    addgramcounterall = set(rgramcounter) - set(sgramcounter)

    addtmpscore = 0
    for addgram in addgramcountergood:
        addtmpscore += 1

    addscore_precision = 0
    addscore_recall = 0
    if len(addgramcounter) > 0:
        addscore_precision = addtmpscore / len(addgramcounter)
    if len(addgramcounterall) > 0:
        addscore_recall = addtmpscore / len(addgramcounterall)
    addscore = 0
    if addscore_precision > 0 or addscore_recall > 0:
        addscore = 2 * addscore_precision * addscore_recall / (addscore_precision + addscore_recall)

    return keepscore, delscore_precision, addscore


def grams(tokens, n):
    return [" ".join(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def sari_sent(ssent, csent, rsents):
    numref = len(rsents)
    s1 = ssent.lower().split(" ")
    c1 = csent.lower().split(" ")
    r1 = [r.lower().split(" ") for r in rsents]
    keeps, dels, adds = [], [], []
    for n in range(1, 5):
        k, d, a = sari_ngram(grams(s1, n), grams(c1, n), [grams(r, n) for r in r1], numref)
        keeps.append(k)
        dels.append(d)
        adds.append(a)
    avgkeep = sum(keeps) / 4
    avgdel = sum(dels) / 4
    avgadd = sum(adds) / 4
    return {
        "sari": 100 * (avgkeep + avgdel + avgadd) / 3,
        "add": 100 * avgadd,
        "keep": 100 * avgkeep,
        "del": 100 * avgdel,
        "add_n": [100 * x for x in adds],
        "keep_n": [100 * x for x in keeps],
        "del_n": [100 * x for x in dels],
    }


def normalize(s):
    return TOK(s.lower())


SARI_TRIPLES = [
    # identity
    ("About 95 species are currently accepted.", "About 95 species are currently accepted.",
     ["About 95 species are currently accepted."]),
    ("The cat sat on the mat.", "The cat sat on the mat.",
     ["The cat sat on the mat.", "A cat sat on a mat."]),
    # deletion only
    ("The quick brown fox jumps over the lazy dog near the river.", "The fox jumps over the dog.",
     ["The fox jumps over the dog.", "A fox jumps over a lazy dog.", "The brown fox jumps over the dog near the river."]),
    ("In 1990, after years of planning, the city finally opened its first public library.",
     "The city opened its first public library.",
     ["In 1990, the city opened its first library.", "The city opened its first public library in 1990."]),
    ("Marcel Duchamp was a French-American painter, sculptor, chess player and writer.",
     "Marcel Duchamp was a painter.",
     ["Marcel Duchamp was a French-American artist.", "Marcel Duchamp was a painter, sculptor and writer."]),
    ("The committee, which met on Tuesday, approved the new budget.", "",
     ["The committee approved the new budget."]),
    # addition only
    ("He left.", "He left the room quietly.", ["He left the room.", "He went away quietly."]),
    ("The weather is nice.", "The weather is nice and the sun is shining brightly today.",
     ["The weather is nice and sunny.", "The weather is very nice today."]),
    ("Cats sleep.", "Cats sleep a lot during the day.", ["Cats sleep for many hours.", "Cats sleep a lot."]),
    # repetition
    ("The state capital is Aracaju.",
     "the capital of the state is the capital of the state of the state of",
     ["The capital of the state is Aracaju.", "Aracaju is the state capital."]),
    ("The state capital is Aracaju.",
     "the capital of the state is Aracaju, the capital of the state is the capital of the state of the state of",
     ["The capital of the state is Aracaju.", "Aracaju is the capital city of the state."]),
    ("The dog ran.", "the dog the dog the dog the dog ran ran ran",
     ["The dog ran quickly.", "The dog was running."]),
    # mixed paraphrase
    ("Jeddah is the principal gateway to Mecca, Islam's holiest city, which able-bodied Muslims are required to visit at least once in their lifetime.",
     "Jeddah is the main gateway to Mecca, the holiest city of Islam, where Muslims must go at least once in their life.",
     ["Jeddah is the main entrance to Mecca, Islam's holiest city.",
      "Jeddah is the gateway to Mecca, which Muslims must visit at least once in their life.",
      "Jeddah is the main way to get to Mecca, the holiest city in Islam.",
      "Muslims who are able must visit Mecca, which can be reached through Jeddah, at least once.",
      "Jeddah is the main gateway to Mecca. Mecca is Islam's holiest city."]),
    ("The pharmacist dispensed the medication with meticulous attention to the prescribed dosage.",
     "The pharmacist gave out the medicine carefully.",
     ["The pharmacist gave the medicine carefully.", "The pharmacist carefully gave the right amount of medicine."]),
    ("She is happy.", "She feels very happy and content with her life.",
     ["She is very happy.", "She feels happy."]),
    ("Economic growth slowed significantly in the third quarter.",
     "The economy grew more slowly in the third quarter.",
     ["The economy grew slowly in the third quarter.", "Growth slowed a lot in the third quarter."]),
    ("He didn't go to school because he was sick.", "Because he was ill, he did not attend school.",
     ["He did not go to school because he was ill."]),
    # output shares nothing with source or references
    ("The meeting was postponed.", "Bananas are yellow.", ["The meeting was delayed.", "They moved the meeting."]),
    # punctuation-only and casing differences
    ("The Results Were Clear!", "the results were clear .", ["The results were clear."]),
    # ten references, ASSET style
    ("The bridge, completed in 1932, spans the river at its widest point.",
     "The bridge was finished in 1932. It crosses the widest part of the river.",
     ["The bridge was completed in 1932.",
      "The bridge was finished in 1932 and crosses the river at its widest point.",
      "The bridge spans the river at its widest point.",
      "Completed in 1932, the bridge crosses the river where it is widest.",
      "The bridge was built in 1932. It goes over the widest part of the river.",
      "The bridge crosses the river at its widest point.",
      "In 1932 the bridge was completed. It spans the river.",
      "The 1932 bridge crosses the widest part of the river.",
      "The bridge was completed in 1932 and spans the widest point of the river.",
      "The bridge goes across the river at its widest point."]),
]


def gen_sari():
    assert len(SARI_TRIPLES) == 20
    rows = []
    for src, out, refs in SARI_TRIPLES:
        r = sari_sent(normalize(src), normalize(out), [normalize(x) for x in refs])
        r.update({"source": src, "output": out, "references": refs})
        rows.append(r)
    dump("sari_triples.json", {"triples": rows, "corpus_sari": statistics.fmean(r["sari"] for r in rows)})


# ---------------------------------------------------------------- agreement
NAN = float("nan")
KRIPP_MATRICES = {
    "two_raters_four_items": [[1, 2, 3, 3], [1, 2, 3, 1]],
    # Four observers, twelve units, with missing cells.
    "four_raters_twelve_items": [
        [1, 2, 3, 3, 2, 1, 4, 1, 2, NAN, NAN, NAN],
        [1, 2, 3, 3, 2, 2, 4, 1, 2, 5, NAN, 3],
        [NAN, 3, 3, 3, 2, 3, 4, 2, 2, 5, 1, NAN],
        [1, 2, 3, 3, 2, 4, 4, 1, 2, 5, 1, NAN],
    ],
    "likert_three_raters": [
        [5, 4, 4, 3, 5, 2, 1, 4, 3, 5],
        [4, 4, 5, 3, 5, 3, 2, 4, 2, 5],
        [5, 3, 4, 2, 4, 2, 1, 5, 3, 4],
    ],
}


def gen_kripp():
    out = {}
    for name, m in KRIPP_MATRICES.items():
        arr = np.array(m, dtype=float)
        out[name] = {
            "matrix": [[None if math.isnan(v) else int(v) for v in row] for row in m],
            "nominal": krippendorff.alpha(reliability_data=arr, level_of_measurement="nominal"),
            "ordinal": krippendorff.alpha(reliability_data=arr, level_of_measurement="ordinal"),
            "interval": krippendorff.alpha(reliability_data=arr, level_of_measurement="interval"),
        }
    dump("krippendorff.json", out)


CEFR = ["A1", "A2", "B1", "B2", "C1", "C2"]


def gen_classifier():
    gold = ["A1", "A1", "A2", "A2", "B1", "B1", "B2", "C1", "C1", "C2"]
    pred = ["A1", "A2", "A2", "B1", "B1", "B1", "C1", "C1", "B2", "C1"]
    rng = random.Random(7)
    g2, p2 = [], []
    for _ in range(200):
        g = rng.randrange(6)
        p = min(5, max(0, g + rng.choice([-2, -1, 0, 0, 0, 1, 1, 2])))
        g2.append(CEFR[g])
        p2.append(CEFR[p])

    def three(xs):
        return [x[0] for x in xs]

    def report(g, p):
        gi = [CEFR.index(x) for x in g]
        pi = [CEFR.index(x) for x in p]
        return {
            "gold": g,
            "pred": p,
            "f1_6": 100 * f1_score(g, p, average="weighted"),
            "f1_3": 100 * f1_score(three(g), three(p), average="weighted"),
            "adjacent_accuracy": sum(abs(a - b) <= 1 for a, b in zip(gi, pi)) / len(gi),
            "mae": sum(abs(a - b) for a, b in zip(gi, pi)) / len(gi),
        }

    dump("classifier.json", {"handcrafted": report(gold, pred), "heldout": report(g2, p2)})


def gen_likert():
    # (group, item) -> ratings of three raters
    data = {
        "T5-CEFR|simplification|meaning": [[5, 4, 5], [4, 4, 4], [3, 4, 3], [5, 5, 4], [2, 3, 3], [4, 5, 5]],
        "MUSS|simplification|meaning": [[3, 3, 4], [2, 3, 2], [4, 4, 4], [3, 2, 3], [5, 4, 4], [1, 2, 2]],
    }
    out = {}
    for group, items in data.items():
        means = [statistics.fmean(r) for r in items]
        m = statistics.fmean(means)
        sd = statistics.stdev(means)
        half = 1.96 * sd / math.sqrt(len(means))
        arr = np.array(items, dtype=float).T
        out[group] = {
            "ratings": items,
            "mean": m,
            "ci_half_width": half,
            "ordinal_alpha": krippendorff.alpha(reliability_data=arr, level_of_measurement="ordinal"),
        }
    dump("likert.json", out)


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    gen_tokenizer()
    gen_syllables()
    gen_fkgl()
    gen_sari()
    gen_kripp()
    gen_classifier()
    gen_likert()
