"""Acceptance checks, one per criterion.

Each check prints a single ``PASS``/``FAIL`` line.  Run directly for a summary:

    python tests/test_acceptance.py

or through pytest (``pytest tests/test_acceptance.py -s`` shows the lines).
"""

import datetime
import json
import os
import random
import sys
import time

import numpy as np

sys.path.insert(0, os.path.dirname(__file__))

from oracles import month_day_by_scan, recognize_oracle, weekday_by_scan  # noqa: E402
from test_recognizer import random_case  # noqa: E402
from timexlink import (RelationInstance, Span, TimexAnnotation, TimexType, annotate_document,  # noqa: E402
                       bundled_corpus, default_lexicon, make_document, score_documents)
from timexlink.cli import run  # noqa: E402
from timexlink.corpus import EventAnnotation  # noqa: E402
from timexlink.maxent import (TrainingConfig, design, gradient, objective, predict,  # noqa: E402
                              predict_distribution, train)
from timexlink.normalizer import (NormalizerConfig, UnanchorableError, normalize,  # noqa: E402
                                  resolve_month_day, resolve_weekday)
from timexlink.recognizer import compile_rules, recognize  # noqa: E402
from timexlink.relations import Task, build_training_set  # noqa: E402

ONE_DAY = datetime.timedelta(days=1)


def report(name, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return ok


# -- recognizer ----------------------------------------------------------------

def check_recognizer_oracle():
    rng = random.Random(2010)
    t0 = time.perf_counter()
    agree = 0
    for _ in range(1000):
        tokens, patterns = random_case(rng)
        rs = compile_rules((f"r{i}", p) for i, p in enumerate(patterns))
        d = make_document("d", "1997-06-12", [tokens])
        got = [(s.start, s.end) for s in recognize(d, rs)]
        agree += got == recognize_oracle(tokens, patterns)
    secs = time.perf_counter() - t0
    return report("recognizer oracle equivalence", agree == 1000 and secs < 30,
                  f"{agree}/1000 agree in {secs:.1f}s (need 1000, < 30s)")


def check_minicorpus():
    gold = bundled_corpus()
    pred = [annotate_document(d) for d in gold]
    rep = score_documents(gold, pred)
    n_sent = sum(len(d.sentences) for d in gold)
    f1, acc = rep["extent"]["f1"], rep["type_accuracy"]
    return report("bundled mini-corpus", n_sent >= 50 and f1 >= 0.80 and acc >= 0.90,
                  f"{n_sent} sentences, extent F1 {f1:.3f} (>= 0.80), type accuracy {acc:.3f} (>= 0.90)")


# -- normalizer ----------------------------------------------------------------

def check_baldwin():
    t0 = time.perf_counter()
    bad = total = 0
    d, end = datetime.date(1995, 1, 1), datetime.date(2004, 12, 31)
    while d <= end:
        for wd in range(7):
            total += 1
            bad += resolve_weekday(wd, d).to_date() != weekday_by_scan(wd, d)
        d += ONE_DAY
    secs = time.perf_counter() - t0
    return report("Baldwin window exhaustive", bad == 0 and secs < 10,
                  f"{bad} mismatches in {total} cases, {secs:.1f}s (need 0, < 10s)")


def check_f_rule(year=1996):
    """Every DCT in a leap year against every (month, day) that exists in it.

    The rule steps back exactly one year from the next occurrence, so Feb 29
    has no answer when that year is not a leap year; those cases must raise.
    """
    bad = total = errors = 0
    config = NormalizerConfig(f_days=14)
    dct = datetime.date(year, 1, 1)
    while dct.year == year:
        day = datetime.date(year, 1, 1)
        while day.year == year:
            total += 1
            m, d = day.month, day.day
            want = month_day_by_scan(m, d, dct, 14)
            next_year = dct.year if (m, d) >= (dct.month, dct.day) else dct.year + 1
            if want < dct and want.year != next_year - 1:
                want = None
            try:
                got = resolve_month_day(m, d, dct, config).to_date()
            except UnanchorableError:
                got = None
                errors += 1
            bad += got != want
            day += ONE_DAY
        dct += ONE_DAY
    return report("f-rule exhaustive", bad == 0,
                  f"{bad} mismatches in {total} cases over DCTs in {year} (need 0; "
                  f"{errors} Feb 29 cases correctly unanchorable)")


def _norm(text, phrase, dct="1997-06-12"):
    tokens = text.split()
    words = phrase.split()
    start = next(i for i in range(len(tokens)) if tokens[i:i + len(words)] == words)
    d = make_document("d", dct, [tokens])
    t = normalize(Span(0, start, start + len(words)), d)
    return t.ttype.value, t.value


def check_worked_examples():
    cases = [
        (("He said today", "today"), ("DATE", "PRESENT_REF")),
        (("profits fell for seven years", "seven years"), ("DURATION", "P7Y")),
        (("a month", "a month"), ("DURATION", "P1M")),
        (("it lasted a few weeks", "a few weeks"), ("DURATION", "PXW")),
        (("it lasted few years", "few years"), ("DURATION", "PXY")),
        (("Six months ago it rained", "Six months ago"), ("DATE", "1996-12")),
    ]
    wrong = [(args[1], got, want) for args, want in cases for got in [_norm(*args)] if got != want]
    return report("worked examples", not wrong,
                  f"{len(cases) - len(wrong)}/{len(cases)} correct" + (f"; wrong: {wrong}" if wrong else ""))


# -- maxent ----------------------------------------------------------------------

def _random_problem(rng):
    n_labels = int(rng.integers(2, 5))
    return [([(f"f{k}", f"v{int(rng.integers(0, 3))}") for k in range(int(rng.integers(1, 4)))],
             f"L{int(rng.integers(0, n_labels))}") for _ in range(int(rng.integers(3, 30)))]


def _fd_gradient(W, b, X, y, s2, h=1e-5):
    flat = np.concatenate([W.ravel(), b])
    out = np.zeros_like(flat)

    def f(v):
        return objective(v[:W.size].reshape(W.shape), v[W.size:], X, y, s2)
    for i in range(flat.size):
        e = np.zeros_like(flat)
        e[i] = h
        out[i] = (f(flat + e) - f(flat - e)) / (2 * h)
    return out


def check_maxent():
    rng = np.random.default_rng(42)
    worst_grad = 0.0
    for _ in range(20):
        X, y, feats, labels = design(_random_problem(rng))
        W = rng.normal(size=(len(feats), len(labels)))
        b = rng.normal(size=len(labels))
        gW, gb = gradient(W, b, X, y, 1.0)
        a, n = np.concatenate([gW.ravel(), gb]), _fd_gradient(W, b, X, y, 1.0)
        worst_grad = max(worst_grad, np.linalg.norm(a - n) / max(np.linalg.norm(a), np.linalg.norm(n)))

    monotone, worst_sum = True, 0.0
    for _ in range(20):
        data = _random_problem(rng)
        m = train(data)
        monotone &= bool(np.all(np.diff(m.history) >= 0))
        for vec, _ in data:
            worst_sum = max(worst_sum, abs(sum(predict_distribution(m, vec).values()) - 1.0))

    # the two-point problem at the default sigma2=1 optimizes to p ~ 0.66; 0.9 needs sigma2 > ~11
    two = [([("x", "a")], "L1"), ([("x", "b")], "L2")]
    m = train(two, TrainingConfig(l2_sigma2=100.0))
    p1 = predict_distribution(m, [("x", "a")])["L1"]
    p2 = predict_distribution(m, [("x", "b")])["L2"]
    ok = worst_grad < 1e-5 and monotone and worst_sum <= 1e-9 and min(p1, p2) >= 0.9
    return report("maxent numerical suite", ok,
                  f"gradient rel. err {worst_grad:.1e} (< 1e-5), monotone={monotone}, "
                  f"max |sum p - 1| {worst_sum:.1e} (<= 1e-9), two-point p = {p1:.3f}/{p2:.3f} "
                  f"at sigma2=100 (>= 0.9)")


# -- signals -----------------------------------------------------------------------

EVENT_WORDS = ["rose", "fell", "closed", "opened", "grew", "slowed", "met", "voted"]
TIMEX_WORDS = ["1994", "1995", "1996", "June", "Monday", "today"]


def signal_corpus(n, seed, lexicon):
    """Pairs "<event> <filler> <timex> <signal> <filler>" labeled with the signal's hint."""
    rng = random.Random(seed)
    phrases = sorted(lexicon.entries)
    docs = []
    for i in range(n):
        phrase = rng.choice(phrases)
        tokens = ["Sales", rng.choice(EVENT_WORDS), "sharply", rng.choice(TIMEX_WORDS)]
        tokens += phrase.split() + ["the", "report"]
        docs.append(make_document(
            f"s{i}", "1997-06-12", [tokens],
            events=[EventAnnotation("e1", Span(0, 1, 2), rng.choice(["PAST", "PRESENT", "FUTURE"]),
                                    rng.choice(["NONE", "PERFECTIVE"]), "pos", "")],
            timexes=[TimexAnnotation("t1", Span(0, 3, 4), TimexType.DATE, None)],
            relations=[RelationInstance("l1", "e1", "t1", lexicon.entries[phrase])]))
    return docs


def check_signal_ablation():
    lexicon = default_lexicon()
    train_docs, test_docs = signal_corpus(500, 1, lexicon), signal_corpus(500, 2, lexicon)
    gold = [label for _, label in build_training_set(test_docs, Task.C, lexicon)]
    counts = {l: gold.count(l) for l in set(gold)}
    majority = max(counts.values()) / len(gold)
    acc = {}
    for use in (True, False):
        m = train(build_training_set(train_docs, Task.C, lexicon, use), schema_version="ablation")
        vecs = [v for v, _ in build_training_set(test_docs, Task.C, lexicon, use)]
        acc[use] = sum(predict(m, v) == g for v, g in zip(vecs, gold)) / len(gold)
    ok = acc[True] >= 0.95 and abs(acc[False] - majority) <= 0.10 and acc[True] > acc[False]
    return report("signal ablation", ok,
                  f"with signals {acc[True]:.3f} (>= 0.95), without {acc[False]:.3f}, "
                  f"majority class {majority:.3f} (within 0.10), 500 train / 500 held-out pairs")


# -- determinism ------------------------------------------------------------------

def check_determinism(tmp):
    src = os.path.join(tmp, "gold.json")
    doc = {
        "id": "d1", "dct": "1997-06-12",
        "sentences": [["He", "said", "today", "that", "sales", "fell", "for", "seven", "years", "."],
                      ["Prices", "rose", "throughout", "June", ",", "before", "the", "vote", "."]],
        "events": [{"id": f"e{i}", "span": {"s": s, "start": 1, "end": 2}, "tense": "PAST",
                    "aspect": "NONE", "polarity": "pos", "modality": ""} for i, s in ((1, 0), (2, 1))],
        "timexes": [{"id": "t1", "span": {"s": 0, "start": 2, "end": 3}, "type": "DATE", "value": "PRESENT_REF"},
                    {"id": "t2", "span": {"s": 1, "start": 3, "end": 4}, "type": "DATE", "value": "1997-06"}],
        "relations": [{"id": "l1", "arg1": "e1", "arg2": "t1", "label": "overlap"},
                      {"id": "l2", "arg1": "e2", "arg2": "t2", "label": "overlap"},
                      {"id": "l3", "arg1": "t1", "arg2": "e1", "label": "vague"}],
    }
    with open(src, "w") as f:
        json.dump(doc, f)
    outputs = []
    for k in range(2):
        ann, model, lab = (os.path.join(tmp, f"{name}{k}") for name in ("ann", "model", "lab"))
        codes = [run(["annotate", "--input", src, "--output", ann]),
                 run(["train", "--task", "C", "--input", src, "--model", model]),
                 run(["label", "--task", "C", "--input", src, "--model", model, "--output", lab])]
        blobs = []
        for p in (ann, model, lab):
            with open(p, "rb") as f:
                blobs.append(f.read())
        outputs.append((codes, blobs))
    ok = outputs[0] == outputs[1] and outputs[0][0] == [0, 0, 0]
    return report("end-to-end determinism", ok,
                  "annotate, train and label outputs byte-identical across two runs" if ok
                  else f"exit codes {outputs[0][0]} / {outputs[1][0]}, outputs differ")


# -- pytest entry points --------------------------------------------------------------

def test_recognizer_oracle_equivalence():
    assert check_recognizer_oracle()


def test_minicorpus_floors():
    assert check_minicorpus()


def test_baldwin_exhaustive():
    assert check_baldwin()


def test_f_rule_exhaustive():
    assert check_f_rule()


def test_worked_examples():
    assert check_worked_examples()


def test_maxent_numerical_suite():
    assert check_maxent()


def test_signal_ablation():
    assert check_signal_ablation()


def test_end_to_end_determinism(tmp_path):
    assert check_determinism(str(tmp_path))


def main():
    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        results = [check_recognizer_oracle(), check_minicorpus(), check_baldwin(), check_f_rule(),
                   check_worked_examples(), check_maxent(), check_signal_ablation(),
                   check_determinism(tmp)]
    print(f"{sum(results)}/{len(results)} acceptance criteria pass")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
