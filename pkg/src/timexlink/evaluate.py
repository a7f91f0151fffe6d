"""Strict scoring of timex extents, timex attributes and relation labels."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from .corpus import Document, Span, TimexAnnotation


@dataclass(frozen=True)
class ExtentScore:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int

    def as_dict(self):
        return asdict(self)


def f1_score(p: float, r: float) -> float:
    return 2 * p * r / (p + r) if p + r > 0 else 0.0


def score_extents(gold: Iterable[Span], pred: Iterable[Span]) -> ExtentScore:
    """Exact (sentence, start, end) matching; partial overlaps earn nothing."""
    gold, pred = set(gold), set(pred)
    tp = len(gold & pred)
    fp, fn = len(pred) - tp, len(gold) - tp
    p = tp / (tp + fp) if tp + fp else 1.0
    r = tp / (tp + fn) if tp + fn else 1.0
    return ExtentScore(p, r, f1_score(p, r), tp, fp, fn)


def score_attribute(gold: Sequence[TimexAnnotation], pred: Sequence[TimexAnnotation],
                    attr: str) -> float:
    """All-or-nothing accuracy of ``type`` or ``value`` over extent-matched timexes.

    NaN when no extents match.
    """
    if attr not in ("type", "value"):
        raise ValueError(f"unknown attribute {attr!r}")
    field = "ttype" if attr == "type" else "value"
    by_span = {t.span: t for t in pred}
    total = correct = 0
    for g in gold:
        p = by_span.get(g.span)
        if p is None:
            continue
        total += 1
        pv = getattr(p, field)
        if pv is not None and pv == getattr(g, field):
            correct += 1
    return correct / total if total else math.nan


def score_relations(gold: Mapping[str, object], pred: Mapping[str, object]) -> float:
    """Label accuracy over gold instance ids; a missing prediction counts wrong."""
    if not gold:
        return math.nan
    return sum(1 for k, v in gold.items() if k in pred and pred[k] == v) / len(gold)


def fmt(x: float) -> str:
    return "n/a" if math.isnan(x) else f"{x:.4f}"


def score_documents(gold_docs: Sequence[Document], pred_docs: Sequence[Document]) -> dict:
    """Corpus-level report; documents are paired by id."""
    preds = {d.id: d for d in pred_docs}
    missing = [d.id for d in gold_docs if d.id not in preds]
    if missing:
        raise ValueError(f"no prediction for document(s) {missing}")

    def keyed(doc, spans):
        # span identity must include the document
        return [(doc.id, s) for s in spans]

    gold_spans, pred_spans = [], []
    gold_tx, pred_tx = [], []
    gold_rel, pred_rel = {}, {}
    for g in gold_docs:
        p = preds[g.id]
        gold_spans += keyed(g, (t.span for t in g.timexes))
        pred_spans += keyed(p, (t.span for t in p.timexes))
        gold_tx += [_Keyed((g.id, t.span), t.ttype, t.value) for t in g.timexes]
        pred_tx += [_Keyed((g.id, t.span), t.ttype, t.value) for t in p.timexes]
        gold_rel.update({(g.id, r.id): r.label for r in g.relations if r.label is not None})
        pred_rel.update({(g.id, r.id): r.label for r in p.relations if r.label is not None})
    ext = score_extents(gold_spans, pred_spans)
    return {
        "documents": len(gold_docs),
        "extent": ext.as_dict(),
        "type_accuracy": score_attribute(gold_tx, pred_tx, "type"),
        "value_accuracy": score_attribute(gold_tx, pred_tx, "value"),
        "relation_accuracy": score_relations(gold_rel, pred_rel),
        "relations": len(gold_rel),
    }


@dataclass(frozen=True)
class _Keyed:
    span: tuple
    ttype: object
    value: object


def report_table(report: dict) -> str:
    ext = report["extent"]
    rows = [
        ("documents", str(report["documents"])),
        ("extent precision", fmt(ext["precision"])),
        ("extent recall", fmt(ext["recall"])),
        ("extent f1", fmt(ext["f1"])),
        ("extent tp/fp/fn", f"{ext['tp']}/{ext['fp']}/{ext['fn']}"),
        ("type accuracy", fmt(report["type_accuracy"])),
        ("value accuracy", fmt(report["value_accuracy"])),
        ("relation accuracy", fmt(report["relation_accuracy"])),
        ("relations scored", str(report["relations"])),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def report_json_ready(report: dict) -> dict:
    """Replace NaN with the string "n/a"."""
    def fix(v):
        if isinstance(v, float) and math.isnan(v):
            return "n/a"
        if isinstance(v, dict):
            return {k: fix(x) for k, x in v.items()}
        return v
    return fix(report)
