"""Relation features and per-task training/labeling.

Task C pairs an event with a timex in the same sentence; task E pairs two
events in adjacent sentences.  Both use one fixed feature schema.
"""

from __future__ import annotations

import enum
import logging
from typing import Iterable, Optional, Sequence

from . import maxent
from .corpus import (Document, EventAnnotation, RelationInstance, RelationLabel,
                     TimexAnnotation)
from .signals import SignalLexicon, associate_signal, identify_signals

log = logging.getLogger(__name__)

SCHEMA_VERSION = "tlink-features-1"
NONE = "NONE"

FEATURE_NAMES = (
    # event attributes, per argument
    "arg1_tense", "arg1_aspect", "arg1_polarity", "arg1_modality",
    "arg2_tense", "arg2_aspect", "arg2_polarity", "arg2_modality",
    # timex attributes
    "timex_type", "timex_value",
    # signal
    "signal_text", "signal_hint", "arg1_before_signal", "signal_before_arg2",
    # pair
    "same_tense", "same_aspect", "arg1_before_arg2",
    # per interval
    "arg1_tokbucket", "arg1_text", "arg1_kind",
    "arg2_tokbucket", "arg2_text", "arg2_kind",
)
SIGNAL_FEATURES = ("signal_text", "signal_hint", "arg1_before_signal", "signal_before_arg2")


class Task(enum.Enum):
    C = "C"  # event/timex, same sentence
    E = "E"  # main events, consecutive sentences


class FeatureError(ValueError):
    pass


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _kind(ann) -> str:
    return "event" if isinstance(ann, EventAnnotation) else "timex"


def pair_task(rel: RelationInstance, document: Document) -> Optional[Task]:
    """The task whose shape the pair fits, or None."""
    a1, a2 = document.annotation(rel.arg1), document.annotation(rel.arg2)
    kinds = sorted((_kind(a1), _kind(a2)))
    gap = abs(a1.span.sentence - a2.span.sentence)
    if kinds == ["event", "timex"] and gap == 0:
        return Task.C
    if kinds == ["event", "event"] and gap == 1:
        return Task.E
    return None


def extract_features(pair: RelationInstance, document: Document, lexicon: SignalLexicon,
                     use_signals: bool = True) -> list[tuple[str, str]]:
    """Feature vector for one pair, in ``FEATURE_NAMES`` order.

    With ``use_signals=False`` the signal block is all ``NONE`` (for ablation).
    """
    a1, a2 = document.annotation(pair.arg1), document.annotation(pair.arg2)
    kinds = {_kind(a1), _kind(a2)}
    if kinds == {"timex"}:
        raise FeatureError(f"relation {pair.id}: timex/timex pairs are not handled")
    f = {}
    for prefix, arg in (("arg1", a1), ("arg2", a2)):
        if isinstance(arg, EventAnnotation):
            f[f"{prefix}_tense"] = arg.tense or NONE
            f[f"{prefix}_aspect"] = arg.aspect or NONE
            f[f"{prefix}_polarity"] = arg.polarity
            f[f"{prefix}_modality"] = arg.modality or NONE
        else:
            for attr in ("tense", "aspect", "polarity", "modality"):
                f[f"{prefix}_{attr}"] = NONE
    timex = a1 if isinstance(a1, TimexAnnotation) else a2 if isinstance(a2, TimexAnnotation) else None
    f["timex_type"] = timex.ttype.value if timex is not None and timex.ttype else NONE
    f["timex_value"] = timex.value if timex is not None and timex.value else NONE

    signal = None
    if use_signals and a1.span.sentence == a2.span.sentence:
        sentence = document.sentences[a1.span.sentence]
        signal = associate_signal(a1.span, a2.span, sentence, identify_signals(sentence, lexicon))
    if signal is None:
        for name in SIGNAL_FEATURES:
            f[name] = NONE
    else:
        f["signal_text"] = signal.phrase
        f["signal_hint"] = signal.hint.value
        f["arg1_before_signal"] = _bool(a1.span.start < signal.span.start)
        f["signal_before_arg2"] = _bool(signal.span.start < a2.span.start)

    both_events = isinstance(a1, EventAnnotation) and isinstance(a2, EventAnnotation)
    f["same_tense"] = _bool(both_events and a1.tense == a2.tense)
    f["same_aspect"] = _bool(both_events and a1.aspect == a2.aspect)
    f["arg1_before_arg2"] = _bool((a1.span.sentence, a1.span.start) < (a2.span.sentence, a2.span.start))
    for prefix, arg in (("arg1", a1), ("arg2", a2)):
        f[f"{prefix}_tokbucket"] = str(arg.span.start // 5)
        f[f"{prefix}_text"] = document.surface(arg.span).lower()
        f[f"{prefix}_kind"] = _kind(arg)
    return [(name, f[name]) for name in FEATURE_NAMES]


def task_pairs(documents: Iterable[Document], task: Task):
    """``(pairs, skipped)``: task-shaped ``(document, relation)`` pairs and the
    number of relations that did not fit the task."""
    pairs, skipped = [], 0
    for doc in documents:
        for rel in doc.relations:
            if pair_task(rel, doc) is task:
                pairs.append((doc, rel))
            else:
                skipped += 1
    return pairs, skipped


def build_training_set(documents: Iterable[Document], task: Task, lexicon: SignalLexicon,
                       use_signals: bool = True) -> list[tuple[list, str]]:
    """One ``(features, gold label)`` example per task-shaped relation."""
    out = []
    pairs, skipped = task_pairs(documents, task)
    for doc, rel in pairs:
        if rel.label is None:
            raise ValueError(f"{doc.id}: relation {rel.id} has no gold label")
        out.append((extract_features(rel, doc, lexicon, use_signals), rel.label.value))
    if skipped:
        log.warning("skipped %d relation(s) not shaped for task %s", skipped, task.value)
    return out


def schema_for(task: Task) -> str:
    return f"{SCHEMA_VERSION}/{task.value}"


def train_model(documents: Iterable[Document], task: Task, lexicon: SignalLexicon,
                config: maxent.TrainingConfig = maxent.TrainingConfig(),
                use_signals: bool = True) -> maxent.MaxEntModel:
    data = build_training_set(documents, task, lexicon, use_signals)
    return maxent.train(data, config, schema_version=schema_for(task))


def label_relations(documents: Sequence[Document], task: Task, model: maxent.MaxEntModel,
                    lexicon: SignalLexicon, use_signals: bool = True) -> list[tuple[str, RelationLabel]]:
    """``(relation id, predicted label)`` for every task-shaped pair, in input order."""
    if model.schema_version != schema_for(task):
        raise ValueError(f"model schema {model.schema_version!r} does not match {schema_for(task)!r}")
    out = []
    for doc, rel in task_pairs(documents, task)[0]:
        label = maxent.predict(model, extract_features(rel, doc, lexicon, use_signals))
        out.append((rel.id, RelationLabel.parse(label)))
    return out


def apply_labels(document: Document, labels: dict[str, RelationLabel]) -> Document:
    rels = tuple(r.__class__(r.id, r.arg1, r.arg2, labels.get(r.id, r.label))
                 for r in document.relations)
    return document.with_layers(relations=rels)
