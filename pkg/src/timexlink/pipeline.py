"""Document-level recognize/normalize passes (what the CLI runs)."""

from __future__ import annotations

import logging
from typing import Optional

from .corpus import Document, TimexAnnotation
from .normalizer import NormalizerConfig, normalize_spans
from .recognizer import RecognizerConfig, Ruleset, default_ruleset, recognize

log = logging.getLogger(__name__)


def recognize_document(doc: Document, ruleset: Optional[Ruleset] = None,
                       config: RecognizerConfig = RecognizerConfig()) -> Document:
    """Replace the timex layer with recognized, untyped spans ``t1, t2, ...``.

    Relations that pointed at the old timexes are dropped (with a warning).
    """
    ruleset = ruleset or default_ruleset()
    spans = recognize(doc, ruleset, config)
    timexes = tuple(TimexAnnotation(f"t{i + 1}", s) for i, s in enumerate(spans))
    keep = {e.id for e in doc.events} | {t.id for t in timexes}
    dropped = [r.id for r in doc.relations if r.arg1 not in keep or r.arg2 not in keep]
    if dropped:
        log.warning("%s: dropped %d relation(s) that referenced replaced timexes", doc.id, len(dropped))
    relations = tuple(r for r in doc.relations if r.id not in dropped)
    return doc.with_layers(timexes=timexes, relations=relations)


def normalize_document(doc: Document, ruleset: Optional[Ruleset] = None,
                       config: NormalizerConfig = NormalizerConfig(), dct=None) -> Document:
    """Type and anchor every timex in place; ids and spans are kept."""
    timexes = normalize_spans(doc, [t.span for t in doc.timexes], config,
                              ruleset=ruleset or default_ruleset(), dct=dct,
                              ids=[t.id for t in doc.timexes])
    return doc.with_layers(timexes=tuple(timexes))


def annotate_document(doc: Document, ruleset: Optional[Ruleset] = None,
                      recognizer_config: RecognizerConfig = RecognizerConfig(),
                      normalizer_config: NormalizerConfig = NormalizerConfig(), dct=None) -> Document:
    ruleset = ruleset or default_ruleset()
    doc = recognize_document(doc, ruleset, recognizer_config)
    return normalize_document(doc, ruleset, normalizer_config, dct)
