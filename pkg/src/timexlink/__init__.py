"""Temporal expression tagging, anchoring and temporal relation labeling."""

from .corpus import (Document, EventAnnotation, RelationInstance, RelationLabel, Sentence, Span,
                     TimexAnnotation, TimexType, bundled_corpus, make_document, parse_document,
                     serialize)
from .evaluate import score_documents
from .normalizer import CalendarDate, Direction, NormalizerConfig, TemporalUnit, normalize
from .pipeline import annotate_document, normalize_document, recognize_document
from .recognizer import RecognizerConfig, default_ruleset, load_ruleset, recognize
from .signals import default_lexicon, load_lexicon

__version__ = "0.1.0"
