"""Document model and the canonical JSON wire format.

A document is a list of pre-tokenized sentences plus a creation date (DCT).
Event, timex and relation layers hang off the document and are all optional
on the wire.
"""

from __future__ import annotations

import datetime
import enum
import json
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Iterable, Optional, Union


class CorpusError(ValueError):
    """Base class for malformed or invalid documents."""


class ParseError(CorpusError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ValidationError(CorpusError):
    pass


class RelationLabel(enum.Enum):
    BEFORE = "before"
    AFTER = "after"
    OVERLAP = "overlap"
    BEFORE_OR_OVERLAP = "before-or-overlap"
    OVERLAP_OR_AFTER = "overlap-or-after"
    VAGUE = "vague"

    @classmethod
    def parse(cls, text: str) -> "RelationLabel":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown relation label {text!r}") from None

    def __str__(self) -> str:
        return self.value


class TimexType(str, enum.Enum):
    DATE = "DATE"
    DURATION = "DURATION"


DURATION_VALUE = re.compile(r"P(\d+|X)[YMWD]")
DATE_VALUE = re.compile(r"\d{4}(-\d{2}(-\d{2})?)?|\d{4}-W\d{2}|PRESENT_REF")


@dataclass(frozen=True, order=True)
class Span:
    """Token window ``[start, end)`` inside one sentence."""

    sentence: int
    start: int
    end: int

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValidationError(f"bad span {self.sentence}:{self.start}..{self.end}")
        if self.sentence < 0:
            raise ValidationError(f"negative sentence index in span {self!r}")

    def __len__(self) -> int:
        return self.end - self.start

    def contains(self, other: "Span") -> bool:
        return (self.sentence == other.sentence and self.start <= other.start
                and other.end <= self.end)

    def overlaps(self, other: "Span") -> bool:
        return (self.sentence == other.sentence and self.start < other.end
                and other.start < self.end)


@dataclass(frozen=True)
class Sentence:
    index: int
    tokens: tuple[str, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValidationError(f"sentence {self.index} has no tokens")
        for tok in self.tokens:
            if not isinstance(tok, str) or not tok or re.search(r"\s", tok):
                raise ValidationError(f"bad token {tok!r} in sentence {self.index}")

    def __len__(self) -> int:
        return len(self.tokens)

    def surface(self, start: int, end: int) -> str:
        return " ".join(self.tokens[start:end])


@dataclass(frozen=True)
class TimexAnnotation:
    """A temporal expression.

    ``ttype`` is ``None`` only for spans that have been recognized but not yet
    normalized; ``value`` is ``None`` when the expression could not be anchored.
    """

    id: str
    span: Span
    ttype: Optional[TimexType] = None
    value: Optional[str] = None

    def __post_init__(self):
        if self.value is not None:
            check_timex_value(self.ttype, self.value, self.id)


def check_timex_value(ttype: Optional[TimexType], value: str, ident: str = "?"):
    if not value:
        raise ValidationError(f"timex {ident}: empty value")
    if ttype is TimexType.DURATION and not DURATION_VALUE.fullmatch(value):
        raise ValidationError(f"timex {ident}: bad DURATION value {value!r}")
    if ttype is TimexType.DATE and not DATE_VALUE.fullmatch(value):
        raise ValidationError(f"timex {ident}: bad DATE value {value!r}")
    if ttype is None:
        raise ValidationError(f"timex {ident}: value given without a type")


@dataclass(frozen=True)
class EventAnnotation:
    id: str
    span: Span
    tense: str = ""
    aspect: str = ""
    polarity: str = "pos"
    modality: str = ""

    def __post_init__(self):
        if self.polarity not in ("pos", "neg"):
            raise ValidationError(f"event {self.id}: polarity must be pos or neg")


@dataclass(frozen=True)
class RelationInstance:
    id: str
    arg1: str
    arg2: str
    label: Optional[RelationLabel] = None

    def __post_init__(self):
        if self.arg1 == self.arg2:
            raise ValidationError(f"relation {self.id}: arg1 == arg2")


@dataclass(frozen=True)
class Document:
    """A tokenized document together with its annotation layers."""

    id: str
    dct: datetime.date
    sentences: tuple[Sentence, ...]
    events: tuple[EventAnnotation, ...] = ()
    timexes: tuple[TimexAnnotation, ...] = ()
    relations: tuple[RelationInstance, ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        for i, sent in enumerate(self.sentences):
            if sent.index != i:
                raise ValidationError(f"sentence indices must be dense from 0, got {sent.index} at {i}")
        index = {}
        for ann in self.events + self.timexes:
            if ann.id in index:
                raise ValidationError(f"duplicate annotation id {ann.id!r}")
            self._check_span(ann.span, ann.id)
            index[ann.id] = ann
        rel_ids = set()
        for rel in self.relations:
            if rel.id in rel_ids or rel.id in index:
                raise ValidationError(f"duplicate relation id {rel.id!r}")
            rel_ids.add(rel.id)
            for arg in (rel.arg1, rel.arg2):
                if arg not in index:
                    raise ValidationError(f"relation {rel.id} references unknown annotation {arg!r}")
        object.__setattr__(self, "_index", index)

    def _check_span(self, span: Span, ident: str):
        if span.sentence >= len(self.sentences):
            raise ValidationError(f"{ident}: sentence {span.sentence} out of range")
        if span.end > len(self.sentences[span.sentence]):
            raise ValidationError(f"{ident}: span end {span.end} past sentence length")

    def annotation(self, ident: str) -> Union[EventAnnotation, TimexAnnotation]:
        return self._index[ident]

    def surface(self, span: Span) -> str:
        return self.sentences[span.sentence].surface(span.start, span.end)

    def with_layers(self, **layers) -> "Document":
        """Return a copy with some of events/timexes/relations replaced."""
        return replace(self, **layers)


def make_document(id: str, dct: Union[str, datetime.date], sentences: Iterable[Iterable[str]],
                  **layers) -> Document:
    if isinstance(dct, str):
        dct = parse_date(dct)
    sents = tuple(Sentence(i, tuple(toks)) for i, toks in enumerate(sentences))
    return Document(id, dct, sents, **{k: tuple(v) for k, v in layers.items()})


def parse_date(text: str) -> datetime.date:
    if not isinstance(text, str) or not re.fullmatch(r"\d{4}-\d{2}-\d{2}", text):
        raise ValidationError(f"date must be YYYY-MM-DD, got {text!r}")
    try:
        return datetime.date.fromisoformat(text)
    except ValueError as e:
        raise ValidationError(f"invalid calendar date {text!r}: {e}") from None


# -- wire format ------------------------------------------------------------

_DOC_KEYS = {"id", "dct", "sentences", "events", "timexes", "relations"}
_SPAN_KEYS = {"s", "start", "end"}
_EVENT_KEYS = {"id", "span", "tense", "aspect", "polarity", "modality"}
_TIMEX_KEYS = {"id", "span", "type", "value"}
_REL_KEYS = {"id", "arg1", "arg2", "label"}


def _expect(obj, kind, where):
    if not isinstance(obj, kind):
        raise ValidationError(f"{where}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def _keys(obj: dict, allowed: set, required: set, where: str):
    _expect(obj, dict, where)
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise ValidationError(f"{where}: missing keys {sorted(missing)}")


def _int(v, where):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(f"{where}: expected integer, got {v!r}")
    return v


def _str(v, where):
    return _expect(v, str, where)


def _span(obj, where) -> Span:
    _keys(obj, _SPAN_KEYS, _SPAN_KEYS, where)
    return Span(_int(obj["s"], where), _int(obj["start"], where), _int(obj["end"], where))


def document_from_dict(obj: dict) -> Document:
    _keys(obj, _DOC_KEYS, {"id", "dct", "sentences"}, "document")
    sentences = []
    for i, toks in enumerate(_expect(obj["sentences"], list, "sentences")):
        _expect(toks, list, f"sentence {i}")
        sentences.append(Sentence(i, tuple(_str(t, f"sentence {i}") for t in toks)))

    events = []
    for i, ev in enumerate(_expect(obj.get("events", []), list, "events")):
        where = f"events[{i}]"
        _keys(ev, _EVENT_KEYS, _EVENT_KEYS, where)
        events.append(EventAnnotation(
            _str(ev["id"], where), _span(ev["span"], where), _str(ev["tense"], where),
            _str(ev["aspect"], where), _str(ev["polarity"], where), _str(ev["modality"], where)))

    timexes = []
    for i, tx in enumerate(_expect(obj.get("timexes", []), list, "timexes")):
        where = f"timexes[{i}]"
        _keys(tx, _TIMEX_KEYS, {"id", "span"}, where)
        ttype = tx.get("type")
        if ttype is not None:
            try:
                ttype = TimexType(_str(ttype, where))
            except ValueError:
                raise ValidationError(f"{where}: unknown timex type {ttype!r}") from None
        value = tx.get("value")
        if value is not None:
            _str(value, where)
        timexes.append(TimexAnnotation(_str(tx["id"], where), _span(tx["span"], where), ttype, value))

    relations = []
    for i, rel in enumerate(_expect(obj.get("relations", []), list, "relations")):
        where = f"relations[{i}]"
        _keys(rel, _REL_KEYS, {"id", "arg1", "arg2"}, where)
        label = rel.get("label")
        if label is not None:
            try:
                label = RelationLabel(_str(label, where))
            except ValueError:
                raise ValidationError(f"{where}: unknown relation label {label!r}") from None
        relations.append(RelationInstance(_str(rel["id"], where), _str(rel["arg1"], where),
                                          _str(rel["arg2"], where), label))

    return Document(_str(obj["id"], "id"), parse_date(obj["dct"]), tuple(sentences),
                    tuple(events), tuple(timexes), tuple(relations))


def parse_document(data: Union[bytes, str], format: str = "canonical") -> Document:
    """Parse a canonical-format document.

    Raises ``ParseError`` (with line/column) for broken JSON and
    ``ValidationError`` for structurally valid JSON that violates the model.
    """
    if format != "canonical":
        raise ValueError(f"unsupported format {format!r}")
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"invalid UTF-8: {e.reason}", 1, e.start + 1) from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return document_from_dict(obj)


def _span_dict(span: Span) -> dict:
    return {"s": span.sentence, "start": span.start, "end": span.end}


def document_to_dict(doc: Document) -> dict:
    out = {
        "id": doc.id,
        "dct": doc.dct.isoformat(),
        "sentences": [list(s.tokens) for s in doc.sentences],
    }
    if doc.events:
        out["events"] = [
            {"id": e.id, "span": _span_dict(e.span), "tense": e.tense, "aspect": e.aspect,
             "polarity": e.polarity, "modality": e.modality}
            for e in doc.events]
    if doc.timexes:
        out["timexes"] = []
        for t in doc.timexes:
            d = {"id": t.id, "span": _span_dict(t.span)}
            if t.ttype is not None:
                d["type"] = t.ttype.value
            if t.value is not None:
                d["value"] = t.value
            out["timexes"].append(d)
    if doc.relations:
        out["relations"] = []
        for r in doc.relations:
            d = {"id": r.id, "arg1": r.arg1, "arg2": r.arg2}
            if r.label is not None:
                d["label"] = r.label.value
            out["relations"].append(d)
    return out


def serialize(doc: Document) -> bytes:
    return (json.dumps(document_to_dict(doc), ensure_ascii=False, indent=1) + "\n").encode("utf-8")


def bundled_corpus() -> list[Document]:
    """The small hand-annotated timex corpus shipped with the package, by id."""
    root = resources.files("timexlink.data").joinpath("minicorpus")
    names = sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))
    return [parse_document(root.joinpath(n).read_bytes()) for n in names]
