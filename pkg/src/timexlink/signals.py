"""Temporal signal words: lexicon, detection, and association with entity pairs."""

from __future__ import annotations

import io
from dataclasses import dataclass
from importlib import resources
from typing import IO, Iterable, Mapping, Optional, Union

from .corpus import RelationLabel, Sentence, Span
from .recognizer import select_maximal

CLAUSE_BREAKS = frozenset({",", ";", ":"})


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class SignalLexicon:
    entries: Mapping[str, RelationLabel]

    def __post_init__(self):
        for phrase in self.entries:
            if not phrase.strip():
                raise LexiconError("empty signal phrase")

    @property
    def max_len(self) -> int:
        return max((len(p.split()) for p in self.entries), default=0)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, phrase):
        return phrase.lower() in self.entries


@dataclass(frozen=True)
class SignalMention:
    span: Span
    phrase: str
    hint: RelationLabel


def make_lexicon(pairs: Iterable[tuple[str, Union[str, RelationLabel]]]) -> SignalLexicon:
    entries = {}
    for phrase, hint in pairs:
        key = " ".join(phrase.lower().split())
        if key in entries:
            raise LexiconError(f"duplicate signal phrase {key!r}")
        entries[key] = hint if isinstance(hint, RelationLabel) else RelationLabel.parse(hint)
    return SignalLexicon(entries)


def load_lexicon(stream: Union[IO, bytes, str]) -> SignalLexicon:
    """Read ``phrase<TAB>hint`` lines (``#`` comments and blank lines allowed)."""
    if isinstance(stream, bytes):
        stream = io.StringIO(stream.decode("utf-8"))
    elif isinstance(stream, str):
        stream = io.StringIO(stream)
    entries = {}
    for lineno, raw in enumerate(stream, 1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip():
            raise LexiconError(f"line {lineno}: expected phrase<TAB>hint")
        phrase = " ".join(parts[0].lower().split())
        try:
            hint = RelationLabel.parse(parts[1])
        except ValueError:
            raise LexiconError(f"line {lineno}: unknown hint label {parts[1].strip()!r}") from None
        if phrase in entries:
            raise LexiconError(f"line {lineno}: duplicate phrase {phrase!r}")
        entries[phrase] = hint
    return SignalLexicon(entries)


def default_lexicon() -> SignalLexicon:
    with resources.files("timexlink.data").joinpath("signals.tsv").open("r", encoding="utf-8") as f:
        return load_lexicon(f)


def identify_signals(sentence: Sentence, lexicon: SignalLexicon) -> list[SignalMention]:
    """Longest-match scan for lexicon phrases, in textual order."""
    lowered = [t.lower() for t in sentence.tokens]
    width = lexicon.max_len
    hits = []
    for start in range(len(lowered)):
        for n in range(min(width, len(lowered) - start), 0, -1):
            if " ".join(lowered[start:start + n]) in lexicon.entries:
                hits.append(Span(sentence.index, start, start + n))
                break
    out = []
    for span in select_maximal(hits):
        phrase = " ".join(lowered[span.start:span.end])
        out.append(SignalMention(span, phrase, lexicon.entries[phrase]))
    return out


def clause_ids(sentence: Sentence) -> list[Optional[int]]:
    """Clause segment per token; breaking punctuation itself belongs to none."""
    out, current = [], 0
    for tok in sentence.tokens:
        if tok in CLAUSE_BREAKS:
            out.append(None)
            current += 1
        else:
            out.append(current)
    return out


def token_gap(a: Span, b: Span) -> int:
    """Smallest index difference between a token of ``a`` and a token of ``b``."""
    if a.overlaps(b):
        return 0
    if a.end <= b.start:
        return b.start - (a.end - 1)
    return a.start - (b.end - 1)


def associate_signal(arg1: Span, arg2: Span, sentence: Sentence,
                     signals: Iterable[SignalMention]) -> Optional[SignalMention]:
    """Nearest signal sharing a clause segment with either argument.

    Pairs that do not lie in ``sentence`` get no signal.
    """
    if arg1.sentence != sentence.index or arg2.sentence != sentence.index:
        return None
    clauses = clause_ids(sentence)

    def segs(span):
        return {clauses[i] for i in range(span.start, span.end)} - {None}

    arg_segs = segs(arg1) | segs(arg2)
    best, best_key = None, None
    for sig in signals:
        if sig.span.sentence != sentence.index or not (segs(sig.span) & arg_segs):
            continue
        key = (min(token_gap(sig.span, arg1), token_gap(sig.span, arg2)), sig.span.start)
        if best_key is None or key < best_key:
            best, best_key = sig, key
    return best
