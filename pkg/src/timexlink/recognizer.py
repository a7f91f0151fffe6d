"""N-gram / regular-expression timex recognizer.

Every token window of up to ``max_n`` tokens is joined with single spaces and
matched (whole string, case-insensitive) against an ordered ruleset.  Matching
windows nested inside a bigger matching window are discarded; among windows
that overlap without nesting, the longer one wins and ties go to the leftmost.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from importlib import resources
from typing import IO, Iterable, Union

from .corpus import Document, Sentence, Span
from .lexicon import MACROS

DATE_PREFIX = "date:"


class RulesetError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Rule:
    name: str
    pattern: re.Pattern

    @property
    def forces_date(self) -> bool:
        return self.name.startswith(DATE_PREFIX)


@dataclass(frozen=True)
class Ruleset:
    rules: tuple[Rule, ...] = ()

    def __len__(self):
        return len(self.rules)

    def matches(self, surface: str) -> list[Rule]:
        return [r for r in self.rules if r.pattern.fullmatch(surface)]

    def match_any(self, surface: str) -> bool:
        return any(r.pattern.fullmatch(surface) for r in self.rules)


@dataclass(frozen=True)
class RecognizerConfig:
    max_n: int = 5

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")


def expand_macros(pattern: str) -> str:
    """Replace ``{{NAME}}`` placeholders with the shared word-list alternations."""
    def sub(m):
        try:
            return MACROS[m.group(1)]
        except KeyError:
            raise RulesetError(f"unknown macro {m.group(0)}") from None
    return re.sub(r"\{\{([A-Z_]+)\}\}", sub, pattern)


def compile_rules(pairs: Iterable[tuple[str, str]]) -> Ruleset:
    rules, seen = [], set()
    for name, pattern in pairs:
        if name in seen:
            raise RulesetError(f"duplicate rule name {name!r}")
        seen.add(name)
        try:
            rules.append(Rule(name, re.compile(expand_macros(pattern), re.IGNORECASE)))
        except re.error as e:
            raise RulesetError(f"rule {name!r} does not compile: {e}") from None
    return Ruleset(tuple(rules))


def load_ruleset(stream: Union[IO, bytes, str]) -> Ruleset:
    """Read ``name<TAB>pattern`` lines; blank lines and ``#`` comments are skipped."""
    if isinstance(stream, bytes):
        stream = io.StringIO(stream.decode("utf-8"))
    elif isinstance(stream, str):
        stream = io.StringIO(stream)
    rules, seen = [], set()
    for lineno, raw in enumerate(stream, 1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" not in line:
            raise RulesetError("expected name<TAB>pattern", lineno)
        name, pattern = line.split("\t", 1)
        name = name.strip()
        if not name:
            raise RulesetError("empty rule name", lineno)
        if name in seen:
            raise RulesetError(f"duplicate rule name {name!r}", lineno)
        seen.add(name)
        try:
            rules.append(Rule(name, re.compile(expand_macros(pattern), re.IGNORECASE)))
        except RulesetError as e:
            raise RulesetError(str(e), lineno) from None
        except re.error as e:
            raise RulesetError(f"pattern for {name!r} does not compile: {e}", lineno) from None
    return Ruleset(tuple(rules))


def default_ruleset() -> Ruleset:
    with resources.files("timexlink.data").joinpath("rules.tsv").open("r", encoding="utf-8") as f:
        return load_ruleset(f)


def candidate_spans(sentence: Sentence, config: RecognizerConfig = RecognizerConfig()):
    """All windows of 1..max_n tokens as ``(Span, surface)``, ordered by (start, length)."""
    n_tok = len(sentence)
    out = []
    for start in range(n_tok):
        for n in range(1, min(config.max_n, n_tok - start) + 1):
            out.append((Span(sentence.index, start, start + n),
                        sentence.surface(start, start + n)))
    return out


def select_maximal(spans: Iterable[Span]) -> list[Span]:
    """Drop nested spans, then resolve overlaps (longer first, then leftmost).

    Returned spans are sorted by position.
    """
    spans = set(spans)
    outer = [s for s in spans
             if not any(o != s and o.contains(s) for o in spans)]
    outer.sort(key=lambda s: (-len(s), s.sentence, s.start))
    kept = []
    for s in outer:
        if not any(s.overlaps(k) for k in kept):
            kept.append(s)
    kept.sort()
    return kept


def sentence_matches(sentence: Sentence, ruleset: Ruleset,
                     config: RecognizerConfig = RecognizerConfig()) -> list[Span]:
    """Longest matching window per start position.

    Shorter windows at the same start are nested in the longest one, so they
    could never survive selection anyway.
    """
    n_tok = len(sentence)
    found = []
    for start in range(n_tok):
        for n in range(min(config.max_n, n_tok - start), 0, -1):
            if ruleset.match_any(sentence.surface(start, start + n)):
                found.append(Span(sentence.index, start, start + n))
                break
    return found


def recognize(document: Document, ruleset: Ruleset,
              config: RecognizerConfig = RecognizerConfig()) -> list[Span]:
    spans = []
    for sentence in document.sentences:
        spans.extend(select_maximal(sentence_matches(sentence, ruleset, config)))
    return spans
