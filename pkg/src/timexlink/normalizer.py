"""Timex typing and value normalization relative to the document creation time."""

from __future__ import annotations

import calendar
import datetime
import enum
import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import lexicon
from .corpus import Document, Span, TimexAnnotation, TimexType

IMPRECISE = "X"
Quantity = Union[int, str]  # positive int or IMPRECISE


class UnanchorableError(ValueError):
    """No rule could assign a value; ``ttype`` carries the type if one was found."""

    def __init__(self, message: str, ttype: Optional[TimexType] = None):
        super().__init__(message)
        self.ttype = ttype


class TemporalUnit(enum.Enum):
    DAY = "D"
    WEEK = "W"
    MONTH = "M"
    QUARTER = "Q"
    YEAR = "Y"


class Direction(enum.Enum):
    PAST = -1
    NONE = 0
    FUTURE = 1


@dataclass(frozen=True)
class NormalizerConfig:
    f_days: int = 14
    baldwin_radius: int = 3

    def __post_init__(self):
        if self.f_days < 0:
            raise ValueError("f_days must be >= 0")
        if self.baldwin_radius != 3:
            raise ValueError("the weekday window is fixed at 7 days (radius 3)")


@dataclass(frozen=True)
class CalendarDate:
    """A date at year, month, ISO-week or day granularity."""

    year: int
    month: Optional[int] = None
    day: Optional[int] = None
    week: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.year <= 9999:
            raise ValueError(f"year out of range: {self.year}")
        if self.week is not None:
            if self.month is not None or self.day is not None:
                raise ValueError("week granularity excludes month/day")
            if not 1 <= self.week <= datetime.date(self.year, 12, 28).isocalendar()[1]:
                raise ValueError(f"no ISO week {self.week} in {self.year}")
        if self.day is not None and self.month is None:
            raise ValueError("day given without month")
        if self.month is not None and not 1 <= self.month <= 12:
            raise ValueError(f"month out of range: {self.month}")
        if self.day is not None:
            datetime.date(self.year, self.month, self.day)

    @classmethod
    def from_date(cls, d: datetime.date) -> "CalendarDate":
        return cls(d.year, d.month, d.day)

    @property
    def granularity(self) -> TemporalUnit:
        if self.week is not None:
            return TemporalUnit.WEEK
        if self.day is not None:
            return TemporalUnit.DAY
        if self.month is not None:
            return TemporalUnit.MONTH
        return TemporalUnit.YEAR

    def to_date(self) -> datetime.date:
        if self.day is None:
            raise ValueError(f"{self} is not day-granular")
        return datetime.date(self.year, self.month, self.day)

    @property
    def value(self) -> str:
        if self.week is not None:
            return f"{self.year:04d}-W{self.week:02d}"
        out = f"{self.year:04d}"
        if self.month is not None:
            out += f"-{self.month:02d}"
        if self.day is not None:
            out += f"-{self.day:02d}"
        return out

    def __str__(self):
        return self.value


def _as_date(d) -> datetime.date:
    return d.to_date() if isinstance(d, CalendarDate) else d


# -- typing -------------------------------------------------------------------

DURATION_TRIGGERS = ("for", "during")


def classify_type(span: Span, document: Document, ruleset=None) -> TimexType:
    """DURATION if "for"/"during" is among the three preceding tokens, the surface
    ends in "s", or the timex is a two-token phrase starting with "a".

    With a ruleset, a surface matched by a ``date:`` rule is always DATE.
    """
    surface = document.surface(span)
    if ruleset is not None and any(r.forces_date for r in ruleset.matches(surface)):
        return TimexType.DATE
    tokens = document.sentences[span.sentence].tokens
    before = [t.lower() for t in tokens[max(0, span.start - 3):span.start]]
    if any(t in DURATION_TRIGGERS for t in before):
        return TimexType.DURATION
    if surface[-1].lower() == "s":
        return TimexType.DURATION
    if len(span) == 2 and tokens[span.start].lower() == "a":
        return TimexType.DURATION
    return TimexType.DATE


# -- quantities ---------------------------------------------------------------

_DIGITS = re.compile(r"\d{1,3}(?:,\d{3})+|\d+")


def _words(tokens: Sequence[str]) -> list[str]:
    out = []
    for tok in tokens:
        tok = tok.lower()
        if any(c.isdigit() for c in tok):
            out.append(tok)
        else:
            out.extend(w for w in tok.split("-") if w)
    return out


def _is_numword(w: str) -> bool:
    return w in lexicon.UNITS_WORDS or w in lexicon.TENS_WORDS or w in lexicon.SCALE_WORDS


def _read_number(words: list[str], i: int) -> int:
    if _DIGITS.fullmatch(words[i]):
        value = int(words[i].replace(",", ""))
        i += 1
        while i < len(words) and words[i] in lexicon.SCALE_WORDS:
            value *= lexicon.SCALE_WORDS[words[i]]
            i += 1
        return value
    total = current = 0
    while i < len(words):
        w = words[i]
        if w in lexicon.UNITS_WORDS or w in lexicon.TENS_WORDS:
            current += lexicon.UNITS_WORDS.get(w, 0) + lexicon.TENS_WORDS.get(w, 0)
        elif w == "hundred":
            current = max(current, 1) * 100
        elif w in lexicon.SCALE_WORDS:
            total += max(current, 1) * lexicon.SCALE_WORDS[w]
            current = 0
        elif w == "and" and i + 1 < len(words) and _is_numword(words[i + 1]):
            pass
        else:
            break
        i += 1
    return total + current


def parse_numeric_words(tokens: Sequence[str]) -> Optional[Quantity]:
    """Value of the first number in ``tokens``.

    Returns an int, ``IMPRECISE`` for words like "few", or None when there is no
    number at all.  An article counts as one unless it introduces an imprecise
    word ("a few") or a scale word ("a hundred").
    """
    words = _words(tokens)
    for i, w in enumerate(words):
        if w in lexicon.IMPRECISE_WORDS:
            return IMPRECISE
        if w in lexicon.ARTICLES:
            nxt = words[i + 1] if i + 1 < len(words) else None
            if nxt in lexicon.IMPRECISE_WORDS:
                return IMPRECISE
            if nxt == "couple":
                return 2
            if nxt is not None and _is_numword(nxt):
                value = _read_number(words, i + 1)
                return value or None
            return 1
        if _DIGITS.fullmatch(w) or _is_numword(w):
            value = _read_number(words, i)
            return value if value >= 1 else None
    return None


def find_unit(tokens: Sequence[str]) -> Optional[TemporalUnit]:
    for w in _words(tokens):
        if w in lexicon.UNIT_WORDS:
            return TemporalUnit[lexicon.UNIT_WORDS[w]]
    return None


def find_direction(tokens: Sequence[str]) -> Direction:
    words = _words(tokens)
    for i, w in enumerate(words):
        if w in lexicon.PAST_WORDS:
            return Direction.PAST
        if w in lexicon.FUTURE_WORDS:
            return Direction.FUTURE
        if tuple(words[i:i + 2]) in lexicon.FUTURE_PHRASES:
            return Direction.FUTURE
    return Direction.NONE


# -- calendar operations --------------------------------------------------------

def resolve_weekday(weekday: Union[int, str], dct, radius: int = 3) -> CalendarDate:
    """The date with ``weekday`` (0=Monday) within ``radius`` days of the DCT."""
    if isinstance(weekday, str):
        weekday = lexicon.WEEKDAYS[weekday.lower()]
    dct = _as_date(dct)
    delta = (weekday - dct.weekday()) % 7
    if delta > radius:
        delta -= 7
    return CalendarDate.from_date(dct + datetime.timedelta(days=delta))


def _valid(year, month, day) -> Optional[datetime.date]:
    try:
        return datetime.date(year, month, day)
    except ValueError:
        return None


def resolve_month_day(month: int, day: int, dct,
                      config: NormalizerConfig = NormalizerConfig()) -> CalendarDate:
    """Anchor a year-less month/day.

    Take the next occurrence on or after the DCT if it is at most ``f_days``
    away, otherwise the same date one year earlier.
    """
    dct = _as_date(dct)
    year = dct.year if (month, day) >= (dct.month, dct.day) else dct.year + 1
    upcoming = _valid(year, month, day)
    if upcoming is not None and (upcoming - dct).days <= config.f_days:
        return CalendarDate.from_date(upcoming)
    previous = _valid(year - 1, month, day)
    if previous is None:
        raise UnanchorableError(f"no valid year for {month:02d}-{day:02d} near {dct}")
    return CalendarDate.from_date(previous)


def add_months(d: datetime.date, months: int) -> datetime.date:
    index = d.year * 12 + d.month - 1 + months
    year, month = divmod(index, 12)
    month += 1
    return datetime.date(year, month, min(d.day, calendar.monthrange(year, month)[1]))


def shift(d: datetime.date, amount: int, unit: TemporalUnit) -> datetime.date:
    if unit is TemporalUnit.DAY:
        return d + datetime.timedelta(days=amount)
    if unit is TemporalUnit.WEEK:
        return d + datetime.timedelta(weeks=amount)
    if unit is TemporalUnit.MONTH:
        return add_months(d, amount)
    if unit is TemporalUnit.QUARTER:
        return add_months(d, 3 * amount)
    return add_months(d, 12 * amount)


def truncate(d: datetime.date, unit: TemporalUnit) -> CalendarDate:
    if unit is TemporalUnit.DAY:
        return CalendarDate.from_date(d)
    if unit is TemporalUnit.WEEK:
        iso = d.isocalendar()
        return CalendarDate(iso[0], week=iso[1])
    if unit in (TemporalUnit.MONTH, TemporalUnit.QUARTER):
        return CalendarDate(d.year, d.month)
    return CalendarDate(d.year)


def apply_offset(dct, direction: Direction, quantity: Quantity,
                 unit: TemporalUnit) -> CalendarDate:
    """Shift the DCT by ``quantity`` units and truncate to the unit's granularity."""
    if quantity == IMPRECISE:
        raise UnanchorableError("an imprecise quantity cannot anchor a date")
    if direction is Direction.NONE:
        raise UnanchorableError("no offset direction")
    return truncate(shift(_as_date(dct), direction.value * int(quantity), unit), unit)


def duration_value(quantity: Quantity, unit: TemporalUnit) -> str:
    if unit is TemporalUnit.QUARTER:
        amount = IMPRECISE if quantity == IMPRECISE else str(3 * int(quantity))
        return f"P{amount}M"
    return f"P{quantity}{unit.value}"


# -- full normalization ------------------------------------------------------

_ISO = re.compile(r"(\d{4})-(\d{2})-(\d{2})")
_SLASHED = re.compile(r"(\d{1,2})/(\d{1,2})/(\d{4})")
_YEAR = re.compile(r"(1[6-9]|20)\d\d")
_DAYNUM = re.compile(r"([1-9]|[12]\d|3[01])(st|nd|rd|th)?")


def _explicit_date(words: list[str], direction: Direction, dct: datetime.date,
                   config: NormalizerConfig) -> Optional[CalendarDate]:
    for w in words:
        m = _ISO.fullmatch(w)
        if m:
            return CalendarDate(*map(int, m.groups()))
        m = _SLASHED.fullmatch(w)
        if m:
            month, day, year = map(int, m.groups())
            return CalendarDate(year, month, day)

    month = year = day = None
    for w in words:
        w = w.rstrip(".")
        if month is None and w in lexicon.MONTHS:
            month = lexicon.MONTHS[w]
        elif year is None and _YEAR.fullmatch(w):
            year = int(w)
        elif day is None and _DAYNUM.fullmatch(w):
            day = int(_DAYNUM.fullmatch(w).group(1))
    if month is None:
        return CalendarDate(year) if year is not None else None
    if year is not None:
        if day is not None:
            return CalendarDate(year, month, day)
        return CalendarDate(year, month)

    if any(w in lexicon.PRESENT_WORDS for w in words) and direction is Direction.NONE:
        return CalendarDate(dct.year, month, day)
    if day is None:
        if direction is Direction.PAST:
            y = dct.year if month < dct.month else dct.year - 1
        elif direction is Direction.FUTURE:
            y = dct.year if month > dct.month else dct.year + 1
        else:
            y = resolve_month_day(month, 1, dct, config).year
        return CalendarDate(y, month)
    if direction is Direction.PAST:
        y = dct.year if (month, day) < (dct.month, dct.day) else dct.year - 1
    elif direction is Direction.FUTURE:
        y = dct.year if (month, day) > (dct.month, dct.day) else dct.year + 1
    else:
        return resolve_month_day(month, day, dct, config)
    return CalendarDate(y, month, day)


def _weekday(words, direction, dct, config) -> Optional[CalendarDate]:
    for w in words:
        if w in lexicon.WEEKDAYS:
            target = lexicon.WEEKDAYS[w]
            if direction is Direction.PAST:
                back = (dct.weekday() - target) % 7 or 7
                return CalendarDate.from_date(dct - datetime.timedelta(days=back))
            if direction is Direction.FUTURE:
                ahead = (target - dct.weekday()) % 7 or 7
                return CalendarDate.from_date(dct + datetime.timedelta(days=ahead))
            return resolve_weekday(target, dct, config.baldwin_radius)
    return None


def _value(words: list[str], ttype: TimexType, dct: datetime.date,
           config: NormalizerConfig) -> str:
    surface = " ".join(words)
    if surface in ("today", "now"):
        return "PRESENT_REF"

    unit = find_unit(words)
    quantity = parse_numeric_words(words)
    if ttype is TimexType.DURATION:
        if unit is None:
            raise UnanchorableError(f"no unit in duration {surface!r}", ttype)
        if quantity is None:
            plural = any(w in lexicon.UNIT_WORDS and w.endswith("s") for w in words)
            quantity = IMPRECISE if plural else 1
        return duration_value(quantity, unit)

    direction = find_direction(words)
    try:
        explicit = _explicit_date(words, direction, dct, config)
    except ValueError as e:
        raise UnanchorableError(str(e), ttype) from None
    if explicit is not None:
        return explicit.value

    weekday = _weekday(words, direction, dct, config)
    if weekday is not None:
        return weekday.value

    if "yesterday" in words:
        return shift(dct, -1, TemporalUnit.DAY).isoformat()
    if "tomorrow" in words:
        return shift(dct, 1, TemporalUnit.DAY).isoformat()
    if unit is None:
        raise UnanchorableError(f"nothing to anchor in {surface!r}", ttype)
    if direction is Direction.NONE:
        if any(w in lexicon.PRESENT_WORDS for w in words):
            return truncate(dct, unit).value
        raise UnanchorableError(f"no offset direction in {surface!r}", ttype)
    if quantity is None:
        quantity = 1
    try:
        if "today" in words and quantity != IMPRECISE:
            return CalendarDate.from_date(shift(dct, direction.value * quantity, unit)).value
        return apply_offset(dct, direction, quantity, unit).value
    except UnanchorableError as e:
        raise UnanchorableError(str(e), ttype) from None


def normalize(span: Span, document: Document, config: NormalizerConfig = NormalizerConfig(),
              ident: str = "t1", ruleset=None, dct: Optional[datetime.date] = None) -> TimexAnnotation:
    """Type and value for one recognized span.

    Raises ``UnanchorableError`` when no value can be assigned; the error's
    ``ttype`` still holds the type.
    """
    ttype = classify_type(span, document, ruleset)
    tokens = document.sentences[span.sentence].tokens[span.start:span.end]
    value = _value(_words(tokens), ttype, dct or document.dct, config)
    return TimexAnnotation(ident, span, ttype, value)


def normalize_spans(document: Document, spans: Sequence[Span],
                    config: NormalizerConfig = NormalizerConfig(), ruleset=None,
                    dct: Optional[datetime.date] = None, ids: Optional[Sequence[str]] = None):
    """Normalize every span, leaving ``value`` empty where anchoring fails."""
    out = []
    for i, span in enumerate(spans):
        ident = ids[i] if ids is not None else f"t{i + 1}"
        try:
            out.append(normalize(span, document, config, ident, ruleset, dct))
        except UnanchorableError as e:
            ttype = e.ttype or classify_type(span, document, ruleset)
            out.append(TimexAnnotation(ident, span, ttype, None))
    return out
