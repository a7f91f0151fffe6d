"""Closed word lists shared by the ruleset and the normalizer."""

import re

UNITS_WORDS = {
    "zero": 0, "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6,
    "seven": 7, "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12,
    "thirteen": 13, "fourteen": 14, "fifteen": 15, "sixteen": 16,
    "seventeen": 17, "eighteen": 18, "nineteen": 19,
}
TENS_WORDS = {
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50, "sixty": 60,
    "seventy": 70, "eighty": 80, "ninety": 90,
}
SCALE_WORDS = {"hundred": 100, "thousand": 1000, "million": 1_000_000}
ARTICLES = ("a", "an")
IMPRECISE_WORDS = ("few", "several", "some")

MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11,
    "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7, "aug": 8,
    "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}
WEEKDAYS = {
    "monday": 0, "tuesday": 1, "wednesday": 2, "thursday": 3, "friday": 4,
    "saturday": 5, "sunday": 6,
}

# Unit words map to DAY/WEEK/MONTH/QUARTER/YEAR names (see normalizer.TemporalUnit).
UNIT_WORDS = {
    "day": "DAY", "days": "DAY",
    "week": "WEEK", "weeks": "WEEK",
    "month": "MONTH", "months": "MONTH",
    "quarter": "QUARTER", "quarters": "QUARTER",
    "year": "YEAR", "years": "YEAR",
}

PAST_WORDS = ("last", "ago", "past", "previous")
FUTURE_WORDS = ("next", "coming", "in")
FUTURE_PHRASES = (("from", "now"),)
PRESENT_WORDS = ("this", "current")


def _alt(words):
    return "(?:" + "|".join(sorted(map(re.escape, words), key=lambda w: (-len(w), w))) + ")"


_simple = list(UNITS_WORDS) + list(TENS_WORDS)
_compound = r"(?:%s)(?:-%s)?" % (_alt(TENS_WORDS), _alt([w for w in UNITS_WORDS if UNITS_WORDS[w] < 10]))

MACROS = {
    "NUMWORD": "(?:%s|%s)" % (_compound, _alt(_simple)),
    "SCALE": _alt(SCALE_WORDS),
    "DIGITS": r"\d{1,3}(?:,\d{3})*",
    "IMPRECISE": _alt(IMPRECISE_WORDS),
    "MONTH": _alt([m for m in MONTHS if len(m) > 3 or m == "may"]),
    "MONTHABBR": _alt([m for m in MONTHS if len(m) <= 4 and m != "may"]) + r"\.?",
    "WEEKDAY": _alt(WEEKDAYS),
    "UNIT": _alt(UNIT_WORDS),
    "DAYNUM": r"(?:[1-9]|[12]\d|3[01])(?:st|nd|rd|th)?",
    "YEAR": r"(?:1[6-9]|20)\d\d",
}
MACROS["NUMBER"] = "(?:{n}|{d})(?: (?:{n}|{s}))*".format(
    n=MACROS["NUMWORD"], d=MACROS["DIGITS"], s=MACROS["SCALE"])
MACROS["QTY"] = "(?:{num}|an?|an? {imp}|{imp}|a couple of)".format(
    num=MACROS["NUMBER"], imp=MACROS["IMPRECISE"])
