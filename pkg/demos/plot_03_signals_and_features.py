"""
Signal words and relation features
==================================

A signal is a phrase such as "throughout" or "soon after" that hints at how
an event and a time are ordered.  Each event/timex pair gets a fixed vector
of categorical features: event attributes, timex type and value, the
nearest signal in the same clause, and position information.
"""

from timexlink import (EventAnnotation, RelationInstance, Span, TimexAnnotation, TimexType,
                       default_lexicon, make_document)
from timexlink.relations import extract_features
from timexlink.signals import identify_signals

lexicon = default_lexicon()
print(len(lexicon.entries), "signal phrases, e.g.", sorted(lexicon.entries)[:5])

tokens = "Prices rose throughout June , soon after the vote .".split()
doc = make_document(
    "demo", "1997-06-12", [tokens],
    events=[EventAnnotation("e1", Span(0, 1, 2), "PAST", "NONE", "pos", "")],
    timexes=[TimexAnnotation("t1", Span(0, 3, 4), TimexType.DATE, "1997-06")],
    relations=[RelationInstance("l1", "e1", "t1")],
)

for m in identify_signals(doc.sentences[0], lexicon):
    print("signal:", m.phrase, "->", m.hint.value, "at", m.span.start)

# "soon after" sits in the next clause, so "throughout" is the one used
for name, value in extract_features(doc.relations[0], doc, lexicon):
    print(f"  {name:<20} {value}")
