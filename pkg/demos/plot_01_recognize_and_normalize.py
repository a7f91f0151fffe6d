"""
Finding and anchoring temporal expressions
==========================================

A document is a list of tokenized sentences plus a creation date (DCT).
The recognizer slides windows of up to five tokens over each sentence and
keeps the maximal matches of the rule set; the normalizer then types each
span as DATE or DURATION and anchors it against the DCT.
"""

from timexlink import annotate_document, default_ruleset, make_document, recognize

doc = make_document("demo", "1997-06-12", [
    "The company said today that profits fell for seven years .".split(),
    "Sales peaked six months ago and will recover next Tuesday .".split(),
    "Analysts expected a few weeks of volatility in March 1995 .".split(),
])

# recognition alone gives bare spans
rules = default_ruleset()
for span in recognize(doc, rules):
    print("span:", doc.surface(span))

# the full pass types and anchors them
annotated = annotate_document(doc, rules)
for t in annotated.timexes:
    print(f"{doc.surface(t.span):<16} {t.ttype.value:<9} {t.value}")

# "six months ago" is exact month arithmetic on 1997-06-12, truncated to the
# month: 1996-12.  "a few weeks" cannot be counted, so its quantity is X.
