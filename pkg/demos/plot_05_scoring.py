"""
Scoring against gold annotations
================================

Extents are scored strictly: a predicted span earns credit only if its
sentence, start and end all equal a gold span.  Type and value accuracy are
then measured over the exactly matched spans, all-or-nothing, so "1990-05"
gets no credit against "1990-05-14".  The package ships a small
hand-annotated corpus to score the default rules against.
"""

import json

from timexlink import annotate_document, bundled_corpus, score_documents
from timexlink.evaluate import report_json_ready, report_table

gold = bundled_corpus()
print(len(gold), "documents,", sum(len(d.sentences) for d in gold), "sentences")

pred = [annotate_document(d) for d in gold]
report = score_documents(gold, pred)
print(report_table(report))

# the same report as JSON; undefined scores become "n/a"
print(json.dumps(report_json_ready(report), indent=1, sort_keys=True))

# what the rules missed or got wrong
for g, p in zip(gold, pred):
    found = {t.span: t for t in p.timexes}
    for t in g.timexes:
        hit = found.get(t.span)
        if hit is None:
            print(f"missed   {g.surface(t.span)!r}")
        elif hit.ttype != t.ttype:
            print(f"type     {g.surface(t.span)!r}: {hit.ttype.value} for {t.ttype.value}")
