import logging

import pytest

from timexlink.corpus import (EventAnnotation, RelationInstance, RelationLabel, Span,
                              TimexAnnotation, TimexType, make_document)
from timexlink.maxent import MaxEntModel, TrainingConfig, save_model
from timexlink.relations import (FEATURE_NAMES, FeatureError, Task, apply_labels,
                                 build_training_set, extract_features, label_relations,
                                 pair_task, schema_for, train_model)

WORDS = "The company reported that profits rose sharply on 12 June 1997 and more".split()


def event(ident, s, i, tense="PAST", aspect="NONE", polarity="pos", modality=""):
    return EventAnnotation(ident, Span(s, i, i + 1), tense, aspect, polarity, modality)


def c_doc(label=None, ident="d"):
    # event "reported" at token 2, timex "12" at token 7
    return make_document(
        ident, "1997-06-12", [WORDS],
        events=[event("e1", 0, 2)],
        timexes=[TimexAnnotation("t1", Span(0, 7, 8), TimexType.DATE, "1997-06-12")],
        relations=[RelationInstance("l1", "e1", "t1", label)])


def test_table_example_vector(lexicon):
    d = c_doc()
    vec = dict(extract_features(d.relations[0], d, lexicon))
    assert vec["arg1_tense"] == "PAST"
    assert vec["timex_type"] == "DATE"
    assert vec["timex_value"] == "1997-06-12"
    assert vec["signal_text"] == "NONE"
    assert vec["arg1_before_arg2"] == "true"
    assert vec["arg1_tokbucket"] == "0"
    assert vec["arg2_tokbucket"] == "1"
    assert vec["arg1_kind"] == "event" and vec["arg2_kind"] == "timex"
    assert vec["arg1_text"] == "reported"
    # timex arguments carry no event attributes
    assert vec["arg2_tense"] == vec["arg2_modality"] == "NONE"
    assert vec["arg1_modality"] == "NONE"


def test_same_tense_pair(lexicon):
    d = make_document("d", "1997-06-12", [["He", "left", "."], ["She", "arrived", "."]],
                      events=[event("e1", 0, 1), event("e2", 1, 1)],
                      relations=[RelationInstance("l1", "e1", "e2")])
    vec = dict(extract_features(d.relations[0], d, lexicon))
    assert vec["same_tense"] == "true"
    assert vec["same_aspect"] == "true"
    assert vec["timex_type"] == vec["timex_value"] == "NONE"
    # the pair spans two sentences, so no signal is associated
    assert vec["signal_text"] == "NONE"


def test_throughout_signal(lexicon):
    tokens = "Prices fell throughout June".split()
    d = make_document("d", "1997-06-12", [tokens], events=[event("e1", 0, 1)],
                      timexes=[TimexAnnotation("t1", Span(0, 3, 4), TimexType.DATE, "1997-06")],
                      relations=[RelationInstance("l1", "e1", "t1")])
    vec = dict(extract_features(d.relations[0], d, lexicon))
    assert vec["signal_text"] == "throughout"
    assert vec["signal_hint"] == "overlap"
    assert vec["arg1_before_signal"] == "true"
    assert vec["signal_before_arg2"] == "true"
    off = dict(extract_features(d.relations[0], d, lexicon, use_signals=False))
    assert all(off[k] == "NONE" for k in ("signal_text", "signal_hint",
                                          "arg1_before_signal", "signal_before_arg2"))


def test_signal_order_booleans_follow_argument_order(lexicon):
    tokens = "Prices fell throughout June".split()
    d = make_document("d", "1997-06-12", [tokens], events=[event("e1", 0, 1)],
                      timexes=[TimexAnnotation("t1", Span(0, 3, 4), TimexType.DATE, "1997-06")],
                      relations=[RelationInstance("l1", "t1", "e1")])
    vec = dict(extract_features(d.relations[0], d, lexicon))
    assert vec["arg1_before_signal"] == "false"
    assert vec["signal_before_arg2"] == "false"
    assert vec["arg1_before_arg2"] == "false"
    assert vec["arg1_kind"] == "timex"


def test_schema_order_is_fixed(lexicon):
    for d in (c_doc(), make_document("d", "1997-06-12", [["a", "b"], ["c"]],
                                     events=[event("e1", 0, 0), event("e2", 1, 0, "PRESENT")],
                                     relations=[RelationInstance("l", "e1", "e2")])):
        names = [n for n, _ in extract_features(d.relations[0], d, lexicon)]
        assert names == list(FEATURE_NAMES)
        assert len(set(names)) == len(names)


def test_tokbucket_is_floor_division(lexicon):
    tokens = [f"w{i}" for i in range(20)]
    for start in (0, 4, 5, 9, 10, 19):
        other = 0 if start else 1
        d = make_document("d", "1997-06-12", [tokens], events=[event("e1", 0, start)],
                          timexes=[TimexAnnotation("t1", Span(0, other, other + 1))],
                          relations=[RelationInstance("l", "e1", "t1")])
        vec = dict(extract_features(d.relations[0], d, lexicon))
        assert vec["arg1_tokbucket"] == str(start // 5)
        # a recognized-but-unnormalized timex has no type or value
        assert vec["timex_type"] == vec["timex_value"] == "NONE"


def test_surface_text_lower_cased(lexicon):
    d = make_document("d", "1997-06-12", [["REPORTED", "Today"]], events=[event("e1", 0, 0)],
                      timexes=[TimexAnnotation("t1", Span(0, 1, 2), TimexType.DATE, "PRESENT_REF")],
                      relations=[RelationInstance("l", "e1", "t1")])
    vec = dict(extract_features(d.relations[0], d, lexicon))
    assert vec["arg1_text"] == "reported" and vec["arg2_text"] == "today"


def test_timex_pair_rejected(lexicon):
    d = make_document("d", "1997-06-12", [["today", "now"]],
                      timexes=[TimexAnnotation("t1", Span(0, 0, 1)), TimexAnnotation("t2", Span(0, 1, 2))],
                      relations=[RelationInstance("l", "t1", "t2")])
    with pytest.raises(FeatureError):
        extract_features(d.relations[0], d, lexicon)


def mixed_doc():
    return make_document(
        "m", "1997-06-12", [["He", "left", "today"], ["She", "stayed"]],
        events=[event("e1", 0, 1), event("e2", 1, 1)],
        timexes=[TimexAnnotation("t1", Span(0, 2, 3), TimexType.DATE, "PRESENT_REF")],
        relations=[RelationInstance("c", "e1", "t1", RelationLabel.OVERLAP),
                   RelationInstance("e", "e1", "e2", RelationLabel.BEFORE)])


def test_pair_task_shapes():
    d = mixed_doc()
    assert [pair_task(r, d) for r in d.relations] == [Task.C, Task.E]


def test_training_set_cardinality(lexicon):
    docs = [c_doc(RelationLabel.BEFORE, f"d{i}") for i in range(3)]
    data = build_training_set(docs, Task.C, lexicon)
    assert len(data) == 3
    assert all(label == "before" for _, label in data)


def test_shape_filter_counts_skips(lexicon, caplog):
    with caplog.at_level(logging.WARNING):
        data = build_training_set([mixed_doc()], Task.C, lexicon)
    assert len(data) == 1 and data[0][1] == "overlap"
    assert "skipped 1 relation" in caplog.text


def test_empty_corpus(lexicon):
    assert build_training_set([], Task.C, lexicon) == []


def test_unlabeled_training_instance(lexicon):
    with pytest.raises(ValueError, match="no gold label"):
        build_training_set([c_doc()], Task.C, lexicon)


def test_degenerate_model_labels_its_class(lexicon):
    model = train_model([c_doc(RelationLabel.AFTER)], Task.C, lexicon)
    assert label_relations([c_doc()], Task.C, model, lexicon) == [("l1", RelationLabel.AFTER)]


def separable_docs():
    out = []
    for i, (word, label) in enumerate([("before", RelationLabel.BEFORE), ("after", RelationLabel.AFTER)] * 4):
        tokens = ["It", "happened", word, "noon"]
        out.append(make_document(f"s{i}", "1997-06-12", [tokens], events=[event("e1", 0, 1)],
                                 timexes=[TimexAnnotation("t1", Span(0, 3, 4), TimexType.DATE, "1997-06-12")],
                                 relations=[RelationInstance("l1", "e1", "t1", label)]))
    return out


def test_separable_model_recovers_training_labels(lexicon):
    docs = separable_docs()
    model = train_model(docs, Task.C, lexicon, TrainingConfig(l2_sigma2=10.0))
    got = label_relations(docs, Task.C, model, lexicon)
    assert [l for _, l in got] == [d.relations[0].label for d in docs]


def test_zero_pairs_gives_empty_output(lexicon):
    model = MaxEntModel(("before", "after"), {}, schema_version=schema_for(Task.E))
    assert label_relations([c_doc()], Task.E, model, lexicon) == []
    assert label_relations([], Task.E, model, lexicon) == []


def test_schema_mismatch(lexicon):
    model = MaxEntModel(("before",), {}, schema_version=schema_for(Task.C))
    with pytest.raises(ValueError, match="schema"):
        label_relations([c_doc()], Task.E, model, lexicon)


def test_labeling_is_deterministic(lexicon):
    docs = separable_docs()
    a = train_model(docs, Task.C, lexicon)
    b = train_model(docs, Task.C, lexicon)
    assert save_model(a) == save_model(b)
    assert label_relations(docs, Task.C, a, lexicon) == label_relations(docs, Task.C, b, lexicon)


def test_apply_labels_only_touches_named_ids():
    d = mixed_doc()
    out = apply_labels(d, {"c": RelationLabel.VAGUE})
    assert [r.label for r in out.relations] == [RelationLabel.VAGUE, RelationLabel.BEFORE]
