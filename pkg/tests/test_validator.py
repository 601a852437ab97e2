import random

import pytest
from hypothesis import given, settings, strategies as st

from rfcheck import fixtures
from rfcheck.corpus import document
from rfcheck.sdrs import ComplexSegment, Kind, Label, build_sdrs
from rfcheck.synth import planted_corpus
from rfcheck.validator import (
    AttachmentVerdict,
    EmptyInput,
    ReplayConfig,
    Status,
    constituent_distance,
    corpus_stats,
    prefix_graph,
    replay,
    rfc_edu_score,
    rfc_r_score,
    validate_corpus,
)

RAW = ReplayConfig(normalize=False)


def by_pair(verdicts):
    return {(v.subject, v.point): v for v in verdicts if v.is_decision}


def test_prefix_single(evening):
    g = prefix_graph(evening, 1)
    assert set(g.labels) == {"pi1"}


def test_prefix_six_reduces_segment(evening):
    g = prefix_graph(evening, 6, normalize=False)
    full = evening.sdrs
    assert "pi7" not in g.labels
    assert g.members("pi'") == ("pi2",)
    assert g.members("pi''") == full.members("pi''")
    expected = {r.key for r in full.relations if "pi7" not in (r.source, r.target)}
    expected.discard(("Narration", "pi2", "pi7"))
    assert set(g.relation_keys) == expected


def test_prefix_up_to_78(enumeration):
    g = prefix_graph(enumeration, 5, normalize=False)
    assert set(g.labels) == {"74", "75", "76", "77", "78"}
    assert {r.key for r in g.relations} == {
        ("Comment", "74", "75"),
        ("EntityElaboration", "75", "76"),
        ("Continuation", "75", "77"),
        ("EntityElaboration", "77", "78"),
    }


def test_evening_all_compliant(evening):
    verdicts = replay(evening)
    assert len(verdicts) == len(evening.relations)
    assert all(v.status is Status.COMPLIANT for v in verdicts)
    assert rfc_edu_score(verdicts) == 1.0
    assert corpus_stats([evening]).violations_per_doc == {"john-evening": 0}


def test_evening_pi7_nonlocal_nonadjacent(evening):
    v = by_pair(replay(evening))[("pi7", "pi2")]
    assert v.nonadjacent and v.distance >= 2


def test_enumeration_verdicts(enumeration):
    v = by_pair(replay(enumeration))
    assert v[("79", "75")].status is Status.VIOLATION
    assert v[("79", "74")].status is Status.COMPLIANT


def test_normalization_rescue(enumeration):
    def n_viol(cfg):
        return sum(v.status.violation for v in replay(enumeration, cfg))

    assert n_viol(RAW) >= n_viol(ReplayConfig()) + 1
    assert by_pair(replay(enumeration, RAW))[("79", "74")].status is Status.VIOLATION


def test_structural_exempt(garlic, evening):
    v = by_pair(replay(garlic))[("pi2", "pi1")]
    assert v.status is Status.EXEMPT
    assert rfc_r_score(replay(garlic)) == 1.0


def test_complex_segment_judged_before_first_member(evening):
    v = by_pair(replay(evening))[("pi'", "pi1")]
    assert v.context == 1 and v.step == 7


def test_postponed_when_target_precedes_source():
    doc = document(
        "cataphor",
        [("a", "It was cold."), ("b", "Winter came.")],
        [("Explanation", "b", "a")],
    )
    (v,) = replay(doc)
    assert v.subject == "b" and v.point == "a"
    assert v.status is Status.POSTPONED_COMPLIANT


def test_point_inside_subject_span():
    # b sits between the members of s, so it is complete before s is
    doc = document(
        "inner",
        [("a", "x."), ("b", "y."), ("c", "z.")],
        [("Elaboration", "s", "b")],
        [("s", ["a", "c"])],
    )
    v = by_pair(replay(doc))[("s", "b")]
    assert v.context == 2
    assert v.status is Status.POSTPONED_COMPLIANT


def test_disconnected_components_count_as_violations():
    doc = document("split", [("a", "x."), ("b", "y."), ("c", "z.")], [("Narration", "a", "b")])
    verdicts = replay(doc)
    notes = [v.note for v in verdicts]
    assert notes.count("disconnected") == 1
    stats = corpus_stats([doc])
    assert stats.violations_per_doc == {"split": 1}
    assert stats.rfc_r == 1.0 and stats.disconnections == 1


def _verdict(subject, attached, edus, status):
    from rfcheck.sdrs import relation

    return AttachmentVerdict(
        doc_id="d",
        subject=subject,
        point="p",
        decision=relation("Elaboration", "p", attached),
        status=status,
        attached=attached,
        attached_edus=edus,
    )


def test_rfc_edu_nine_of_ten():
    vs = [
        _verdict(f"e{i}", f"e{i}", (f"e{i}",), Status.COMPLIANT if i else Status.VIOLATION)
        for i in range(10)
    ]
    assert rfc_edu_score(vs) == pytest.approx(0.9)


def test_rfc_edu_rescued_by_segment():
    vs = [
        _verdict("e1", "e1", ("e1",), Status.VIOLATION),
        _verdict("s", "s", ("e1", "e2"), Status.COMPLIANT),
    ]
    assert rfc_edu_score(vs) == 1.0


def test_rfc_r_two_decisions_one_good():
    vs = [
        _verdict("e1", "e1", ("e1",), Status.COMPLIANT),
        _verdict("e1", "e1", ("e1",), Status.VIOLATION),
    ]
    assert rfc_r_score(vs) == 0.5
    assert rfc_edu_score(vs) == 1.0


def test_scores_need_decisions():
    with pytest.raises(EmptyInput):
        rfc_r_score([])
    with pytest.raises(EmptyInput):
        validate_corpus([])


def test_constituent_distance_last_is_zero(evening):
    g = evening.sdrs
    assert constituent_distance(g, g.last) == 0


def _nested():
    edus = [Label(f"e{i}", Kind.EDU, i) for i in range(6)]
    segs = [ComplexSegment("inner", ("e1", "e3")), ComplexSegment("outer", ("inner", "e4"))]
    return build_sdrs(edus, segments=segs + [ComplexSegment("flat", ("e3", "e4"))])


def test_distance_rank_one():
    g = _nested()
    # farthest member e3 is 2 away from e5
    assert constituent_distance(g, "flat") == 3


def test_distance_rank_two():
    g = _nested()
    # farthest EDU e1 is 4 away, rank 2
    assert constituent_distance(g, "outer") == 6


def test_single_edu_docs_open_fraction():
    docs = [document(f"d{i}", [("a", "Alone.")]) for i in range(3)]
    stats = corpus_stats(docs)
    assert stats.open_fraction == 1.0
    assert stats.distance_histogram == {}
    assert stats.rfc_r is None


def test_coordinating_open_rescue_count():
    doc = document(
        "garlic-narr",
        [("pi1", "a."), ("pi2", "b."), ("pi3", "c."), ("pi4", "d.")],
        [("Parallel", "pi1", "pi2"), ("Explanation", "pi", "pi3"), ("Narration", "pi2", "pi4")],
        [("pi", ["pi1", "pi2"])],
    )
    assert corpus_stats([doc]).coordinating_open_rescues == 1
    lenient = corpus_stats([doc], ReplayConfig(coordinating_open_constituents=True))
    assert lenient.violations_per_doc == {"garlic-narr": 0}


def test_planted_corpus_exact():
    planted = planted_corpus(n_docs=20, n_edus=12, seed=3)
    stats = corpus_stats(planted.documents)
    assert stats.rfc_r == planted.rfc_r
    assert stats.rfc_edu == planted.rfc_edu
    assert stats.distance_histogram == planted.distance_histogram
    assert stats.violations_per_doc == planted.violations_per_doc


seeds = st.integers(min_value=0, max_value=2**16)


@settings(max_examples=30)
@given(seeds)
def test_one_decision_per_edu_scores_agree(seed):
    planted = planted_corpus(n_docs=3, n_edus=8, second_rate=0.0, structural_rate=0.0, seed=seed)
    verdicts = validate_corpus(planted.documents).verdicts
    assert rfc_edu_score(verdicts) == rfc_r_score(verdicts)


@settings(max_examples=30)
@given(seeds)
def test_replay_is_deterministic(seed):
    planted = planted_corpus(n_docs=2, n_edus=10, seed=seed)
    for doc in planted.documents:
        assert replay(doc) == replay(doc)


@settings(max_examples=30)
@given(seeds)
def test_every_decision_judged_once_with_both_endpoints(seed):
    from rfcheck.synth import random_sdrs
    from rfcheck.corpus import document as make

    g = random_sdrs(random.Random(seed))
    doc = make(
        "r",
        [(e, e) for e in g.edus],
        [(r.rel.name, r.source, r.target) for r in g.relations],
        [(s, list(seg.members)) for s, seg in g.segments.items()],
    )
    verdicts = [v for v in replay(doc) if v.is_decision]
    assert sorted(v.decision.key for v in verdicts) == sorted(doc.sdrs.relation_keys)
    for v in verdicts:
        ctx = prefix_graph(doc, v.context)
        assert v.point in ctx.labels


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_segment_distance_exceeds_members(seed):
    from rfcheck.synth import random_sdrs

    g = random_sdrs(random.Random(seed))
    for s in g.segments:
        for m in g.members(s):
            assert constituent_distance(g, s) >= 1 + constituent_distance(g, m)
