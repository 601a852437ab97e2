"""One test per acceptance criterion.  Each records a PASS/FAIL line that is
printed in the terminal summary (and immediately, when run with ``-s``)."""

import random
import time

from conftest import ACCEPTANCE
from oracles import brute_frontier
from rfcheck import fixtures
from rfcheck.closure import normalize
from rfcheck.frontier import available_attachment_points, right_frontier, right_frontier_union
from rfcheck.sdrs import ComplexSegment, Kind, Label, build_sdrs, classify, components
from rfcheck.synth import planted_corpus, random_sdrs
from rfcheck.validator import (
    ReplayConfig,
    Status,
    constituent_distance,
    corpus_stats,
    prefix_graph,
    replay,
)

N_RANDOM = 1000
SEED = 20240601


def record(n, name, ok, detail):
    ACCEPTANCE[n] = (name, ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} [{n}] {name}: {detail}")
    assert ok, detail


def random_graphs():
    rng = random.Random(SEED)
    return [random_sdrs(rng, max_constituents=12) for _ in range(N_RANDOM)]


def test_1_worked_example():
    t0 = time.perf_counter()
    doc = fixtures.john_evening()
    after7 = set(right_frontier(doc.sdrs, "pi7"))
    g6 = prefix_graph(doc, 6)
    after6 = set(right_frontier(g6, "pi6"))
    elapsed = time.perf_counter() - t0
    ok = (
        after7 == {"pi7", "pi'", "pi1"}
        and after6 == {"pi6", "pi5", "pi''", "pi2", "pi'", "pi1"}
        and elapsed < 1.0
    )
    record(1, "worked example frontier", ok, f"RF(pi7)={sorted(after7)} RF(pi6)={sorted(after6)} {elapsed:.3f}s")


def test_2_violation_fixture():
    doc = fixtures.enumeration()

    def statuses(cfg):
        return {(v.subject, v.point): v.status for v in replay(doc, cfg) if v.is_decision}

    on = statuses(ReplayConfig())
    off = statuses(ReplayConfig(normalize=False))
    frontier = set(right_frontier_union(prefix_graph(doc, 5)))
    raw_frontier = set(right_frontier_union(prefix_graph(doc, 5, normalize=False)))
    ok = (
        on[("79", "75")] is Status.VIOLATION
        and on[("79", "74")] is Status.COMPLIANT
        and frontier == {"78", "77", "[75,77]", "74"}
        and off[("79", "74")] is Status.VIOLATION
        and "[75,77]" not in raw_frontier
    )
    record(
        2,
        "enumeration violation fixture",
        ok,
        f"79->75 {on[('79', '75')].value}, 79->74 {on[('79', '74')].value} "
        f"(raw {off[('79', '74')].value}), RF@78={sorted(frontier)}",
    )


def test_3_oracle_equivalence():
    t0 = time.perf_counter()
    mismatches = 0
    graphs = random_graphs()
    for g in graphs:
        for comp in components(g):
            if set(right_frontier(g, comp.last)) != brute_frontier(g, comp.last)[0]:
                mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 30
    record(3, "frontier vs brute-force oracle", ok, f"{mismatches} mismatches on {len(graphs)} graphs, {elapsed:.2f}s")


def test_4_closure_idempotence_and_conservation():
    bad_idem = bad_cons = 0
    for g in random_graphs():
        out = normalize(g)
        if normalize(out) != out:
            bad_idem += 1
        keys = set(out.relation_keys)
        lifted = {r.lifted_from for r in out.relations if r.lifted_from is not None}
        if not all(r.key in keys or r.key in lifted for r in g.relations if r.annotated):
            bad_cons += 1
    ok = bad_idem == 0 and bad_cons == 0
    record(4, "closure idempotence and conservation", ok, f"{bad_idem} non-idempotent, {bad_cons} lost edges of {N_RANDOM}")


def test_5_planted_metrics():
    t0 = time.perf_counter()
    planted = planted_corpus(n_docs=100, n_edus=20, seed=SEED)
    stats = corpus_stats(planted.documents)
    elapsed = time.perf_counter() - t0
    checks = {
        "rfc_edu": stats.rfc_edu == planted.rfc_edu,
        "rfc_r": stats.rfc_r == planted.rfc_r,
        "histogram": stats.distance_histogram == planted.distance_histogram,
        "violations_per_doc": stats.violations_per_doc == planted.violations_per_doc,
    }
    ok = all(checks.values()) and elapsed < 10
    record(
        5,
        "planted-fault metric exactness",
        ok,
        f"rfc_edu={stats.rfc_edu:.4f} rfc_r={stats.rfc_r:.4f} "
        f"mismatched={[k for k, v in checks.items() if not v]} {elapsed:.2f}s",
    )


def test_6_distance_formula():
    edus = [Label(f"e{i}", Kind.EDU, i) for i in range(6)]
    g = build_sdrs(
        edus,
        segments=[
            ComplexSegment("rank1", ("e3", "e4")),
            ComplexSegment("inner", ("e1", "e3")),
            ComplexSegment("rank2", ("inner", "e4")),
        ],
    )
    d1, d2 = constituent_distance(g, "rank1"), constituent_distance(g, "rank2")
    record(6, "segment distance", (d1, d2) == (3, 6), f"rank 1 -> {d1}, rank 2 -> {d2}")


def test_7_monotone_availability():
    sub, coord, structural = classify("Elaboration"), classify("Narration"), classify("Contrast")
    bad = 0
    for g in random_graphs():
        a = available_attachment_points(g, structural)
        b = available_attachment_points(g, sub)
        c = available_attachment_points(g, coord)
        bad += not (a >= b >= c)
    record(7, "availability monotonicity", bad == 0, f"{bad} counterexamples on {N_RANDOM} graphs")


def test_8_garlic_gate():
    g = prefix_graph(fixtures.mary_garlic(), 3)
    sub = "pi2" in available_attachment_points(g, classify("EntityElaboration"))
    coord = "pi2" in available_attachment_points(g, classify("Narration"))
    record(8, "open constituent gate", sub and not coord, f"subordinating={sub} coordinating={coord}")
