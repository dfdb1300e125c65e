"""The seven acceptance criteria, one test each.

Each test records a single ``PASS``/``FAIL`` line that pytest prints in its
terminal summary.  Running this file directly prints the same lines:

    python3 tests/test_acceptance.py
"""
from __future__ import annotations

import hashlib
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest

HERE = Path(__file__).parent
if str(HERE) not in sys.path:
    sys.path.insert(0, str(HERE))

from scfe import io  # noqa: E402
from scfe.ball_models import (  # noqa: E402
    Ball,
    BallModel,
    Graph,
    balls_intersect,
    intersection_graph,
    is_proper_model,
    is_unit_model,
    slack,
)
from scfe.generators import (  # noqa: E402
    complete_signed_from_positive,
    interval_model,
    random_nsi_model,
    random_signed_drawing,
    random_unit_model,
    tree_graph_model,
)
from scfe.metric_tree import Edge, Location, RealTree, center, distance, on_edge  # noqa: E402
from scfe.model_transforms import nsi_to_unit, unit_to_proper  # noqa: E402
from scfe.pipeline import roundtrip_check  # noqa: E402
from scfe.recognition import is_chordal, is_strongly_chordal, nsi_necessary_filter  # noqa: E402
from scfe.render import render  # noqa: E402
from scfe.signed_graphs import check_valid_drawing, check_valid_drawing_by_extremes  # noqa: E402

import conftest  # noqa: E402
from oracles import UnitOracle, ball_pair_oracle, has_strong_elimination_ordering  # noqa: E402

pytestmark = pytest.mark.acceptance


def _record(number: int, ok: bool, detail: str) -> None:
    line = f"[{number}] {'PASS' if ok else 'FAIL'}: {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


# -- instance builders shared by criteria 2 and 6 --------------------------


def _random_tree_graph(rng: random.Random, n: int) -> Graph:
    labels = [f"t{i}" for i in range(n)]
    return Graph.build(labels, [(labels[i], labels[rng.randrange(i)]) for i in range(1, n)])


def _random_intervals(rng: random.Random, n: int):
    out = []
    for k in range(n):
        lo = Fraction(rng.randint(0, 40), rng.randint(1, 4))
        out.append((lo, lo + Fraction(rng.randint(0, 12), rng.randint(1, 4)), f"i{k}"))
    return out


def roundtrip_instances(count: int = 500):
    """Deterministic mix of tree-graph, interval and random unit models."""
    for i in range(count):
        rng = random.Random(i)
        n = 1 + i % 12
        kind = i % 3
        if kind == 0:
            m = tree_graph_model(_random_tree_graph(rng, n))
        elif kind == 1:
            m = interval_model(_random_intervals(rng, n))
        else:
            m = random_unit_model(n, i)
        yield complete_signed_from_positive(intersection_graph(m)), m


# -- criterion 1 ----------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    bad = []
    for seed in range(1000):
        m = random_nsi_model(1 + seed % 12, seed)
        g = intersection_graph(m)
        unit = nsi_to_unit(m)[0]
        proper = unit_to_proper(unit)[0]
        ok = (
            intersection_graph(unit) == g
            and intersection_graph(proper) == g
            and is_unit_model(proper)
            and is_proper_model(proper)
        )
        if not ok:
            bad.append(seed)
    secs = time.perf_counter() - start
    ok = not bad and secs < 30
    return ok, f"1000 random NSI models, {len(bad)} failures {bad[:5]}, {secs:.1f}s"


def test_criterion_1_transform_preservation():
    ok, detail = criterion_1()
    _record(1, ok, detail)
    assert ok, detail


# -- criterion 2 ----------------------------------------------------------


def criterion_2():
    start = time.perf_counter()
    bad = [i for i, (s, m) in enumerate(roundtrip_instances()) if not roundtrip_check(s, m)]
    secs = time.perf_counter() - start
    ok = not bad and secs < 30
    return ok, f"500 round-trip instances, {len(bad)} failures {bad[:5]}, {secs:.1f}s"


def test_criterion_2_roundtrip():
    ok, detail = criterion_2()
    _record(2, ok, detail)
    assert ok, detail


# -- criterion 3 ----------------------------------------------------------


def _integer_tree(rng: random.Random) -> RealTree:
    n = rng.randint(2, 12)
    nodes = tuple(f"n{i}" for i in range(n))
    edges = tuple(
        Edge(f"e{i - 1}", nodes[rng.randrange(i)], nodes[i], Fraction(rng.randint(1, 5))) for i in range(1, n)
    )
    return RealTree(nodes, edges)


def _doubled(t: RealTree):
    """Same tree with every length doubled, so medians of integer points are grid points."""
    t2 = RealTree(t.nodes, tuple(Edge(e.id, e.u, e.v, e.length * 2) for e in t.edges))

    def to2(loc: Location) -> Location:
        return loc if loc.node is not None else Location(edge=loc.edge, offset=loc.offset * 2)

    return t2, to2


def _grid_vertex(loc: Location):
    if loc.node is not None:
        return loc.node
    assert loc.offset.denominator == 1
    return (loc.edge, int(loc.offset))


def criterion_3():
    mismatches = 0
    pairs = triples = 0
    for k in range(20):
        rng = random.Random(1000 + k)
        t = _integer_tree(rng)
        t2, to2 = _doubled(t)
        oracle = UnitOracle(t2)
        nodes = [Location.at_node(n) for n in t.nodes]
        for a, b in combinations(nodes, 2):
            pairs += 1
            mismatches += distance(t, a, b) * 2 != oracle.dist(a.node, b.node)
        leaves = [n for n in nodes if len(t.incident(n.node)) == 1]
        for x, y, z in combinations(leaves, 3):
            c = center(t, x, y, z)
            mismatches += _grid_vertex(to2(c)) != oracle.median(x.node, y.node, z.node)
        for _ in range(10):
            pts = []
            for _ in range(3):
                e = rng.choice(t.edges)
                pts.append(on_edge(t, e.id, rng.randint(0, int(e.length))))
            triples += 1
            x, y, z = pts
            vx, vy, vz = (_grid_vertex(to2(p)) for p in pts)
            mismatches += _grid_vertex(to2(center(t, x, y, z))) != oracle.median(vx, vy, vz)
            for p, q, vp, vq in ((x, y, vx, vy), (y, z, vy, vz), (x, z, vx, vz)):
                mismatches += distance(t, p, q) * 2 != oracle.dist(vp, vq)
    ok = mismatches == 0 and triples == 200
    return ok, f"20 integer trees, {pairs} node pairs, {triples} random triples, {mismatches} mismatches"


def test_criterion_3_metric_oracle():
    ok, detail = criterion_3()
    _record(3, ok, detail)
    assert ok, detail


# -- criterion 4 ----------------------------------------------------------


def _rational_point(rng: random.Random, t: RealTree) -> Location:
    if rng.randrange(3) == 0:
        return Location.at_node(rng.choice(t.nodes))
    e = rng.choice(t.edges)
    q = rng.randint(1, 4)
    return on_edge(t, e.id, Fraction(rng.randint(0, int(e.length) * q), q))


def criterion_4():
    disagreements = 0
    for k in range(2000):
        rng = random.Random(50_000 + k)
        t = _integer_tree(rng)
        cu, cv = _rational_point(rng, t), _rational_point(rng, t)
        ru = Fraction(rng.randint(0, 16), rng.randint(1, 4))
        rv = Fraction(rng.randint(0, 16), rng.randint(1, 4))
        m = BallModel(t, (Ball("u", cu, ru), Ball("v", cv, rv)))
        verdict = balls_intersect(m, "u", "v")
        witness, _, _ = ball_pair_oracle(t, cu, ru, cv, rv)
        disagreements += verdict != witness or (slack(m, "u", "v") >= 0) != verdict
    return disagreements == 0, f"2000 ball pairs, {disagreements} disagreements with the witness-point oracle"


def test_criterion_4_ball_intersection():
    ok, detail = criterion_4()
    _record(4, ok, detail)
    assert ok, detail


# -- criterion 5 ----------------------------------------------------------

# (signed graph, drawing, documented verdict, documented violations)
DOCUMENTED = [
    ("p3_signed.json", "p3_valid_drawing.json", True, []),
    ("p3_signed.json", "p3_invalid_drawing.json", False, [("a", "b", "c")]),
    ("k13_signed.json", "k13_valid_drawing.json", True, []),
    ("k13_signed.json", "k13_invalid_drawing.json", False, [("z", "h", "y")]),
]


def criterion_5():
    problems = []
    for signed, drawing, verdict, violations in DOCUMENTED:
        s = io.signed_from_dict(conftest.fixture_doc(signed))
        d = io.drawing_from_dict(conftest.fixture_doc(drawing))
        got = check_valid_drawing(s, d)
        if got != (verdict, violations):
            problems.append(f"{drawing}: documented {(verdict, violations)}, got {got}")
    disagree = 0
    for seed in range(500):
        s, d = random_signed_drawing(2 + seed % 9, seed, complete=bool(seed % 2))
        disagree += check_valid_drawing(s, d)[0] != check_valid_drawing_by_extremes(s, d)
    if disagree:
        problems.append(f"{disagree}/500 random drawings where the two formulations differ")
    detail = "fixtures match and 500 random drawings agree" if not problems else "; ".join(problems)
    return not problems, detail


def test_criterion_5_drawing_verifier():
    ok, detail = criterion_5()
    _record(5, ok, detail)
    assert ok, detail


# -- criterion 6 ----------------------------------------------------------

C4 = Graph.build("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
SUN3 = Graph.build(
    "abcxyz",
    [("a", "b"), ("b", "c"), ("a", "c"), ("x", "a"), ("x", "b"), ("y", "b"), ("y", "c"), ("z", "a"), ("z", "c")],
)


def criterion_6():
    problems = []
    refuted = [i for i, (s, m) in enumerate(roundtrip_instances()) if nsi_necessary_filter(intersection_graph(m)).refuted]
    if refuted:
        problems.append(f"{len(refuted)} NSI instances refuted {refuted[:5]}")
    c4 = nsi_necessary_filter(C4)
    if not (c4.refuted and c4.reason == "not chordal" and not is_chordal(C4)):
        problems.append("C4 not refuted as non-chordal")
    sun = nsi_necessary_filter(SUN3)
    if not (sun.refuted and sun.reason == "not strongly chordal"):
        problems.append("3-sun not refuted as non-strongly-chordal")
    graphs = [h for h in nx.graph_atlas_g() if h.number_of_nodes() <= 6]
    wrong = 0
    for h in graphs:
        g = Graph.build([str(v) for v in h.nodes], [(str(a), str(b)) for a, b in h.edges])
        adj = {v: set(ns) for v, ns in g.adjacency().items()}
        wrong += bool(is_strongly_chordal(g)) != has_strong_elimination_ordering(adj)
    if wrong:
        problems.append(f"{wrong} atlas graphs disagree with exhaustive ordering search")
    detail = (
        f"500 NSI instances pass, C4 and 3-sun refuted, {len(graphs)} atlas graphs on <= 6 vertices agree"
        if not problems
        else "; ".join(problems)
    )
    return not problems, detail


def test_criterion_6_recognition():
    ok, detail = criterion_6()
    _record(6, ok, detail)
    assert ok, detail


# -- criterion 7 ----------------------------------------------------------

_DIGEST_SCRIPT = r"""
import sys
sys.path.insert(0, sys.argv[1])
from test_acceptance import determinism_digest
print(determinism_digest())
"""


def determinism_digest() -> str:
    """Hash of serialized output from every seeded generator and every transform."""
    from scfe.model_transforms import unkiss_model

    h = hashlib.sha256()
    for seed in range(40):
        n = 1 + seed % 10
        for m in (random_unit_model(n, seed), random_nsi_model(n, seed)):
            h.update(io.dumps(io.model_to_dict(m)).encode())
            for fn in (unkiss_model, nsi_to_unit):
                out, rep = fn(m)
                h.update(io.dumps(io.report_to_dict(rep)).encode())
            unit = nsi_to_unit(m)[0]
            h.update(io.dumps(io.report_to_dict(unit_to_proper(unit)[1])).encode())
        s, d = random_signed_drawing(n, seed, complete=bool(seed % 2))
        h.update(io.dumps(io.signed_to_dict(s)).encode() + io.dumps(io.drawing_to_dict(d)).encode())
    for s, m in roundtrip_instances(60):
        h.update(io.dumps(io.model_to_dict(m)).encode() + io.dumps(io.signed_to_dict(s)).encode())
    return h.hexdigest()


def criterion_7():
    problems = []
    digests = set()
    for hashseed in ("0", "1", "4242"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        proc = subprocess.run(
            [sys.executable, "-c", _DIGEST_SCRIPT, str(HERE)], env=env, capture_output=True, text=True, cwd=HERE
        )
        if proc.returncode:
            problems.append(f"digest run failed: {proc.stderr.strip()[-200:]}")
        digests.add(proc.stdout.strip())
    if len(digests) != 1:
        problems.append(f"{len(digests)} distinct digests across hash seeds")
    golden = HERE / "golden"
    checks = {
        "k13_unit_model.svg": lambda: render(io.model_from_dict(conftest.fixture_doc("k13_unit_model.json")), "svg"),
        "k13_unit_model.dot": lambda: render(io.model_from_dict(conftest.fixture_doc("k13_unit_model.json")), "dot"),
        "line_tree.dot": lambda: render(io.tree_from_dict(conftest.fixture_doc("line_tree.json")), "dot"),
    }
    for name, make in checks.items():
        if make() != (golden / name).read_bytes() or make() != make():
            problems.append(f"golden {name} unstable")
    detail = "byte-identical output across 3 hash seeds; golden files stable" if not problems else "; ".join(problems)
    return not problems, detail


def test_criterion_7_determinism():
    ok, detail = criterion_7()
    _record(7, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(
        (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7), start=1
    ):
        ok, detail = fn()
        _record(k, ok, detail)
        failed += not ok
    sys.exit(1 if failed else 0)
