"""Deterministic and seeded instance generators.

Seeded generators draw from :class:`random.Random` seeded with the given
64-bit integer, consuming values in a fixed documented order, so equal
``(n, seed)`` give byte-identical serialized output.

Random trees are decoded from a Prüfer sequence over nodes ``n0..n{m-1}``
(smallest-leaf-first).  Edge lengths are ``a/b`` with ``a`` uniform in
``1..32`` and ``b`` uniform in ``1..16``.  A centre sits at a uniformly
chosen node with probability 1/3, otherwise on a uniform edge at offset
``p/q`` with ``q`` uniform in ``1..16`` and ``p`` uniform among the values
placing it strictly inside the edge.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

from .ball_models import Ball, BallModel, Graph
from .errors import InvalidInput
from .metric_tree import Edge, Location, RealTree, as_rational, on_edge
from .signed_graphs import Drawing, SignedGraph

SEED_LIMIT = 2**64


def _rng(seed: int) -> random.Random:
    if not isinstance(seed, int) or not 0 <= seed < SEED_LIMIT:
        raise InvalidInput(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return random.Random(seed)


def interval_model(intervals: Sequence[Tuple[object, object, str]]) -> BallModel:
    """Intervals ``[lo, hi]`` on a segment, as balls of a one-edge tree."""
    if not intervals:
        raise InvalidInput("need at least one interval")
    parsed = []
    for lo, hi, label in intervals:
        lo, hi = as_rational(lo), as_rational(hi)
        if lo > hi:
            raise InvalidInput(f"interval {label!r} has lo > hi")
        parsed.append((lo, hi, label))
    left = min(lo for lo, _, _ in parsed)
    right = max(hi for _, hi, _ in parsed)
    if left == right:
        tree = RealTree(("n0",), ())
        return BallModel(tree, tuple(Ball(lab, Location.at_node("n0"), Fraction(0)) for _, _, lab in parsed))
    tree = RealTree(("n0", "n1"), (Edge("e0", "n0", "n1", right - left),))
    balls = tuple(
        Ball(lab, on_edge(tree, "e0", (lo + hi) / 2 - left), (hi - lo) / 2) for lo, hi, lab in parsed
    )
    return BallModel(tree, balls)


def is_tree_graph(g: Graph) -> bool:
    if not g.vertices or len(g.edges) != len(g.vertices) - 1:
        return False
    adj = g.adjacency()
    start = min(g.vertices)
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


def tree_graph_model(g: Graph) -> BallModel:
    """Balls of radius 1/2 at the nodes of ``g`` itself, drawn with unit edges."""
    if not is_tree_graph(g):
        raise InvalidInput("graph is not a tree")
    nodes = tuple(sorted(g.vertices))
    edges = tuple(Edge(f"e{i}", u, v, Fraction(1)) for i, (u, v) in enumerate(g.sorted_edges()))
    tree = RealTree(nodes, edges)
    return BallModel(tree, tuple(Ball(v, Location.at_node(v), Fraction(1, 2)) for v in nodes))


def complete_signed_from_positive(g: Graph) -> SignedGraph:
    """Every edge of ``g`` positive, every non-edge negative."""
    pairs = [frozenset(p) for p in combinations(sorted(g.vertices), 2)]
    return SignedGraph(g.vertices, g.edges, frozenset(p for p in pairs if p not in g.edges))


def _prufer_tree(rng: random.Random, m: int, lengths) -> RealTree:
    nodes = tuple(f"n{i}" for i in range(m))
    if m == 1:
        return RealTree(nodes, ())
    seq = [rng.randrange(m) for _ in range(m - 2)]
    degree = [1] * m
    for x in seq:
        degree[x] += 1
    pairs = []
    for x in seq:
        leaf = min(i for i in range(m) if degree[i] == 1)
        pairs.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [i for i in range(m) if degree[i] == 1]
    pairs.append((u, w))
    edges = tuple(Edge(f"e{k}", nodes[a], nodes[b], lengths(rng)) for k, (a, b) in enumerate(pairs))
    return RealTree(nodes, edges)


def _default_length(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 32), rng.randint(1, 16))


def _random_point(rng: random.Random, t: RealTree, max_den: int = 16) -> Location:
    if not t.edges or rng.randrange(3) == 0:
        return Location.at_node(t.nodes[rng.randrange(len(t.nodes))])
    e = t.edges[rng.randrange(len(t.edges))]
    q = rng.randint(1, max_den)
    top = math.ceil(e.length * q) - 1
    if top < 1:
        return Location.at_node(e.u)
    return on_edge(t, e.id, Fraction(rng.randint(1, top), q))


def random_tree(seed: int, m: int) -> RealTree:
    return _prufer_tree(_rng(seed), m, _default_length)


def random_unit_model(n: int, seed: int) -> BallModel:
    """``n`` balls of one common radius on a random tree with ``2..n+2`` nodes.

    The radius is ``a/b`` with ``a`` uniform in ``1..48`` and ``b`` in ``1..16``.
    """
    if n < 1:
        raise InvalidInput("need at least one ball")
    rng = _rng(seed)
    tree = _prufer_tree(rng, rng.randint(2, n + 2), _default_length)
    radius = Fraction(rng.randint(1, 48), rng.randint(1, 16))
    balls = tuple(Ball(f"v{i}", _random_point(rng, tree), radius) for i in range(n))
    return BallModel(tree, balls)


def random_nsi_model(n: int, seed: int) -> BallModel:
    """Arbitrary-radius model biased toward degenerate configurations.

    Short edges (``a/b``, ``a`` in ``1..4``, ``b`` in ``1..2``), centre
    offsets with denominator at most 4 and radii ``k/4`` with ``k`` in
    ``0..8`` make kissing pairs, point balls and shared centres common; with
    probability 1/5 a ball copies the centre and radius of an earlier one.
    """
    if n < 1:
        raise InvalidInput("need at least one ball")
    rng = _rng(seed)
    tree = _prufer_tree(
        rng, rng.randint(1, n + 2), lambda r: Fraction(r.randint(1, 4), r.randint(1, 2))
    )
    balls: List[Ball] = []
    for i in range(n):
        if balls and rng.randrange(5) == 0:
            src = balls[rng.randrange(len(balls))]
            balls.append(Ball(f"v{i}", src.center, src.radius))
        else:
            balls.append(Ball(f"v{i}", _random_point(rng, tree, 4), Fraction(rng.randint(0, 8), 4)))
    return BallModel(tree, tuple(balls))


def random_signed_drawing(n: int, seed: int, complete: bool = False) -> Tuple[SignedGraph, Drawing]:
    """Random signed graph with an injective random drawing on a random tree.

    Each vertex pair is positive, negative or (unless ``complete``)
    unsigned with equal probability.
    """
    if n < 1:
        raise InvalidInput("need at least one vertex")
    rng = _rng(seed)
    tree = _prufer_tree(rng, rng.randint(2, n + 2), _default_length)
    points = {}
    used = set()
    for i in range(n):
        loc = _random_point(rng, tree)
        while loc in used:
            loc = _random_point(rng, tree)
        used.add(loc)
        points[f"v{i}"] = loc
    labels = sorted(points)
    pos, neg = [], []
    for pair in combinations(labels, 2):
        roll = rng.randrange(2 if complete else 3)
        if roll == 0:
            pos.append(pair)
        elif roll == 1:
            neg.append(pair)
    return SignedGraph.build(labels, pos, neg), Drawing(tree, points)
