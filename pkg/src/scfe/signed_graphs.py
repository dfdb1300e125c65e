"""Signed graphs, drawings into real trees and the valid-drawing check."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

from .ball_models import Graph
from .errors import InvalidInput
from .metric_tree import Location, RealTree, distance

Violation = Tuple[str, str, str]


def _pairs(edges: Iterable) -> FrozenSet[FrozenSet[str]]:
    return frozenset(frozenset(e) for e in edges)


@dataclass(frozen=True)
class SignedGraph:
    vertices: FrozenSet[str]
    positive: FrozenSet[FrozenSet[str]]
    negative: FrozenSet[FrozenSet[str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "positive", _pairs(self.positive))
        object.__setattr__(self, "negative", _pairs(self.negative))
        for e in self.positive | self.negative:
            if len(e) != 2:
                raise InvalidInput(f"self-loop or malformed edge {sorted(e)}")
            if not e <= self.vertices:
                raise InvalidInput(f"edge {sorted(e)} has an endpoint outside the vertex set")
        both = self.positive & self.negative
        if both:
            raise InvalidInput(f"edges carry both signs: {sorted(sorted(e) for e in both)}")

    @classmethod
    def build(cls, vertices, positive=(), negative=()) -> "SignedGraph":
        return cls(frozenset(vertices), _pairs(positive), _pairs(negative))

    def friends(self, v: str) -> List[str]:
        return sorted(w for e in self.positive if v in e for w in e if w != v)

    def enemies(self, v: str) -> List[str]:
        return sorted(w for e in self.negative if v in e for w in e if w != v)


@dataclass(frozen=True, eq=True)
class Drawing:
    """An injective placement of signed-graph vertices on a real tree."""

    tree: RealTree
    points: Mapping[str, Location]

    def __post_init__(self) -> None:
        points = dict(sorted(self.points.items()))
        seen: Dict[Location, str] = {}
        for v, loc in points.items():
            self.tree.check(loc)
            if loc in seen:
                raise InvalidInput(f"drawing is not injective: {seen[loc]!r} and {v!r} share a point")
            seen[loc] = v
        object.__setattr__(self, "points", points)

    __hash__ = None

    def distance(self, u: str, v: str) -> Fraction:
        return distance(self.tree, self.points[u], self.points[v])


def positive_subgraph(s: SignedGraph) -> Graph:
    return Graph(s.vertices, s.positive)


def is_complete(s: SignedGraph) -> bool:
    signed = s.positive | s.negative
    return all(frozenset(p) in signed for p in combinations(sorted(s.vertices), 2))


def _require_drawn(s: SignedGraph, d: Drawing) -> None:
    missing = sorted(s.vertices - set(d.points))
    if missing:
        raise InvalidInput(f"vertices not drawn: {missing}")


def farthest_friend(s: SignedGraph, d: Drawing, v: str) -> str:
    """The member of the closed positive neighbourhood of ``v`` drawn farthest from it.

    Ties go to the smallest label; ``v`` itself when it has no friends.
    """
    if v not in s.vertices:
        raise InvalidInput(f"unknown vertex {v!r}")
    best, best_d = v, Fraction(0)
    for u in s.friends(v):
        du = d.distance(v, u)
        if du > best_d or (du == best_d and u < best):
            best, best_d = u, du
    return best


def check_valid_drawing(s: SignedGraph, d: Drawing) -> Tuple[bool, List[Violation]]:
    """Check that at every vertex each friend is strictly closer than each enemy.

    Returns ``(valid, violations)``; a violation ``(u, v, w)`` means friend
    ``v`` is not strictly closer to ``u`` than enemy ``w``.
    """
    _require_drawn(s, d)
    out: List[Violation] = []
    for u in sorted(s.vertices):
        enemies = [(w, d.distance(u, w)) for w in s.enemies(u)]
        if not enemies:
            continue
        for v in s.friends(u):
            dv = d.distance(u, v)
            out.extend((u, v, w) for w, dw in enemies if not dv < dw)
    return not out, out


def check_valid_drawing_by_extremes(s: SignedGraph, d: Drawing) -> bool:
    """Per-vertex form of :func:`check_valid_drawing`: farthest friend vs nearest enemy."""
    _require_drawn(s, d)
    for u in s.vertices:
        friends, enemies = s.friends(u), s.enemies(u)
        if friends and enemies:
            if max(d.distance(u, v) for v in friends) >= min(d.distance(u, w) for w in enemies):
                return False
    return True
