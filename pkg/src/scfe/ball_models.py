"""Closed balls on a real tree and their intersection graphs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import InvalidInput
from .metric_tree import Location, RealTree, as_rational, distance


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on string labels."""

    vertices: FrozenSet[str]
    edges: FrozenSet[FrozenSet[str]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        for e in self.edges:
            if len(e) != 2:
                raise InvalidInput(f"self-loop or malformed edge {sorted(e)}")
            if not e <= self.vertices:
                raise InvalidInput(f"edge {sorted(e)} has an endpoint outside the vertex set")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[Tuple[str, str]] = ()) -> "Graph":
        return cls(frozenset(vertices), frozenset(frozenset(e) for e in edges))

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def adjacency(self) -> Dict[str, set]:
        adj: Dict[str, set] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def sorted_edges(self) -> List[Tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Ball:
    vertex: str
    center: Location
    radius: Fraction


@dataclass(frozen=True)
class BallModel:
    """A real tree carrying one closed ball per graph vertex."""

    tree: RealTree
    balls: Tuple[Ball, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "balls", tuple(self.balls))
        index: Dict[str, Ball] = {}
        for b in self.balls:
            if b.vertex in index:
                raise InvalidInput(f"duplicate ball label {b.vertex!r}")
            if not isinstance(b.radius, Fraction) or b.radius < 0:
                raise InvalidInput(f"ball {b.vertex!r} needs a non-negative rational radius")
            self.tree.check(b.center)
            index[b.vertex] = b
        object.__setattr__(self, "_index", index)

    def __getitem__(self, vertex: str) -> Ball:
        try:
            return self._index[vertex]
        except KeyError:
            raise InvalidInput(f"unknown vertex {vertex!r}") from None

    def labels(self) -> List[str]:
        return sorted(self._index)

    def replace(self, vertex: str, center: Location) -> "BallModel":
        """Copy of the model with ``vertex`` re-centred (radius kept)."""
        self[vertex]
        balls = tuple(Ball(b.vertex, center, b.radius) if b.vertex == vertex else b for b in self.balls)
        return BallModel(self.tree, balls)


def make_model(tree: RealTree, balls: Iterable[Tuple[str, Location, object]]) -> BallModel:
    return BallModel(tree, tuple(Ball(v, c, as_rational(r)) for v, c, r in balls))


def center_distance(m: BallModel, u: str, v: str) -> Fraction:
    return distance(m.tree, m[u].center, m[v].center)


def slack(m: BallModel, u: str, v: str) -> Fraction:
    """``r_u + r_v - d(c_u, c_v)``: non-negative exactly when the balls meet."""
    bu, bv = m[u], m[v]
    return bu.radius + bv.radius - distance(m.tree, bu.center, bv.center)


def balls_intersect(m: BallModel, u: str, v: str) -> bool:
    return slack(m, u, v) >= 0


def contains(m: BallModel, u: str, v: str) -> bool:
    """True when the ball of ``v`` lies inside the ball of ``u``."""
    return center_distance(m, u, v) + m[v].radius <= m[u].radius


def intersection_graph(m: BallModel) -> Graph:
    labels = m.labels()
    edges = [(u, v) for u, v in combinations(labels, 2) if balls_intersect(m, u, v)]
    return Graph.build(labels, edges)


def validate_model(m: BallModel, g: Graph) -> Tuple[bool, List[Tuple[str, str, str]]]:
    """Compare the intersection graph of ``m`` with ``g``.

    Returns ``(ok, discrepancies)`` where each discrepancy is
    ``("missing" | "extra", u, v)``: ``missing`` edges are in ``g`` but not
    realised by the balls, ``extra`` edges are realised but absent from ``g``.
    """
    if set(m.labels()) != set(g.vertices):
        raise InvalidInput("model and graph have different vertex labels")
    realised = intersection_graph(m)
    out = [("missing", u, v) for u, v in g.sorted_edges() if not realised.has_edge(u, v)]
    out += [("extra", u, v) for u, v in realised.sorted_edges() if not g.has_edge(u, v)]
    out.sort(key=lambda d: (d[1], d[2], d[0]))
    return not out, out


def is_unit_model(m: BallModel) -> bool:
    return len({b.radius for b in m.balls}) <= 1


def is_proper_model(m: BallModel) -> bool:
    """No ball contained in another (geodesic criterion ``d + r_v <= r_u``)."""
    labels = m.labels()
    for u, v in combinations(labels, 2):
        if contains(m, u, v) or contains(m, v, u):
            return False
    return True
