"""Finite real trees with exact rational geometry.

A :class:`RealTree` is a finite tree with positive rational edge lengths; the
points of the real tree it spans are its nodes plus every interior point of
every edge.  A :class:`Location` names one such point.  All distances are
:class:`fractions.Fraction` values and are computed exactly.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import InvalidInput

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; refuse floats."""
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if not _is_int_literal(num) or (sep and not _is_int_literal(den, signed=False)):
                raise ValueError
            return Fraction(int(num), int(den) if sep else 1)
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"cannot parse rational {value!r}") from None
    raise InvalidInput(f"not a rational: {value!r}")


def _is_int_literal(text: str, signed: bool = True) -> bool:
    if signed and text[:1] in "+-":
        text = text[1:]
    return text.isdigit() and text.isascii()


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction

    def other(self, node: str) -> str:
        return self.v if node == self.u else self.u


@dataclass(frozen=True)
class Split:
    """Provenance of an edge that was cut in two at ``offset``."""

    old: str
    offset: Fraction
    node: str
    left: str
    right: str


@dataclass(frozen=True)
class Location:
    """A point of a real tree: a node, or an interior point of an edge.

    Build locations with :meth:`at_node` or :func:`on_edge`; the latter folds
    endpoint offsets into node form so each point has one representation.
    """

    node: Optional[str] = None
    edge: Optional[str] = None
    offset: Optional[Fraction] = None

    @classmethod
    def at_node(cls, node: str) -> "Location":
        return cls(node=node)

    @property
    def is_node(self) -> bool:
        return self.node is not None

    def __str__(self) -> str:
        if self.node is not None:
            return self.node
        return f"{self.edge}:{self.offset}"


@dataclass(frozen=True)
class RealTree:
    """Immutable finite weighted tree.

    ``splits`` records every edge cut by :func:`attach_branch` so that
    locations expressed against an ancestor tree can be carried over with
    :meth:`lift`.
    """

    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    splits: Tuple[Split, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "splits", tuple(self.splits))
        if len(set(self.nodes)) != len(self.nodes):
            raise InvalidInput("duplicate node ids")
        edge_map: Dict[str, Edge] = {}
        adj: Dict[str, List[Tuple[str, Edge]]] = {n: [] for n in self.nodes}
        for e in self.edges:
            if e.id in edge_map:
                raise InvalidInput(f"duplicate edge id {e.id!r}")
            if e.u not in adj or e.v not in adj:
                raise InvalidInput(f"edge {e.id!r} has an unknown endpoint")
            if e.u == e.v:
                raise InvalidInput(f"edge {e.id!r} is a loop")
            if not isinstance(e.length, Fraction) or e.length <= 0:
                raise InvalidInput(f"edge {e.id!r} must have positive rational length")
            edge_map[e.id] = e
            adj[e.u].append((e.v, e))
            adj[e.v].append((e.u, e))
        if self.nodes:
            if len(self.edges) != len(self.nodes) - 1:
                raise InvalidInput("node/edge counts do not form a tree")
            seen = {self.nodes[0]}
            stack = [self.nodes[0]]
            while stack:
                for nbr, _ in adj[stack.pop()]:
                    if nbr not in seen:
                        seen.add(nbr)
                        stack.append(nbr)
            if len(seen) != len(self.nodes):
                raise InvalidInput("tree is not connected")
        elif self.edges:
            raise InvalidInput("edges without nodes")
        object.__setattr__(self, "_edge_map", edge_map)
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_bfs_cache", {})

    # -- lookup -----------------------------------------------------------

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_map[edge_id]
        except KeyError:
            raise InvalidInput(f"unknown edge id {edge_id!r}") from None

    def has_node(self, node: str) -> bool:
        return node in self._adj

    def incident(self, node: str) -> List[Tuple[str, Edge]]:
        """Neighbours of ``node`` with the connecting edge, ordered by edge id."""
        return sorted(self._adj[node], key=lambda item: item[1].id)

    def check(self, loc: Location) -> Location:
        """Raise :class:`InvalidInput` unless ``loc`` is a canonical point of this tree."""
        if loc.node is not None:
            if loc.edge is not None or loc.offset is not None:
                raise InvalidInput("location mixes node and edge forms")
            if loc.node not in self._adj:
                raise InvalidInput(f"unknown node id {loc.node!r}")
            return loc
        if loc.edge is None or loc.offset is None:
            raise InvalidInput("location needs a node or an (edge, offset) pair")
        e = self.edge(loc.edge)
        if not 0 < loc.offset < e.length:
            raise InvalidInput(
                f"offset {loc.offset} outside the open interval (0, {e.length}) of edge {e.id!r}"
            )
        return loc

    def lift(self, loc: Location) -> Location:
        """Translate a location of an ancestor tree through recorded edge splits."""
        by_old = {s.old: s for s in self.splits}
        while loc.edge is not None and loc.edge in by_old:
            s = by_old[loc.edge]
            if loc.offset < s.offset:
                loc = Location(edge=s.left, offset=loc.offset)
            elif loc.offset > s.offset:
                loc = Location(edge=s.right, offset=loc.offset - s.offset)
            else:
                loc = Location.at_node(s.node)
        return self.check(loc)

    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    # -- node metric ------------------------------------------------------

    def _bfs(self, source: str) -> Tuple[Dict[str, Fraction], Dict[str, Tuple[str, Edge]]]:
        cached = self._bfs_cache.get(source)
        if cached is not None:
            return cached
        dist = {source: Fraction(0)}
        parent: Dict[str, Tuple[str, Edge]] = {}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y, e in self._adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + e.length
                    parent[y] = (x, e)
                    queue.append(y)
        self._bfs_cache[source] = (dist, parent)
        return dist, parent

    def node_distance(self, a: str, b: str) -> Fraction:
        return self._bfs(a)[0][b]

    def node_path(self, a: str, b: str) -> List[Tuple[str, str, Edge]]:
        """Edges on the path from node ``a`` to node ``b`` as ``(from, to, edge)`` steps."""
        _, parent = self._bfs(a)
        steps = []
        cur = b
        while cur != a:
            prev, e = parent[cur]
            steps.append((prev, cur, e))
            cur = prev
        steps.reverse()
        return steps

    def anchors(self, loc: Location) -> List[Tuple[str, Fraction]]:
        """Nodes through which every geodesic leaving ``loc`` must pass, with their distances."""
        if loc.node is not None:
            return [(loc.node, Fraction(0))]
        e = self.edge(loc.edge)
        return [(e.u, loc.offset), (e.v, e.length - loc.offset)]


def on_edge(t: RealTree, edge_id: str, offset) -> Location:
    """Canonical location at ``offset`` from the ``u`` endpoint of ``edge_id``."""
    e = t.edge(edge_id)
    offset = as_rational(offset)
    if offset == 0:
        return Location.at_node(e.u)
    if offset == e.length:
        return Location.at_node(e.v)
    return t.check(Location(edge=edge_id, offset=offset))


def make_tree(nodes: Iterable[str], edges: Iterable[Tuple[str, str, str, object]]) -> RealTree:
    """Convenience constructor from ``(id, u, v, length)`` tuples."""
    return RealTree(
        tuple(nodes), tuple(Edge(i, u, v, as_rational(length)) for i, u, v, length in edges)
    )


def distance(t: RealTree, a: Location, b: Location) -> Fraction:
    """Length of the unique geodesic between ``a`` and ``b``."""
    t.check(a)
    t.check(b)
    if a.edge is not None and a.edge == b.edge:
        return abs(a.offset - b.offset)
    return min(
        da + t.node_distance(x, y) + db for x, da in t.anchors(a) for y, db in t.anchors(b)
    )


def _route(t: RealTree, a: Location, b: Location):
    """The anchor pair realising the geodesic from ``a`` to ``b`` (different edges)."""
    best = None
    for x, da in t.anchors(a):
        for y, db in t.anchors(b):
            total = da + t.node_distance(x, y) + db
            if best is None or total < best[0]:
                best = (total, x, da, y, db)
    return best


def point_at(t: RealTree, start: Location, towards: Location, dist) -> Location:
    """The point at distance ``dist`` from ``start`` on the geodesic to ``towards``."""
    dist = as_rational(dist)
    t.check(start)
    t.check(towards)
    if start.edge is not None and start.edge == towards.edge:
        total = abs(start.offset - towards.offset)
        if not 0 <= dist <= total:
            raise InvalidInput(f"distance {dist} outside [0, {total}]")
        step = dist if towards.offset > start.offset else -dist
        return on_edge(t, start.edge, start.offset + step)

    total, x, dx, y, dy = _route(t, start, towards)
    if not 0 <= dist <= total:
        raise InvalidInput(f"distance {dist} outside [0, {total}]")
    if dist <= dx:
        if start.node is not None:
            return start
        e = t.edge(start.edge)
        return on_edge(t, e.id, start.offset - dist if x == e.u else start.offset + dist)
    remaining = dist - dx
    for frm, _, e in t.node_path(x, y):
        if remaining <= e.length:
            return on_edge(t, e.id, remaining if frm == e.u else e.length - remaining)
        remaining -= e.length
    if towards.node is not None:
        return towards
    e = t.edge(towards.edge)
    return on_edge(t, e.id, remaining if y == e.u else e.length - remaining)


def center(t: RealTree, x: Location, y: Location, z: Location) -> Location:
    """The median of three points: the one point on all three pairwise geodesics."""
    dxy = distance(t, x, y)
    dxz = distance(t, x, z)
    dyz = distance(t, y, z)
    return point_at(t, x, y, (dxy + dxz - dyz) / 2)


def on_geodesic(t: RealTree, p: Location, a: Location, b: Location) -> bool:
    return distance(t, a, p) + distance(t, p, b) == distance(t, a, b)


def _fresh(prefix: str, used: set, start: int) -> str:
    k = start
    while f"{prefix}{k}" in used:
        k += 1
    return f"{prefix}{k}"


def split_edge(t: RealTree, at: Location) -> Tuple[RealTree, str]:
    """Make ``at`` a node of the tree, cutting its edge if it is interior.

    The two halves get fresh edge ids and the cut is recorded in
    ``splits``; returns the new tree and the node id now standing at ``at``.
    """
    t.check(at)
    if at.node is not None:
        return t, at.node
    e = t.edge(at.edge)
    node_id = _fresh("n", set(t.nodes), len(t.nodes))
    used_edges = {x.id for x in t.edges} | {s.old for s in t.splits}
    left = _fresh("e", used_edges, len(t.edges) + len(t.splits))
    right = _fresh("e", used_edges | {left}, len(t.edges) + len(t.splits))
    edges = []
    for x in t.edges:
        if x.id == e.id:
            edges.append(Edge(left, e.u, node_id, at.offset))
            edges.append(Edge(right, node_id, e.v, e.length - at.offset))
        else:
            edges.append(x)
    split = Split(e.id, at.offset, node_id, left, right)
    return RealTree(t.nodes + (node_id,), tuple(edges), t.splits + (split,)), node_id


def attach_branch(t: RealTree, at: Location, length) -> Tuple[RealTree, str]:
    """Graft a new pendant edge of ``length`` at ``at``; returns the tree and the new leaf."""
    length = as_rational(length)
    if length <= 0:
        raise InvalidInput(f"branch length must be positive, got {length}")
    if not t.nodes:
        raise InvalidInput("cannot attach to an empty tree")
    grown, base = split_edge(t, at)
    leaf = _fresh("n", set(grown.nodes), len(grown.nodes))
    used_edges = {x.id for x in grown.edges} | {s.old for s in grown.splits}
    edge_id = _fresh("e", used_edges, len(grown.edges) + len(grown.splits))
    new = RealTree(
        grown.nodes + (leaf,),
        grown.edges + (Edge(edge_id, base, leaf, length),),
        grown.splits,
    )
    return new, leaf


def ball_segments(t: RealTree, c: Location, radius) -> List[Tuple[str, Fraction, Fraction]]:
    """The closed ball ``B(c, radius)`` as ``(edge id, lo, hi)`` offset ranges per edge.

    Ranges may be degenerate (``lo == hi``) where the ball only touches an
    endpoint.  A ball on a tree without edges is just its centre.
    """
    radius = as_rational(radius)
    out = []
    for e in t.edges:
        if c.edge == e.id:
            lo, hi = max(Fraction(0), c.offset - radius), min(e.length, c.offset + radius)
            out.append((e.id, lo, hi))
            continue
        du = distance(t, c, Location.at_node(e.u))
        dv = distance(t, c, Location.at_node(e.v))
        if du <= dv and radius >= du:
            out.append((e.id, Fraction(0), min(e.length, radius - du)))
        elif dv < du and radius >= dv:
            out.append((e.id, max(Fraction(0), e.length - (radius - dv)), e.length))
    return out
