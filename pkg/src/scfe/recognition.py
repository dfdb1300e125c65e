"""Necessary conditions for a graph to be the intersection graph of tree balls.

Every such graph is chordal, strongly chordal, and has a balanced
augmented adjacency matrix.  The checks here can refute membership; a
graph passing all of them is not thereby certified.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .ball_models import Graph
from .errors import InvalidInput

Matrix = Tuple[Tuple[int, ...], ...]

BALANCED_MAX_ORDER = 7


@dataclass(frozen=True)
class ZeroOneMatrix:
    labels: Tuple[str, ...]
    rows: Matrix

    def __post_init__(self) -> None:
        for row in self.rows:
            if any(x not in (0, 1) for x in row):
                raise InvalidInput("matrix entries must be 0 or 1")
            if len(row) != len(self.rows[0]):
                raise InvalidInput("ragged matrix")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "ZeroOneMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        return cls(tuple(str(i) for i in range(len(rows))), rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0


def augmented_adjacency(g: Graph) -> ZeroOneMatrix:
    """Adjacency matrix plus identity, rows and columns in sorted label order."""
    labels = tuple(sorted(g.vertices))
    adj = g.adjacency()
    rows = tuple(tuple(int(a == b or b in adj[a]) for b in labels) for a in labels)
    return ZeroOneMatrix(labels, rows)


# -- chordality ---------------------------------------------------------


def lex_bfs(g: Graph) -> List[str]:
    """Lexicographic breadth-first order (partition refinement, smallest label first)."""
    adj = g.adjacency()
    parts: List[List[str]] = [sorted(g.vertices)] if g.vertices else []
    order: List[str] = []
    while parts:
        v = parts[0].pop(0)
        if not parts[0]:
            parts.pop(0)
        order.append(v)
        refined: List[List[str]] = []
        for part in parts:
            inside = [x for x in part if x in adj[v]]
            outside = [x for x in part if x not in adj[v]]
            refined.extend(p for p in (inside, outside) if p)
        parts = refined
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[str]) -> bool:
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        for a, b in combinations(later, 2):
            if b not in adj[a]:
                return False
    return True


def find_chordless_cycle(g: Graph) -> Optional[List[str]]:
    """A chordless cycle of length at least four, or ``None`` if the graph is chordal.

    Any such cycle passes through some vertex ``v`` with two non-adjacent
    neighbours ``a``, ``b``; the rest of the cycle is a shortest ``a``-``b``
    path avoiding the other neighbours of ``v``.
    """
    adj = g.adjacency()
    for v in sorted(g.vertices):
        for a, b in combinations(sorted(adj[v]), 2):
            if b in adj[a]:
                continue
            blocked = (adj[v] | {v}) - {a, b}
            prev = {a: None}
            queue = deque([a])
            while queue and b not in prev:
                x = queue.popleft()
                for y in sorted(adj[x]):
                    if y not in prev and y not in blocked:
                        prev[y] = x
                        queue.append(y)
            if b in prev:
                path = [b]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return [v] + path
    return None


@dataclass(frozen=True)
class ChordalVerdict:
    chordal: bool
    ordering: Optional[List[str]] = None  # perfect elimination ordering
    cycle: Optional[List[str]] = None  # chordless cycle, length >= 4

    def __bool__(self) -> bool:
        return self.chordal


def is_chordal(g: Graph) -> ChordalVerdict:
    order = lex_bfs(g)[::-1]
    if is_perfect_elimination_ordering(g, order):
        return ChordalVerdict(True, ordering=order)
    return ChordalVerdict(False, cycle=find_chordless_cycle(g))


# -- strong chordality --------------------------------------------------


def doubly_lexical_ordering(rows: Matrix) -> Tuple[List[int], List[int]]:
    """Row and column permutations making both rows and columns lexically increasing.

    Vectors are compared from their last entry backwards.  Rows and
    columns are sorted alternately until neither sort moves anything.
    """
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    r_perm, c_perm = list(range(n_rows)), list(range(n_cols))
    while True:
        new_r = sorted(r_perm, key=lambda i: tuple(rows[i][j] for j in reversed(c_perm)))
        new_c = sorted(c_perm, key=lambda j: tuple(rows[i][j] for i in reversed(new_r)))
        if new_r == r_perm and new_c == c_perm:
            return r_perm, c_perm
        r_perm, c_perm = new_r, new_c


def find_gamma(rows: Matrix, r_perm: Sequence[int], c_perm: Sequence[int]):
    """First ``[[1, 1], [1, 0]]`` submatrix under the given orders, as index pairs."""
    for a, b in combinations(range(len(r_perm)), 2):
        ra, rb = rows[r_perm[a]], rows[r_perm[b]]
        ones = [k for k in range(len(c_perm)) if ra[c_perm[k]] and rb[c_perm[k]]]
        if not ones:
            continue
        first = ones[0]
        for k in range(first + 1, len(c_perm)):
            if ra[c_perm[k]] and not rb[c_perm[k]]:
                return (r_perm[a], r_perm[b]), (c_perm[first], c_perm[k])
    return None


def is_strong_elimination_ordering(g: Graph, order: Sequence[str]) -> bool:
    """True when the neighbourhood matrix, rows and columns in ``order``, is Γ-free."""
    mtx = augmented_adjacency(g)
    idx = {v: i for i, v in enumerate(mtx.labels)}
    perm = [idx[v] for v in order]
    return find_gamma(mtx.rows, perm, perm) is None


@dataclass(frozen=True)
class StrongVerdict:
    strongly_chordal: bool
    ordering: Optional[List[str]] = None  # strong elimination ordering
    cycle: Optional[List[str]] = None  # set when the graph is not even chordal
    gamma: Optional[Dict[str, List[str]]] = None  # Γ rows/cols in the doubly lexical order

    def __bool__(self) -> bool:
        return self.strongly_chordal


def is_strongly_chordal(g: Graph) -> StrongVerdict:
    """Strong chordality via Γ-freeness of a doubly lexical ordering of ``A + I``."""
    chordal = is_chordal(g)
    if not chordal:
        return StrongVerdict(False, cycle=chordal.cycle)
    mtx = augmented_adjacency(g)
    r_perm, c_perm = doubly_lexical_ordering(mtx.rows)
    gamma = find_gamma(mtx.rows, r_perm, c_perm)
    if gamma is not None:
        (r1, r2), (c1, c2) = gamma
        lab = mtx.labels
        return StrongVerdict(False, gamma={"rows": [lab[r1], lab[r2]], "cols": [lab[c1], lab[c2]]})
    # for a symmetric Γ-free matrix the doubly lexical row order is itself a
    # strong elimination ordering
    return StrongVerdict(True, ordering=[mtx.labels[i] for i in r_perm])


# -- balancedness ---------------------------------------------------------


@dataclass(frozen=True)
class BalancedVerdict:
    """``balanced`` is only a claim up to ``max_order`` when no witness was found."""

    balanced: bool
    max_order: int
    witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None

    def __bool__(self) -> bool:
        return self.balanced


def is_cycle_submatrix(mtx: ZeroOneMatrix, rows: Sequence[int], cols: Sequence[int]) -> bool:
    """Odd order, all row and column sums equal to two."""
    if len(rows) != len(cols) or len(rows) % 2 == 0:
        return False
    if any(sum(mtx.rows[i][j] for j in cols) != 2 for i in rows):
        return False
    return all(sum(mtx.rows[i][j] for i in rows) == 2 for j in cols)


def is_balanced_bruteforce(mtx: ZeroOneMatrix, max_order: int = 5) -> BalancedVerdict:
    """Search odd square submatrices of order 3..``max_order`` with all line sums 2."""
    if max_order > BALANCED_MAX_ORDER:
        raise InvalidInput(f"max_order above {BALANCED_MAX_ORDER} is not supported")
    n_rows, n_cols = mtx.shape
    for k in range(3, max_order + 1, 2):
        for rows in combinations(range(n_rows), k):
            # columns hit by at least two chosen rows are the only candidates
            hits = [sum(mtx.rows[i][j] for i in rows) for j in range(n_cols)]
            candidates = [j for j in range(n_cols) if hits[j] >= 2]
            for cols in combinations(candidates, k):
                if is_cycle_submatrix(mtx, rows, cols):
                    return BalancedVerdict(False, max_order, (rows, cols))
    return BalancedVerdict(True, max_order)


# -- combined filter ------------------------------------------------------


@dataclass(frozen=True)
class FilterVerdict:
    refuted: bool
    reason: Optional[str] = None
    witness: dict = field(default_factory=dict)


def nsi_necessary_filter(g: Graph, balanced_max_order: Optional[int] = None) -> FilterVerdict:
    """Refute tree-ball representability when a necessary condition fails.

    A passing verdict only means no obstruction was found.
    """
    chordal = is_chordal(g)
    if not chordal:
        return FilterVerdict(True, "not chordal", {"cycle": chordal.cycle})
    strong = is_strongly_chordal(g)
    if not strong:
        return FilterVerdict(True, "not strongly chordal", {"gamma": strong.gamma})
    if balanced_max_order is not None:
        mtx = augmented_adjacency(g)
        bal = is_balanced_bruteforce(mtx, balanced_max_order)
        if not bal:
            rows, cols = bal.witness
            return FilterVerdict(
                True,
                "augmented adjacency matrix not balanced",
                {"rows": [mtx.labels[i] for i in rows], "cols": [mtx.labels[j] for j in cols]},
            )
    return FilterVerdict(False)
