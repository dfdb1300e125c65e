"""Intersection-preserving rewrites of ball models.

Three rewrites are provided, each leaving the intersection graph untouched:

* :func:`unkiss_model` nudges balls apart/together until no two balls meet
  in exactly one point;
* :func:`unit_to_proper` additionally separates coincident equal balls, so
  a unit model becomes proper;
* :func:`nsi_to_unit` grows every ball to the largest radius by grafting a
  pendant branch at its centre and sliding the centre out along it.

Every step that moves a centre records its displacement together with the
safety bound it was computed against in a :class:`TransformReport`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .ball_models import Ball, BallModel, is_unit_model, slack
from .errors import InvalidInput, TransformStuck
from .metric_tree import Location, RealTree, attach_branch, distance, point_at

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Step:
    vertex: str
    action: str  # "unkiss" | "separate" | "graft" | "inflate"
    amount: Fraction
    bound: Optional[Fraction] = None  # None: unconstrained
    epsilon: Optional[Fraction] = None
    delta: Optional[Fraction] = None


@dataclass(frozen=True)
class TransformReport:
    before: BallModel
    after: BallModel
    steps: Tuple[Step, ...] = field(default=())

    def __add__(self, other: "TransformReport") -> "TransformReport":
        return TransformReport(self.before, other.after, self.steps + other.steps)


def _min(values) -> Optional[Fraction]:
    values = [v for v in values if v is not None]
    return min(values) if values else None


def safety_margins(
    m: BallModel, vertex: str, ignore: Sequence[str] = ()
) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    """``(epsilon, delta)`` for moving ``vertex``.

    ``epsilon`` is the smallest strictly positive slack and ``delta`` the
    smallest gap between ``vertex`` and another ball; ``None`` when there is
    no such pair.  Moving the centre by less than both keeps every
    intersecting pair intersecting and every disjoint pair disjoint.
    """
    eps = delta = None
    for other in m.labels():
        if other == vertex or other in ignore:
            continue
        s = slack(m, vertex, other)
        if s > 0:
            eps = s if eps is None else min(eps, s)
        elif s < 0:
            delta = -s if delta is None else min(delta, -s)
    return eps, delta


def _touching(m: BallModel) -> Tuple[Dict[str, List[str]], Dict[str, List[str]]]:
    """Pairs meeting in exactly one point, and coincident point balls."""
    touch: Dict[str, List[str]] = {}
    pinned: Dict[str, List[str]] = {}
    for u, v in combinations(m.labels(), 2):
        if slack(m, u, v) != 0:
            continue
        target = touch if distance(m.tree, m[u].center, m[v].center) > 0 else pinned
        target.setdefault(u, []).append(v)
        target.setdefault(v, []).append(u)
    return touch, pinned


def _shared_prefix(t: RealTree, origin: Location, a: Location, b: Location) -> Fraction:
    """Length of the common initial segment of the geodesics origin→a and origin→b."""
    return (distance(t, origin, a) + distance(t, origin, b) - distance(t, a, b)) / 2


def _unkiss_move(m: BallModel, touch, pinned) -> Optional[Tuple[BallModel, Step]]:
    for b in sorted(touch):
        if b in pinned:
            continue
        partners = sorted(touch[b])
        cb = m[b].center
        for target in partners:
            ct = m[target].center
            caps = [_shared_prefix(m.tree, cb, ct, m[p].center) for p in partners]
            if min(caps) <= 0:
                continue
            eps, delta = safety_margins(m, b)
            margin = _min([eps, delta])
            if margin is None:
                step = max(m[b].radius, m[target].radius) / 2
            else:
                step = margin / 2
            step = min(step, min(caps) / 2)
            bound = _min([margin, min(caps)])
            moved = m.replace(b, point_at(m.tree, cb, ct, step))
            return moved, Step(b, "unkiss", step, bound, eps, delta)
    return None


def unkiss_model(m: BallModel) -> Tuple[BallModel, TransformReport]:
    """Remove every pair of balls that meet in a single point.

    A ball ``B`` touching others is moved toward one touching partner ``C``
    when all of its touching partners lie in the same direction from its
    centre; every touching pair involving ``B`` then gains positive slack,
    while the move stays below half the smallest positive slack and gap
    around ``B``, so no other pair changes sign.  Each round removes at
    least one touching pair and creates none.
    """
    steps: List[Step] = []
    current = m
    while True:
        touch, pinned = _touching(current)
        if not touch:
            break
        found = _unkiss_move(current, touch, pinned)
        if found is None:
            pairs = sorted({tuple(sorted((u, v))) for u, vs in touch.items() for v in vs})
            raise TransformStuck(f"no ball can be moved off its touching partners: {pairs}")
        current, step = found
        log.debug("unkiss %s by %s", step.vertex, step.amount)
        steps.append(step)
    return current, TransformReport(m, current, tuple(steps))


def _separation_direction(t: RealTree, c: Location) -> Tuple[Optional[Location], Optional[Fraction]]:
    """Where duplicates at ``c`` are pushed, and how far that direction extends."""
    if c.edge is not None:
        e = t.edge(c.edge)
        to_u, to_v = c.offset, e.length - c.offset
        if to_u < to_v or (to_u == to_v and e.u <= e.v):
            return Location.at_node(e.u), to_u
        return Location.at_node(e.v), to_v
    incident = t.incident(c.node)
    if incident:
        nbr, e = incident[0]
        return Location.at_node(nbr), e.length
    return None, None


def _inflate_point_balls(m: BallModel) -> Tuple[BallModel, List[Step]]:
    """Give coincident radius-0 balls a common positive radius.

    Radius-0 balls meet only when they coincide, so any common radius below
    half the smallest positive centre distance keeps the same graph; a
    quarter of it is used (1 when all centres coincide).
    """
    if not m.balls or m.balls[0].radius != 0:
        return m, []
    if len({b.center for b in m.balls}) == len(m.balls):
        return m, []
    gaps = [
        distance(m.tree, a.center, b.center)
        for a, b in combinations(m.balls, 2)
        if a.center != b.center
    ]
    radius = min(gaps) / 4 if gaps else Fraction(1)
    out = BallModel(m.tree, tuple(Ball(b.vertex, b.center, radius) for b in m.balls))
    bound = min(gaps) / 2 if gaps else None
    return out, [Step(b.vertex, "inflate", radius, bound) for b in sorted(m.balls, key=lambda b: b.vertex)]


def unit_to_proper(m: BallModel) -> Tuple[BallModel, TransformReport]:
    """Turn a unit model into a proper one with the same intersection graph.

    Kissing pairs are removed first.  Coincident radius-0 balls cannot be
    told apart by moving them, so a model of point balls with shared centres
    is first given a small common positive radius.  Then, for each group of
    coincident balls, all members but the smallest label are pushed the distinct
    amounts ``step/2, step/4, ...`` toward the nearest node (or along the
    smallest-id incident edge when the centre is a node).
    """
    if not is_unit_model(m):
        raise InvalidInput("unit_to_proper needs all radii equal")
    current, report = unkiss_model(m)
    steps = list(report.steps)
    current, inflate = _inflate_point_balls(current)
    steps.extend(inflate)

    groups: Dict[Location, List[str]] = {}
    for label in current.labels():
        groups.setdefault(current[label].center, []).append(label)
    for members in sorted((g for g in groups.values() if len(g) > 1), key=lambda g: g[0]):
        rep, extra = members[0], members[1:]
        radius = current[rep].radius
        c = current[rep].center
        eps, delta = safety_margins(current, rep, ignore=members)
        seps = [
            distance(current.tree, c, current[o].center)
            for o in current.labels()
            if current[o].center != c
        ]
        margin = _min([eps, delta, min(seps) if seps else None])
        step = margin / 2 if margin is not None else radius / 2
        # coincident mates overlap with slack 2r and must keep overlapping
        bound = _min([margin, 2 * radius])
        step = min(step, bound / 2)
        target, reach = _separation_direction(current.tree, c)
        if target is None:
            tree, leaf = attach_branch(current.tree, c, step)
            target, reach = Location.at_node(leaf), step
            current = BallModel(tree, current.balls)
        step = min(step, reach)
        for k, label in enumerate(extra, start=1):
            amount = step / 2**k
            current = current.replace(label, point_at(current.tree, c, target, amount))
            steps.append(Step(label, "separate", amount, bound, eps, delta))
    return current, TransformReport(m, current, tuple(steps))


def nsi_to_unit(m: BallModel) -> Tuple[BallModel, TransformReport]:
    """Equalise all radii to the largest one by branch grafting.

    For each smaller ball (in label order) a branch of length
    ``r_max - r_v`` is attached at its centre, the centre moves to the new
    leaf and the radius becomes ``r_max``.  Restricted to the old tree the
    new ball is exactly the old one, so no intersection changes.
    """
    if not m.balls:
        raise InvalidInput("nsi_to_unit needs a nonempty model")
    r_max = max(b.radius for b in m.balls)
    tree = m.tree
    centers = {b.vertex: b.center for b in m.balls}
    steps: List[Step] = []
    for b in sorted(m.balls, key=lambda b: b.vertex):
        if b.radius == r_max:
            continue
        graft = r_max - b.radius
        tree, leaf = attach_branch(tree, centers[b.vertex], graft)
        centers = {v: tree.lift(c) for v, c in centers.items()}
        centers[b.vertex] = Location.at_node(leaf)
        steps.append(Step(b.vertex, "graft", graft))
    out = BallModel(tree, tuple(Ball(b.vertex, centers[b.vertex], r_max) for b in m.balls))
    return out, TransformReport(m, out, tuple(steps))


def to_unit_nsi(m: BallModel) -> BallModel:
    return nsi_to_unit(m)[0]


def to_proper_nsi(m: BallModel) -> BallModel:
    return unit_to_proper(nsi_to_unit(m)[0])[0]
