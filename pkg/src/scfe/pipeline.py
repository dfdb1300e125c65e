"""Drawings of complete signed graphs from ball models of their positive part, and back."""
from __future__ import annotations

from typing import Optional, Tuple

from .ball_models import Ball, BallModel, intersection_graph, is_unit_model, validate_model
from .errors import InvalidDrawing, InvalidInput, ModelMismatch
from .model_transforms import to_unit_nsi, unit_to_proper
from .signed_graphs import (
    Drawing,
    SignedGraph,
    check_valid_drawing,
    farthest_friend,
    is_complete,
    positive_subgraph,
)


def _require_complete(s: SignedGraph) -> None:
    if not is_complete(s):
        raise InvalidInput("signed graph is not complete")


def _require_realises(s: SignedGraph, m: BallModel) -> None:
    ok, diffs = validate_model(m, positive_subgraph(s))
    if not ok:
        raise ModelMismatch("model does not realise the positive subgraph", diffs)


def drawing_from_unit_model(s: SignedGraph, m: BallModel) -> Drawing:
    """Draw every vertex at the centre of its ball.

    With a common radius ``r`` friends end up at distance at most ``2r``
    and enemies farther than ``2r``, so the drawing is valid.
    """
    _require_complete(s)
    if not is_unit_model(m):
        raise InvalidInput("model is not a unit model")
    _require_realises(s, m)
    return Drawing(m.tree, {b.vertex: b.center for b in m.balls})


def model_from_drawing(s: SignedGraph, d: Drawing) -> BallModel:
    """Ball of radius half the distance to the farthest friend around each drawn vertex."""
    _require_complete(s)
    ok, violations = check_valid_drawing(s, d)
    if not ok:
        raise InvalidDrawing("drawing is not a valid distance drawing", violations)
    balls = []
    for v in sorted(s.vertices):
        far = farthest_friend(s, d, v)
        balls.append(Ball(v, d.points[v], d.distance(v, far) / 2))
    return BallModel(d.tree, tuple(balls))


def solve_complete(s: SignedGraph, m: BallModel) -> Drawing:
    """Valid drawing of ``s`` from any ball model of its positive subgraph."""
    _require_complete(s)
    _require_realises(s, m)
    unit = to_unit_nsi(m)
    if len({b.center for b in unit.balls}) < len(unit.balls):
        unit = unit_to_proper(unit)[0]
    return drawing_from_unit_model(s, unit)


def roundtrip_report(s: SignedGraph, m: BallModel) -> Tuple[bool, Optional[str]]:
    """Run both directions and name the first property that fails, if any."""
    d = solve_complete(s, m)
    ok, violations = check_valid_drawing(s, d)
    if not ok:
        return False, f"solved drawing is invalid: {violations[0]}"
    back = model_from_drawing(s, d)
    if intersection_graph(back) != positive_subgraph(s):
        _, diffs = validate_model(back, positive_subgraph(s))
        return False, f"model from drawing does not realise the positive subgraph: {diffs[0]}"
    return True, None


def roundtrip_check(s: SignedGraph, m: BallModel) -> bool:
    return roundtrip_report(s, m)[0]
