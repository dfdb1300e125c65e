"""JSON (de)serialization.  Rationals always travel as ``"p/q"`` strings."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .ball_models import Ball, BallModel, Graph
from .errors import InvalidInput
from .metric_tree import Edge, Location, RealTree, Split, as_rational
from .model_transforms import Step, TransformReport
from .recognition import BalancedVerdict, FilterVerdict, StrongVerdict
from .signed_graphs import Drawing, SignedGraph


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _opt(q: Optional[Fraction]) -> Optional[str]:
    return None if q is None else fmt(q)


def _field(d: Any, key: str, kind=None):
    if not isinstance(d, dict):
        raise InvalidInput(f"expected an object with key {key!r}")
    if key not in d:
        raise InvalidInput(f"missing key {key!r}")
    value = d[key]
    if kind is not None and not isinstance(value, kind):
        raise InvalidInput(f"key {key!r} has the wrong type")
    return value


def _labels(items) -> List[str]:
    if not isinstance(items, list) or not all(isinstance(x, str) for x in items):
        raise InvalidInput("expected a list of string labels")
    return items


def _pairs(items) -> List[tuple]:
    if not isinstance(items, list):
        raise InvalidInput("expected a list of label pairs")
    out = []
    for p in items:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
            raise InvalidInput(f"malformed edge {p!r}")
        out.append(tuple(p))
    return out


# -- trees and locations ---------------------------------------------------


def tree_to_dict(t: RealTree) -> Dict[str, Any]:
    d: Dict[str, Any] = {
        "nodes": list(t.nodes),
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "length": fmt(e.length)} for e in t.edges],
    }
    if t.splits:
        d["splits"] = [
            {"old": s.old, "offset": fmt(s.offset), "node": s.node, "left": s.left, "right": s.right}
            for s in t.splits
        ]
    return d


def tree_from_dict(d: Any) -> RealTree:
    nodes = _labels(_field(d, "nodes"))
    edges = []
    for e in _field(d, "edges", list):
        edges.append(
            Edge(_field(e, "id", str), _field(e, "u", str), _field(e, "v", str), as_rational(_field(e, "length")))
        )
    splits = [
        Split(_field(s, "old", str), as_rational(_field(s, "offset")), _field(s, "node", str),
              _field(s, "left", str), _field(s, "right", str))
        for s in d.get("splits", [])
    ]
    return RealTree(tuple(nodes), tuple(edges), tuple(splits))


def location_to_dict(loc: Location) -> Dict[str, str]:
    if loc.node is not None:
        return {"node": loc.node}
    return {"edge": loc.edge, "offset": fmt(loc.offset)}


def location_from_dict(d: Any, t: RealTree) -> Location:
    if not isinstance(d, dict):
        raise InvalidInput("location must be an object")
    if "node" in d:
        if set(d) != {"node"}:
            raise InvalidInput("node location takes only the 'node' key")
        return t.check(Location.at_node(_field(d, "node", str)))
    if set(d) != {"edge", "offset"}:
        raise InvalidInput("edge location needs exactly 'edge' and 'offset'")
    e = t.edge(_field(d, "edge", str))
    offset = as_rational(d["offset"])
    if offset == 0:
        return Location.at_node(e.u)
    if offset == e.length:
        return Location.at_node(e.v)
    return t.check(Location(edge=e.id, offset=offset))


def parse_location(text: str, t: RealTree) -> Location:
    """``'{"edge": "e1", "offset": "7/2"}'``, ``e1:7/2`` or a bare node id."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return location_from_dict(json.loads(text), t)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad location JSON: {exc}") from None
    if ":" in text:
        edge, _, offset = text.partition(":")
        return location_from_dict({"edge": edge, "offset": offset}, t)
    return location_from_dict({"node": text}, t)


# -- models and graphs -----------------------------------------------------


def model_to_dict(m: BallModel) -> Dict[str, Any]:
    return {
        "tree": tree_to_dict(m.tree),
        "balls": [
            {"vertex": b.vertex, "center": location_to_dict(b.center), "radius": fmt(b.radius)}
            for b in m.balls
        ],
    }


def model_from_dict(d: Any) -> BallModel:
    t = tree_from_dict(_field(d, "tree", dict))
    balls = []
    for b in _field(d, "balls", list):
        radius = as_rational(_field(b, "radius"))
        balls.append(Ball(_field(b, "vertex", str), location_from_dict(_field(b, "center"), t), radius))
    return BallModel(t, tuple(balls))


def graph_to_dict(g: Graph) -> Dict[str, Any]:
    return {"vertices": sorted(g.vertices), "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_dict(d: Any) -> Graph:
    return Graph.build(_labels(_field(d, "vertices")), _pairs(_field(d, "edges")))


def signed_to_dict(s: SignedGraph) -> Dict[str, Any]:
    def pairs(es):
        return sorted(sorted(e) for e in es)

    return {
        "vertices": sorted(s.vertices),
        "positive_edges": pairs(s.positive),
        "negative_edges": pairs(s.negative),
    }


def signed_from_dict(d: Any) -> SignedGraph:
    return SignedGraph.build(
        _labels(_field(d, "vertices")),
        _pairs(_field(d, "positive_edges")),
        _pairs(_field(d, "negative_edges")),
    )


def drawing_to_dict(dr: Drawing) -> Dict[str, Any]:
    return {
        "tree": tree_to_dict(dr.tree),
        "points": {v: location_to_dict(loc) for v, loc in sorted(dr.points.items())},
    }


def drawing_from_dict(d: Any) -> Drawing:
    t = tree_from_dict(_field(d, "tree", dict))
    points = _field(d, "points", dict)
    return Drawing(t, {v: location_from_dict(loc, t) for v, loc in points.items()})


def report_to_dict(r: TransformReport, include_models: bool = True) -> Dict[str, Any]:
    out: Dict[str, Any] = {"steps": [step_to_dict(s) for s in r.steps]}
    if include_models:
        out["before"] = model_to_dict(r.before)
        out["after"] = model_to_dict(r.after)
    return out


def step_to_dict(s: Step) -> Dict[str, Any]:
    return {
        "vertex": s.vertex,
        "action": s.action,
        "amount": fmt(s.amount),
        "bound": _opt(s.bound),
        "epsilon": _opt(s.epsilon),
        "delta": _opt(s.delta),
    }


def filter_to_dict(v: FilterVerdict, strong: Optional[StrongVerdict] = None,
                   balanced: Optional[BalancedVerdict] = None) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "verdict": "refuted" if v.refuted else "passes-necessary-conditions",
        "reason": v.reason,
        "witness": v.witness,
    }
    if strong is not None and strong.strongly_chordal:
        out["strong_elimination_ordering"] = strong.ordering
    if balanced is not None:
        out["balanced_up_to_order"] = balanced.max_order if balanced.balanced else None
    return out


def dumps(d: Any) -> str:
    return json.dumps(d, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from None


def document_kind(d: Any) -> str:
    """Classify a parsed JSON document: tree, model, drawing, graph or signed."""
    if not isinstance(d, dict):
        raise InvalidInput("document must be a JSON object")
    if "balls" in d:
        return "model"
    if "points" in d:
        return "drawing"
    if "positive_edges" in d:
        return "signed"
    if "nodes" in d:
        return "tree"
    if "vertices" in d:
        return "graph"
    raise InvalidInput("unrecognised document")
