"""Static pictures of trees, ball models and drawings.

DOT output is plain text.  SVG and PNG go through matplotlib with a fixed
hash salt and no timestamp metadata, so equal inputs give equal bytes.
"""
from __future__ import annotations

import io as _io
import math
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .ball_models import BallModel, balls_intersect, contains, center_distance, slack  # noqa: E402
from .errors import InvalidInput  # noqa: E402
from .metric_tree import Location, RealTree, ball_segments  # noqa: E402
from .signed_graphs import Drawing  # noqa: E402

Document = Union[RealTree, BallModel, Drawing]

FORMATS = ("dot", "svg", "png")
_RC = {
    "svg.hashsalt": "scfe",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
    "font.size": 8,
}


def _parts(doc: Document) -> Tuple[RealTree, List[Tuple[str, Location, Optional[Fraction]]]]:
    """Tree plus labelled marks ``(label, location, radius or None)``."""
    if isinstance(doc, RealTree):
        return doc, []
    if isinstance(doc, BallModel):
        return doc.tree, [(b.vertex, b.center, b.radius) for b in sorted(doc.balls, key=lambda b: b.vertex)]
    if isinstance(doc, Drawing):
        return doc.tree, [(v, loc, None) for v, loc in sorted(doc.points.items())]
    raise InvalidInput(f"cannot render {type(doc).__name__}")


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- DOT ------------------------------------------------------------------


def to_dot(doc: Document) -> str:
    tree, marks = _parts(doc)
    lines = ["graph scfe {", '  node [shape=circle, fontsize=10];']
    for n in tree.nodes:
        lines.append(f'  "{n}";')
    interior: Dict[str, List[Fraction]] = {}
    for _, loc, _ in marks:
        if loc.edge is not None:
            interior.setdefault(loc.edge, []).append(loc.offset)
    for e in tree.edges:
        offsets = sorted(set(interior.get(e.id, [])))
        if not offsets:
            lines.append(f'  "{e.u}" -- "{e.v}" [label="{_q(e.length)}"];')
            continue
        chain = [(e.u, Fraction(0))]
        for off in offsets:
            pid = f"{e.id}@{_q(off)}"
            lines.append(f'  "{pid}" [shape=point];')
            chain.append((pid, off))
        chain.append((e.v, e.length))
        for (a, oa), (b, ob) in zip(chain, chain[1:]):
            lines.append(f'  "{a}" -- "{b}" [label="{_q(ob - oa)}"];')
    for label, loc, radius in marks:
        anchor = loc.node if loc.node is not None else f"{loc.edge}@{_q(loc.offset)}"
        if radius is None:
            lines.append(f'  "pt:{label}" [shape=plaintext, label="{label}"];')
            lines.append(f'  "pt:{label}" -- "{anchor}" [style=dotted];')
        else:
            lines.append(f'  "ball:{label}" [shape=box, label="{label}\\nr={_q(radius)}"];')
            lines.append(f'  "ball:{label}" -- "{anchor}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- layout ---------------------------------------------------------------


def layout(tree: RealTree) -> Dict[str, Tuple[float, float]]:
    """Equal-angle embedding: edges drawn straight at their true lengths.

    The root is the node of smallest eccentricity (ties: smallest id); each
    subtree gets an angular wedge proportional to its number of leaves.
    """
    if not tree.nodes:
        return {}
    ecc = {n: max(tree.node_distance(n, m) for m in tree.nodes) for n in tree.nodes}
    root = min(tree.nodes, key=lambda n: (ecc[n], n))
    children: Dict[str, List[Tuple[str, Fraction]]] = {n: [] for n in tree.nodes}
    order, seen = [root], {root}
    for x in order:
        for y, e in tree.incident(x):
            if y not in seen:
                seen.add(y)
                children[x].append((y, e.length))
                order.append(y)
    leaves: Dict[str, int] = {}
    for x in reversed(order):
        leaves[x] = sum(leaves[c] for c, _ in children[x]) or 1
    pos = {root: (0.0, 0.0)}
    wedge = {root: (0.0, 2 * math.pi)}
    for x in order:
        lo, hi = wedge[x]
        span = hi - lo
        for c, length in children[x]:
            share = span * leaves[c] / leaves[x]
            wedge[c] = (lo, lo + share)
            mid = lo + share / 2
            px, py = pos[x]
            pos[c] = (px + float(length) * math.cos(mid), py + float(length) * math.sin(mid))
            lo += share
    return pos


def _point(tree: RealTree, pos, edge_id: str, offset: Fraction) -> Tuple[float, float]:
    e = tree.edge(edge_id)
    t = float(offset / e.length)
    (ux, uy), (vx, vy) = pos[e.u], pos[e.v]
    return ux + t * (vx - ux), uy + t * (vy - uy)


def _loc_xy(tree: RealTree, pos, loc: Location) -> Tuple[float, float]:
    if loc.node is not None:
        return pos[loc.node]
    return _point(tree, pos, loc.edge, loc.offset)


def figure(doc: Document, title: Optional[str] = None):
    tree, marks = _parts(doc)
    pos = layout(tree)
    cmap = plt.get_cmap("tab10")
    xs = [x for x, _ in pos.values()] or [0.0]
    ys = [y for _, y in pos.values()] or [0.0]
    gap = 0.012 * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 6))
        for e in tree.edges:
            (ux, uy), (vx, vy) = pos[e.u], pos[e.v]
            ax.plot([ux, vx], [uy, vy], color="0.6", lw=1, zorder=1)
        for n in tree.nodes:
            x, y = pos[n]
            ax.plot([x], [y], "o", color="0.4", ms=3, zorder=2)
            ax.annotate(n, (x, y), textcoords="offset points", xytext=(3, -8), color="0.45", fontsize=6)
        for k, (label, loc, radius) in enumerate(marks):
            colour = cmap(k % 10)
            x, y = _loc_xy(tree, pos, loc)
            if radius is not None:
                # each ball drawn on its own lane beside the edge so overlaps stay visible
                lane = (k - (len(marks) - 1) / 2) * gap
                for i, (edge_id, lo, hi) in enumerate(ball_segments(tree, loc, radius)):
                    (ax0, ay0), (ax1, ay1) = _point(tree, pos, edge_id, lo), _point(tree, pos, edge_id, hi)
                    e = tree.edge(edge_id)
                    (ux, uy), (vx, vy) = pos[e.u], pos[e.v]
                    norm = math.hypot(vx - ux, vy - uy) or 1.0
                    nx, ny = -(vy - uy) / norm * lane, (vx - ux) / norm * lane
                    ax.plot([ax0 + nx, ax1 + nx], [ay0 + ny, ay1 + ny],
                            color=colour, lw=3, alpha=0.6, solid_capstyle="round", zorder=3,
                            gid=f"ball-{label}-{i}")
                ax.plot([x], [y], "o", color=colour, ms=5, zorder=4)
                ax.annotate(f"{label} (r={_q(radius)})", (x, y), textcoords="offset points",
                            xytext=(4, 4), color=colour)
            else:
                ax.plot([x], [y], "s", color="black", ms=4, zorder=4)
                ax.annotate(label, (x, y), textcoords="offset points", xytext=(4, 4))
        ax.set_aspect("equal", adjustable="datalim")
        ax.axis("off")
        if title:
            ax.set_title(title)
        fig.tight_layout()
    return fig


def render(doc: Document, fmt: str = "svg", title: Optional[str] = None) -> bytes:
    """Render to ``dot``, ``svg`` or ``png`` bytes."""
    if fmt == "dot":
        return to_dot(doc).encode()
    if fmt not in FORMATS:
        raise InvalidInput(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    fig = figure(doc, title)
    buf = _io.BytesIO()
    with plt.rc_context(_RC):
        if fmt == "svg":
            fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
        else:
            fig.savefig(buf, format="png", dpi=120, metadata={"Software": None})
    plt.close(fig)
    return buf.getvalue()


# -- report ---------------------------------------------------------------


def pair_table(m: BallModel) -> str:
    """Tab-separated pairwise geometry of a model, one row per vertex pair."""
    rows = ["u\tv\tdistance\tslack\tintersect\tu_contains_v\tv_contains_u"]
    for u, v in combinations(m.labels(), 2):
        rows.append("\t".join([
            u, v, _q(center_distance(m, u, v)), _q(slack(m, u, v)),
            str(balls_intersect(m, u, v)).lower(),
            str(contains(m, u, v)).lower(), str(contains(m, v, u)).lower(),
        ]))
    return "\n".join(rows) + "\n"


def write_report(m: BallModel, out_dir: Union[str, Path], fmt: str = "svg",
                 extra: Optional[Dict[str, BallModel]] = None) -> List[Path]:
    """Write ``pairs.tsv`` plus one figure per model into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    models = {"model": m, **(extra or {})}
    for name, model in models.items():
        table = out / f"{name}_pairs.tsv"
        table.write_text(pair_table(model))
        fig_path = out / f"{name}.{fmt}"
        fig_path.write_bytes(render(model, fmt, title=name))
        written += [table, fig_path]
    return written
