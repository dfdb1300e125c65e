"""Hypothesis strategies for integer-length trees and points on them."""
from fractions import Fraction

from hypothesis import strategies as st

from scfe.metric_tree import Edge, Location, RealTree, on_edge


@st.composite
def int_trees(draw, max_nodes=12, max_len=5):
    n = draw(st.integers(1, max_nodes))
    nodes = tuple(f"n{i}" for i in range(n))
    edges = []
    for i in range(1, n):
        parent = draw(st.integers(0, i - 1))
        edges.append(Edge(f"e{i - 1}", nodes[parent], nodes[i], Fraction(draw(st.integers(1, max_len)))))
    return RealTree(nodes, tuple(edges))


@st.composite
def int_points(draw, tree):
    """A node or an integer-offset edge point."""
    if not tree.edges or draw(st.booleans()):
        return Location.at_node(draw(st.sampled_from(tree.nodes)))
    e = draw(st.sampled_from(tree.edges))
    return on_edge(tree, e.id, draw(st.integers(0, int(e.length))))


@st.composite
def rational_points(draw, tree, max_den=12):
    if not tree.edges or draw(st.integers(0, 3)) == 0:
        return Location.at_node(draw(st.sampled_from(tree.nodes)))
    e = draw(st.sampled_from(tree.edges))
    q = draw(st.integers(1, max_den))
    p = draw(st.integers(0, int(e.length * q)))
    return on_edge(tree, e.id, Fraction(p, q))


@st.composite
def tree_with_points(draw, k, integer=True, max_nodes=12):
    tree = draw(int_trees(max_nodes=max_nodes))
    make = int_points if integer else rational_points
    return tree, [draw(make(tree)) for _ in range(k)]
