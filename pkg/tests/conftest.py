from fractions import Fraction

import pytest

from scfe.ball_models import Ball, BallModel
from scfe.metric_tree import Location, make_tree, on_edge

F = Fraction


def line(length=10):
    """Single edge n0 -- n1; points addressed by their coordinate from n0."""
    return make_tree(["n0", "n1"], [("e0", "n0", "n1", length)])


def at(tree, x):
    return on_edge(tree, "e0", F(x))


def star(legs=3, length=1):
    nodes = ["hub"] + [f"leaf{i}" for i in range(1, legs + 1)]
    return make_tree(nodes, [(f"e{i}", "hub", f"leaf{i}", length) for i in range(1, legs + 1)])


def model(tree, *balls):
    return BallModel(tree, tuple(Ball(v, c, F(r)) for v, c, r in balls))


@pytest.fixture
def line10():
    return line(10)


@pytest.fixture
def star3():
    return star(3, 1)


@pytest.fixture
def k13_model():
    """Hub ball B(hub, 1) and leaf balls at the ends of legs of length 2."""
    t = star(3, 2)
    return model(
        t,
        ("h", Location.at_node("hub"), 1),
        ("x", Location.at_node("leaf1"), 1),
        ("y", Location.at_node("leaf2"), 1),
        ("z", Location.at_node("leaf3"), 1),
    )


FIXTURES = __import__("pathlib").Path(__file__).parent / "fixtures"


def fixture_doc(name):
    from scfe import io

    return io.loads((FIXTURES / name).read_text())


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line_ in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line_)
