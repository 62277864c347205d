import os
from functools import lru_cache
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import strategies as st

from vulnet.graph_core import Graph

DATA = Path(__file__).parent / "data"


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.edges(), n=h.number_of_nodes())


@lru_cache(maxsize=None)
def connected_upto7() -> tuple[Graph, ...]:
    """All connected graphs with 1..7 nodes, one per isomorphism class (996 of them)."""
    return tuple(
        from_nx(h) for h in nx.graph_atlas_g()[1:] if nx.is_connected(h)
    )


@lru_cache(maxsize=None)
def connected8() -> tuple[Graph, ...]:
    """All 11117 connected graphs on 8 nodes (written by scripts/make_universe.py)."""
    lines = (DATA / "connected8.g6").read_text().split()
    return tuple(from_nx(nx.from_graph6_bytes(s.encode())) for s in lines)


def universe() -> tuple[Graph, ...]:
    return connected_upto7() + connected8()


@st.composite
def graphs(draw, min_n=1, max_n=10, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, b in zip(pairs, bits) if b]
    if connected:
        # thread a random spanning path so every draw is connected
        order = draw(st.permutations(range(n)))
        edges += list(zip(order, order[1:]))
    return Graph.from_edges(edges, n=n)


@st.composite
def graph_and_set(draw, min_n=1, max_n=10, connected=False):
    g = draw(graphs(min_n, max_n, connected))
    members = draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    return g, g.nodeset(i for i, b in enumerate(members) if b)


def dataset(*names: str) -> Path | None:
    root = Path(os.environ.get("VULNET_DATA_DIR", DATA / "datasets"))
    for name in names:
        p = root / name
        if p.exists():
            return p
    return None


# -- one summary line per acceptance criterion -------------------------------

_criteria: dict[str, tuple[str, str]] = {}



def pytest_runtest_logreport(report):
    item_marker = getattr(report, "criterion", None)
    if item_marker is None:
        return
    label = item_marker
    prev = _criteria.get(report.nodeid, (label, "PASS"))[1]
    if report.when == "call" or report.outcome != "passed":
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        if prev != "FAIL":
            _criteria[report.nodeid] = (label, outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_criteria.values(), key=lambda t: _sort_key(t[0])):
        terminalreporter.write_line(f"{outcome:4}  {label}")


def _sort_key(label: str):
    head = label.split(" ", 1)[0].rstrip(".:")
    return (int(head) if head.isdigit() else 99, label)
