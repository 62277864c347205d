"""Seeded random graph models and named fixture graphs.

Randomness comes from numpy's PCG64 bit generator keyed by a
``SeedSequence(seed, spawn_key=(stream,))``, so a given (seed, stream,
parameters) triple always yields the same graph.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph_core import Graph

_U64 = 2**64


@dataclass(frozen=True)
class RngSeed:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < _U64 and 0 <= self.stream < _U64):
            raise DomainError("seed and stream must be unsigned 64-bit integers")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))


def _rng(seed: int | RngSeed, stream: int = 0) -> np.random.Generator:
    if isinstance(seed, RngSeed):
        return seed.generator()
    return RngSeed(int(seed), stream).generator()


def erdos_renyi(
    n: int,
    p: float | None = None,
    *,
    mean_degree: float | None = None,
    seed: int | RngSeed,
    stream: int = 0,
) -> Graph:
    """G(n, p): every unordered pair independently with probability p.

    Pairs are visited in row-major upper-triangle order, one uniform draw each.
    """
    if (p is None) == (mean_degree is None):
        raise DomainError("give exactly one of p and mean_degree")
    if n < 0:
        raise DomainError("n must be non-negative")
    if p is None:
        p = mean_degree / (n - 1) if n > 1 else 0.0
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"edge probability {p} outside [0, 1]")
    rng = _rng(seed, stream)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph.from_edges(zip(iu[keep].tolist(), ju[keep].tolist()), n=n)


def barabasi_albert(n: int, m_per_step: int, *, seed: int | RngSeed, stream: int = 0) -> Graph:
    """Preferential attachment grown from a single node.

    Node t picks min(m_per_step, t) distinct earlier nodes, drawn one after
    another without replacement with probability proportional to degree + 1.
    The draws use exponential keys (Efraimidis-Spirakis): the k largest
    log(u)/w have the same law as k successive weighted draws.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if not 1 <= m_per_step <= max(1, n // 2):
        raise DomainError(f"m_per_step must lie in [1, n/2], got {m_per_step}")
    rng = _rng(seed, stream)
    deg = np.zeros(n, dtype=np.int64)
    edges = []
    for t in range(1, n):
        k = min(m_per_step, t)
        keys = np.log(rng.random(t)) / (deg[:t] + 1)
        targets = np.argpartition(-keys, k - 1)[:k] if k < t else np.arange(t)
        for s in targets.tolist():
            edges.append((s, t))
        deg[targets] += 1
        deg[t] += k
    return Graph.from_edges(edges, n=n)


def random_regular(n: int, d: int, *, seed: int | RngSeed, stream: int = 0, tries: int = 1000) -> Graph:
    """Random d-regular graph by stub pairing that skips loops and repeats.

    Stubs are paired one at a time, each new pair drawn among stubs that would
    not create a loop or a duplicate edge; a dead end restarts the attempt.
    """
    if d < 0 or d >= max(n, 1) or (n * d) % 2:
        raise DomainError(f"no {d}-regular graph on {n} nodes")
    rng = _rng(seed, stream)
    for _ in range(tries):
        left = [d] * n
        nbrs: list[set[int]] = [set() for _ in range(n)]
        edges = []
        while len(edges) < n * d // 2:
            stubs = np.repeat(np.arange(n), left)
            a = int(stubs[rng.integers(stubs.size)])
            ok = np.array([v != a and v not in nbrs[a] for v in stubs.tolist()])
            if not ok.any():
                break
            b = int(stubs[ok][rng.integers(int(ok.sum()))])
            nbrs[a].add(b)
            nbrs[b].add(a)
            left[a] -= 1
            left[b] -= 1
            edges.append((a, b))
        else:
            return Graph.from_edges(edges, n=n)
    raise DomainError(f"stub pairing failed after {tries} tries")


# -- named fixtures ----------------------------------------------------------

def _labelled(labels: list[str], edges: list[tuple[str, str]]) -> Graph:
    pos = {lab: i for i, lab in enumerate(labels)}
    return Graph.from_edges(((pos[a], pos[b]) for a, b in edges), labels=labels)


WHITES = [f"w{k}" for k in range(1, 7)]
GREYS = [f"g{k}" for k in range(1, 6)]


def star6() -> Graph:
    leaves = [f"l{k}" for k in range(1, 7)]
    return _labelled(["c"] + leaves, [("c", x) for x in leaves])


def fig1_topright() -> Graph:
    """Centre joined to six whites paired off by three white-white edges."""
    edges = [("b", w) for w in WHITES] + [("w1", "w2"), ("w3", "w4"), ("w5", "w6")]
    return _labelled(["b"] + WHITES, edges)


def fig1_bottomleft() -> Graph:
    """Centre joined to six whites; w1, w2 hang alone, w3-w4-w5-w6 is a path."""
    edges = [("b", w) for w in WHITES] + [("w3", "w4"), ("w4", "w5"), ("w5", "w6")]
    return _labelled(["b"] + WHITES, edges)


def bottomright_wiring() -> list[tuple[int, int]]:
    """(white, grey) index pairs of the smallest admissible grey wiring.

    Admissible: whites stay independent, greys touch only whites, every grey
    touches some white, and exactly one white has two grey neighbours (so
    the centre sees white degrees 2,2,2,2,2,3 and N(whites) = centre + 5 greys).
    Among those, the lexicographically smallest sorted pair list is used.
    """
    w1_greys = [(0, 0), (0, 1)]
    rest = [(w, 0) for w in (1, 2)] + [(w, w - 1) for w in (3, 4, 5)]
    return sorted(w1_greys + rest)


def fig1_bottomright() -> Graph:
    edges = [("b", w) for w in WHITES]
    edges += [(WHITES[w], GREYS[g]) for w, g in bottomright_wiring()]
    return _labelled(["b"] + WHITES + GREYS, edges)


def cycle(k: int) -> Graph:
    if k < 3:
        raise DomainError("cycle needs at least 3 nodes")
    return Graph.from_edges([(i, (i + 1) % k) for i in range(k)], n=k)


def path(k: int) -> Graph:
    if k < 1:
        raise DomainError("path needs at least 1 node")
    return Graph.from_edges([(i, i + 1) for i in range(k - 1)], n=k)


def complete(k: int) -> Graph:
    if k < 1:
        raise DomainError("complete graph needs at least 1 node")
    return Graph.from_edges(itertools.combinations(range(k), 2), n=k)


def star(k: int) -> Graph:
    """Centre 0 with k leaves."""
    return Graph.from_edges([(0, i) for i in range(1, k + 1)], n=k + 1)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(outer + spokes + inner, n=10)


_FIXED = {
    "star6": star6,
    "fig1_topright": fig1_topright,
    "fig1_bottomleft": fig1_bottomleft,
    "fig1_bottomright": fig1_bottomright,
    "petersen": petersen,
}
_SIZED = {"cycle": cycle, "complete": complete, "path": path, "star": star}
_NAME = re.compile(r"^([a-z0-9_]+?)(?:\((\d+)\)|:(\d+))?$")


def fixtures(name: str) -> Graph:
    """Named graph: star6, fig1_*, petersen, or cycle(k) / complete(k) / path(k) / star(k)."""
    m = _NAME.match(name.strip())
    if not m:
        raise DomainError(f"unknown fixture {name!r}")
    base, k1, k2 = m.groups()
    size = k1 or k2
    if base in _FIXED and size is None:
        return _FIXED[base]()
    if base in _SIZED and size is not None:
        return _SIZED[base](int(size))
    raise DomainError(f"unknown fixture {name!r}")


FIXTURE_NAMES = tuple(_FIXED) + tuple(f"{k}(k)" for k in _SIZED)
