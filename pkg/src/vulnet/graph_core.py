"""Graph representation, node sets and the group measures v, p and q.

Node sets are bitsets held in a Python ``int`` (bit ``i`` set means node ``i``
is a member), so union, intersection and neighbourhood expansion are
word-parallel.
"""

from __future__ import annotations

import io
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from .errors import DomainError, ParseError

# above this many nodes per-node neighbour masks are not cached
_MASK_CACHE_LIMIT = 4096


def bits_to_indices(bits: int) -> list[int]:
    if bits < 0:
        raise DomainError("negative bitset")
    if bits.bit_length() <= 512:
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out
    raw = bits.to_bytes((bits.bit_length() + 7) // 8, "little")
    flags = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(flags).tolist()


def indices_to_bits(indices: Iterable[int], n: int) -> int:
    idx = np.fromiter(indices, dtype=np.int64)
    if idx.size == 0:
        return 0
    if idx.min() < 0 or idx.max() >= n:
        bad = int(idx[(idx < 0) | (idx >= n)][0])
        raise DomainError(f"node index {bad} out of range for {n} nodes")
    flags = np.zeros(n, dtype=np.uint8)
    flags[idx] = 1
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class NodeSet:
    """Immutable subset of ``{0, ..., n-1}``."""

    bits: int
    n: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise DomainError(f"node set has members outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, indices: Iterable[int] = ()) -> NodeSet:
        return cls(indices_to_bits(indices, n), n)

    @classmethod
    def empty(cls, n: int) -> NodeSet:
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> NodeSet:
        return cls((1 << n) - 1, n)

    def indices(self) -> list[int]:
        return bits_to_indices(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and (self.bits >> i) & 1 == 1

    def _check(self, other: NodeSet) -> None:
        if other.n != self.n:
            raise DomainError(f"universe mismatch: {self.n} vs {other.n}")

    def __or__(self, other: NodeSet) -> NodeSet:
        self._check(other)
        return NodeSet(self.bits | other.bits, self.n)

    def __and__(self, other: NodeSet) -> NodeSet:
        self._check(other)
        return NodeSet(self.bits & other.bits, self.n)

    def __sub__(self, other: NodeSet) -> NodeSet:
        self._check(other)
        return NodeSet(self.bits & ~other.bits, self.n)

    def complement(self) -> NodeSet:
        return NodeSet(((1 << self.n) - 1) & ~self.bits, self.n)

    def issubset(self, other: NodeSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __repr__(self) -> str:
        return f"NodeSet({self.indices()}, n={self.n})"


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    ``adj[i]`` is the sorted tuple of neighbours of ``i`` and ``labels[i]`` the
    external name of node ``i``.
    """

    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    m: int = field(init=False)

    def __post_init__(self):
        n = len(self.adj)
        if len(self.labels) != n:
            raise DomainError("label table size does not match node count")
        total = 0
        for i, nbrs in enumerate(self.adj):
            prev = -1
            for j in nbrs:
                if j <= prev:
                    raise DomainError(f"adjacency of node {i} not strictly sorted")
                if j == i:
                    raise DomainError(f"self-loop at node {i}")
                if not 0 <= j < n:
                    raise DomainError(f"neighbour {j} of node {i} out of range")
                prev = j
            total += len(nbrs)
        for i, nbrs in enumerate(self.adj):
            for j in nbrs:
                if not _sorted_contains(self.adj[j], i):
                    raise DomainError(f"asymmetric adjacency between {i} and {j}")
        object.__setattr__(self, "m", total // 2)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        n: int | None = None,
        labels: Sequence[str] | None = None,
    ) -> Graph:
        """Build a graph from index pairs; duplicate edges collapse."""
        edges = list(edges)
        if n is None:
            n = len(labels) if labels is not None else 1 + max((max(e) for e in edges), default=-1)
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for i, j in edges:
            if i == j:
                raise DomainError(f"self-loop at node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"edge ({i}, {j}) out of range for {n} nodes")
            nbrs[i].add(j)
            nbrs[j].add(i)
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(tuple(tuple(sorted(s)) for s in nbrs), tuple(labels))

    @property
    def n(self) -> int:
        return len(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def degree(self, i: int) -> int:
        return len(self.adj[i])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, nbrs in enumerate(self.adj):
            for j in nbrs:
                if i < j:
                    yield i, j

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise DomainError(f"unknown node label {label!r}") from None

    def nodeset(self, indices: Iterable[int] = ()) -> NodeSet:
        return NodeSet.of(self.n, indices)

    def nodeset_by_label(self, labels: Iterable[str]) -> NodeSet:
        return NodeSet.of(self.n, (self.index(lab) for lab in labels))

    def label_list(self, s: NodeSet) -> list[str]:
        return [self.labels[i] for i in s.indices()]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood bitmask per node."""
        out = []
        for nbrs in self.adj:
            b = 0
            for j in nbrs:
                b |= 1 << j
            out.append(b)
        return tuple(out)


def _sorted_contains(seq: tuple[int, ...], x: int) -> bool:
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(seq) and seq[lo] == x


def load_edge_list(text: str | TextIO) -> Graph:
    """Parse a whitespace-separated edge list.

    Labels are interned in order of first appearance; ``#`` starts a comment
    and blank lines are skipped. Duplicate edges collapse, self-loops are
    rejected.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(stream, start=1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 2:
            raise ParseError(f"expected 2 labels at line {lineno}, got {len(body)}")
        a, b = body
        if a == b:
            raise ParseError(f"self-loop at line {lineno}")
        ids = []
        for lab in (a, b):
            if lab not in index:
                index[lab] = len(labels)
                labels.append(lab)
            ids.append(index[lab])
        edges.append((ids[0], ids[1]))
    return Graph.from_edges(edges, n=len(labels), labels=labels)


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh)


def write_edge_list(g: Graph, sink: TextIO) -> None:
    for i, j in g.edges():
        sink.write(f"{g.labels[i]} {g.labels[j]}\n")


def _check(g: Graph, t: NodeSet) -> None:
    if t.n != g.n:
        raise DomainError(f"node set over {t.n} nodes used with graph of {g.n} nodes")


def neighbors_bits(g: Graph, bits: int) -> int:
    """N(T) for a raw bitmask ``T``."""
    if g.n <= _MASK_CACHE_LIMIT:
        masks = g.masks
        out = 0
        while bits:
            low = bits & -bits
            out |= masks[low.bit_length() - 1]
            bits ^= low
        return out
    flags = np.zeros(g.n, dtype=np.uint8)
    for i in bits_to_indices(bits):
        flags[list(g.adj[i])] = 1
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def neighbors_of_set(g: Graph, t: NodeSet) -> NodeSet:
    """N(T): every node adjacent to some member of T (may intersect T)."""
    _check(g, t)
    return NodeSet(neighbors_bits(g, t.bits), g.n)


def vulnerability_of_set(g: Graph, t: NodeSet) -> int:
    """v(T) = |T| - |N(T)|."""
    _check(g, t)
    nb = neighbors_bits(g, t.bits)
    value = t.bits.bit_count() - nb.bit_count()
    if __debug__:
        isolated = t.bits & ~nb
        outside = nb & ~t.bits
        assert value == isolated.bit_count() - outside.bit_count()
    return value


def controlled_bits(g: Graph, bits: int) -> int:
    """B(T) for a raw bitmask: nodes whose whole neighbourhood lies in T."""
    if g.n <= _MASK_CACHE_LIMIT:
        out = 0
        for i, mk in enumerate(g.masks):
            if mk & ~bits == 0:
                out |= 1 << i
        return out
    members = set(bits_to_indices(bits))
    return indices_to_bits(
        (i for i, nbrs in enumerate(g.adj) if all(j in members for j in nbrs)), g.n
    )


def controlled_set(g: Graph, t: NodeSet) -> NodeSet:
    """B(T) = {i : N({i}) is a subset of T}."""
    _check(g, t)
    b = controlled_bits(g, t.bits)
    if __debug__:
        s = b & ~t.bits
        assert neighbors_bits(g, s) & s == 0, "S(T) must be independent"
    return NodeSet(b, g.n)


def power_p(g: Graph, t: NodeSet) -> int:
    """p(T) = |B(T)| - |T|."""
    _check(g, t)
    return controlled_bits(g, t.bits).bit_count() - len(t)


def power_q(g: Graph, t: NodeSet) -> int:
    """q(T) = |B(T) \\ T| - |T|."""
    _check(g, t)
    return (controlled_bits(g, t.bits) & ~t.bits).bit_count() - len(t)


def is_independent(g: Graph, s: NodeSet) -> bool:
    _check(g, s)
    return neighbors_bits(g, s.bits) & s.bits == 0


def boundary(g: Graph, s: NodeSet) -> int:
    """Number of edges with exactly one endpoint in S."""
    _check(g, s)
    count = 0
    for i in s.indices():
        for j in g.adj[i]:
            if not (s.bits >> j) & 1:
                count += 1
    return count


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise DomainError("empty graph has no minimum degree")
    return min(g.degrees)


def component_labels(g: Graph) -> list[int]:
    """Component id per node, ids numbered by smallest member."""
    comp = [-1] * g.n
    c = 0
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = c
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if comp[w] < 0:
                    comp[w] = c
                    queue.append(w)
        c += 1
    return comp


def is_connected(g: Graph) -> bool:
    return g.n > 0 and max(component_labels(g)) == 0


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``keep``; returns it with the local-to-global map.

    Relative node order is preserved, so neighbour iteration order is too.
    """
    nodes = tuple(sorted(set(keep)))
    local = {v: k for k, v in enumerate(nodes)}
    adj = tuple(tuple(local[w] for w in g.adj[v] if w in local) for v in nodes)
    return Graph(adj, tuple(g.labels[v] for v in nodes)), nodes


def delete_nodes(g: Graph, removed: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    gone = set(removed)
    return induced_subgraph(g, (v for v in range(g.n) if v not in gone))


def connected_components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    """Components as standalone graphs, each with its local-to-global map."""
    comp = component_labels(g)
    groups: dict[int, list[int]] = {}
    for v, c in enumerate(comp):
        groups.setdefault(c, []).append(v)
    return [induced_subgraph(g, groups[c]) for c in sorted(groups)]


def largest_component(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    comps = connected_components(g)
    return max(comps, key=lambda cg: (cg[0].n, -cg[1][0]))
