"""Bipartite matching and the 2-matching / 2-vertex-cover layer.

Every 2-matching question on a graph G is answered on its doubled graph D(G):
left copies i', right copies i'', and for each edge ij the two edges i'-j''
and j'-i''. A maximum matching M of D(G) gives

* a maximum 2-matching, weight of ij = number of matched copies among
  {i'-j'', j'-i''};
* through Koenig's theorem a minimum vertex cover C of D(G), hence a minimum
  2-vertex cover u_i = |C & {i', i''}|.

Both have size |M|, which is the equality nu_2 = tau_2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import ContractError, HallViolation, NotBipartiteError
from .graph_core import Graph, NodeSet, _check, neighbors_bits

UNMATCHED = -1


@dataclass(frozen=True)
class BipartiteGraph:
    left_n: int
    right_n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.edges) != self.left_n:
            raise ContractError("one adjacency list per left node required")
        for nbrs in self.edges:
            if len(set(nbrs)) != len(nbrs) or any(not 0 <= r < self.right_n for r in nbrs):
                raise ContractError("right neighbours must be distinct and in range")

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.edges)


@dataclass(frozen=True)
class Matching:
    left: tuple[int, ...]   # right partner per left node, or UNMATCHED
    right: tuple[int, ...]  # left partner per right node, or UNMATCHED

    @property
    def size(self) -> int:
        return sum(1 for r in self.left if r != UNMATCHED)

    def pairs(self) -> dict[int, int]:
        return {u: r for u, r in enumerate(self.left) if r != UNMATCHED}


@dataclass(frozen=True)
class TwoVertexCover:
    weights: tuple[int, ...]
    size: int

    def zeros(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w == 0]


@dataclass(frozen=True)
class TwoMatching:
    weights: dict[tuple[int, int], int]  # (i, j) with i < j -> weight in {1, 2}
    size: int

    def node_load(self, n: int) -> list[int]:
        load = [0] * n
        for (i, j), w in self.weights.items():
            load[i] += w
            load[j] += w
        return load


def double_graph(g: Graph) -> BipartiteGraph:
    # left copy i' is adjacent to j'' exactly when ij is an edge
    return BipartiteGraph(g.n, g.n, g.adj)


def _hopcroft_karp(adj: Sequence[Sequence[int]], right_n: int) -> tuple[list[int], list[int]]:
    left_n = len(adj)
    match_l = [UNMATCHED] * left_n
    match_r = [UNMATCHED] * right_n
    inf = left_n + right_n + 1
    while True:
        dist = [inf] * left_n
        queue = deque()
        for u in range(left_n):
            if match_l[u] == UNMATCHED:
                dist[u] = 0
                queue.append(u)
        limit = inf
        while queue:
            u = queue.popleft()
            if dist[u] >= limit:
                continue
            for r in adj[u]:
                w = match_r[r]
                if w == UNMATCHED:
                    if limit == inf:
                        limit = dist[u] + 1
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if limit == inf:
            return match_l, match_r
        ptr = [0] * left_n
        for root in range(left_n):
            if match_l[root] != UNMATCHED:
                continue
            stack = [root]
            via: list[int] = []
            while stack:
                x = stack[-1]
                nbrs = adj[x]
                pushed = False
                while ptr[x] < len(nbrs):
                    r = nbrs[ptr[x]]
                    ptr[x] += 1
                    w = match_r[r]
                    if w == UNMATCHED:
                        if dist[x] + 1 == limit:
                            via.append(r)
                            for k, node in enumerate(stack):
                                match_l[node] = via[k]
                                match_r[via[k]] = node
                            stack = []
                            pushed = True
                            break
                    elif dist[w] == dist[x] + 1:
                        via.append(r)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[x] = inf
                    stack.pop()
                    if via:
                        via.pop()


def max_matching(b: BipartiteGraph) -> Matching:
    """Maximum cardinality matching by Hopcroft-Karp, O(sqrt(n) m).

    Free left nodes are processed in index order and neighbours in list
    order, so the result is reproducible.
    """
    ml, mr = _hopcroft_karp(b.edges, b.right_n)
    return Matching(tuple(ml), tuple(mr))


def _alternating_reach(
    adj: Sequence[Sequence[int]], match_l: Sequence[int], match_r: Sequence[int], roots
) -> tuple[set[int], set[int]]:
    seen_l = set(roots)
    seen_r: set[int] = set()
    queue = deque(seen_l)
    while queue:
        u = queue.popleft()
        for r in adj[u]:
            if r in seen_r or match_l[u] == r:
                continue
            seen_r.add(r)
            w = match_r[r]
            if w != UNMATCHED and w not in seen_l:
                seen_l.add(w)
                queue.append(w)
    return seen_l, seen_r


def min_vertex_cover(b: BipartiteGraph, m: Matching) -> tuple[frozenset[int], frozenset[int]]:
    """Koenig cover (left part, right part) from a maximum matching."""
    free = [u for u in range(b.left_n) if m.left[u] == UNMATCHED]
    z_l, z_r = _alternating_reach(b.edges, m.left, m.right, free)
    if __debug__:
        assert all(m.right[r] != UNMATCHED for r in z_r), "matching is not maximum"
    cover_l = frozenset(u for u in range(b.left_n) if u not in z_l)
    cover_r = frozenset(z_r)
    assert len(cover_l) + len(cover_r) == m.size
    return cover_l, cover_r


def min_two_vertex_cover(g: Graph) -> TwoVertexCover:
    d = double_graph(g)
    m = max_matching(d)
    cov_l, cov_r = min_vertex_cover(d, m)
    weights = tuple(int(i in cov_l) + int(i in cov_r) for i in range(g.n))
    size = sum(weights)
    assert size == m.size, "tau_2 must equal nu_2"
    return TwoVertexCover(weights, size)


def two_matching_from(g: Graph, m: Matching) -> TwoMatching:
    weights: dict[tuple[int, int], int] = {}
    for i, r in enumerate(m.left):
        if r != UNMATCHED:
            key = (i, r) if i < r else (r, i)
            weights[key] = weights.get(key, 0) + 1
    return TwoMatching(weights, m.size)


def max_two_matching(g: Graph) -> TwoMatching:
    return two_matching_from(g, max_matching(double_graph(g)))


def max_two_matching_size(g: Graph) -> int:
    return max_matching(double_graph(g)).size


def has_perfect_two_matching(g: Graph) -> bool:
    return max_two_matching_size(g) == g.n


def perfect_after_deletion(g: Graph, m: Matching, i: int) -> bool:
    """Does G - i admit a perfect 2-matching, given a perfect matching m of D(G)?

    Deleting i' and i'' frees one left and one right node; D(G - i) has a
    perfect matching iff a single augmenting path joins them.
    """
    if g.n == 1:
        return True
    target = m.left[i]
    start = m.right[i]
    seen_l = {start}
    seen_r = set()
    queue = deque([start])
    adj = g.adj
    match_r = m.right
    while queue:
        u = queue.popleft()
        for r in adj[u]:
            if r == i or r in seen_r:
                continue
            if r == target:
                return True
            seen_r.add(r)
            w = match_r[r]
            if w not in seen_l:
                seen_l.add(w)
                queue.append(w)
    return False


def two_coloring(g: Graph) -> list[int]:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise NotBipartiteError((u, w))
    return color


def bipartite_fast_path(g: Graph) -> tuple[int, TwoMatching]:
    """Maximum 2-matching of a bipartite graph: twice a maximum matching."""
    color = two_coloring(g)
    left = [v for v in range(g.n) if color[v] == 0]
    right = [v for v in range(g.n) if color[v] == 1]
    pos = {v: k for k, v in enumerate(right)}
    b = BipartiteGraph(len(left), len(right), tuple(tuple(pos[w] for w in g.adj[v]) for v in left))
    m = max_matching(b)
    weights = {}
    for k, r in enumerate(m.left):
        if r != UNMATCHED:
            i, j = left[k], right[r]
            weights[(min(i, j), max(i, j))] = 2
    return 2 * m.size, TwoMatching(weights, 2 * m.size)


def hall_witness(g: Graph, s: NodeSet) -> dict[int, int]:
    """Injective map phi: S -> N(S) with phi(i) adjacent to i.

    Raises HallViolation carrying a subset T of S with |T| > |N(T)| when no
    such map exists.
    """
    _check(g, s)
    if neighbors_bits(g, s.bits) & s.bits:
        raise ContractError("hall_witness needs an independent set")
    left = s.indices()
    right = NodeSet(neighbors_bits(g, s.bits), g.n).indices()
    pos = {v: k for k, v in enumerate(right)}
    adj = tuple(tuple(pos[w] for w in g.adj[v]) for v in left)
    b = BipartiteGraph(len(left), len(right), adj)
    m = max_matching(b)
    if m.size == len(left):
        return {left[k]: right[r] for k, r in enumerate(m.left)}
    root = next(k for k, r in enumerate(m.left) if r == UNMATCHED)
    z_l, _ = _alternating_reach(adj, m.left, m.right, [root])
    raise HallViolation(g.nodeset(left[k] for k in z_l))
