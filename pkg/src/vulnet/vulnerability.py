"""Network vulnerability: sign classification and exact values.

The maximum of v(S) = |S| - |N(S)| over non-empty independent sets S is
written ``nu_bar``; the maximum over all subsets is ``nu_hat``. Graphs split
into three classes by the sign of ``nu_bar``:

* vulnerable (> 0): no perfect 2-matching,
* quasi-regularizable but not regularizable (= 0),
* regularizable (< 0): every single-node deletion keeps a perfect 2-matching.

Non-negative values follow from a minimum 2-vertex cover. Negative values
are found either by enumerating deletion sets (polynomial for bounded
minimum degree) or by branch and bound over independent sets.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded, ContractError, DisconnectedGraphError, DomainError
from .graph_core import (
    Graph,
    NodeSet,
    connected_components,
    delete_nodes,
    is_independent,
    min_degree,
    neighbors_bits,
    vulnerability_of_set,
)
from .matching import (
    double_graph,
    max_matching,
    min_two_vertex_cover,
    perfect_after_deletion,
)

DEFAULT_ENUM_BUDGET = 10**8
DEFAULT_BNB_NODES = 5 * 10**6
ORACLE_MAX_N = 20


def enum_budget() -> int:
    raw = os.environ.get("VULNET_BUDGET")
    return int(float(raw)) if raw else DEFAULT_ENUM_BUDGET


class Verdict(str, enum.Enum):
    VULNERABLE = "vulnerable"
    QUASI = "quasi_regularizable_not_regularizable"
    REGULARIZABLE = "regularizable"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    nu2: int
    failing_node: int | None = None

    @property
    def quasi_regularizable(self) -> bool:
        return self.verdict is not Verdict.VULNERABLE


@dataclass(frozen=True)
class VulnerabilityResult:
    nu_bar: int
    nu_hat: int
    optimal_set: NodeSet
    executioners: NodeSet
    method: str
    lower_bound_only: bool = False


def _result(g: Graph, s: NodeSet, method: str, lower_bound_only: bool = False) -> VulnerabilityResult:
    value = vulnerability_of_set(g, s)
    ex = NodeSet(neighbors_bits(g, s.bits), g.n)
    return VulnerabilityResult(value, max(value, 0), s, ex, method, lower_bound_only)


def check_result(g: Graph, r: VulnerabilityResult) -> None:
    """Recompute a result from scratch and raise AssertionError on mismatch."""
    if not r.optimal_set:
        raise AssertionError("optimal set is empty")
    if not is_independent(g, r.optimal_set):
        raise AssertionError("optimal set is not independent")
    if vulnerability_of_set(g, r.optimal_set) != r.nu_bar:
        raise AssertionError("v(optimal_set) differs from nu_bar")
    if r.nu_hat != max(r.nu_bar, 0):
        raise AssertionError("nu_hat must be max(nu_bar, 0)")
    if r.nu_bar < 1 - min_degree(g):
        raise AssertionError("nu_bar below 1 - min degree")


# --- classification ----------------------------------------------------------


def _classify_connected(g: Graph) -> Classification:
    m = max_matching(double_graph(g))
    if m.size < g.n:
        return Classification(Verdict.VULNERABLE, m.size)
    for i in range(g.n):
        if not perfect_after_deletion(g, m, i):
            return Classification(Verdict.QUASI, m.size, i)
    return Classification(Verdict.REGULARIZABLE, m.size)


def classify(g: Graph, componentwise: bool = False) -> Classification:
    """Sign of nu_bar from perfect 2-matching tests on G and on each G - i.

    Disconnected graphs raise unless ``componentwise``: then the graph is
    vulnerable if some component is, regularizable if all are, and the
    failing node is the lowest one found in a quasi-regularizable component.
    """
    if g.n == 0:
        raise DomainError("empty graph")
    comps = connected_components(g)
    if len(comps) == 1:
        return _classify_connected(g)
    if not componentwise:
        raise DisconnectedGraphError(len(comps))
    parts = [(_classify_connected(c), nodes) for c, nodes in comps]
    nu2 = sum(c.nu2 for c, _ in parts)
    if any(c.verdict is Verdict.VULNERABLE for c, _ in parts):
        return Classification(Verdict.VULNERABLE, nu2)
    failing = [nodes[c.failing_node] for c, nodes in parts if c.verdict is Verdict.QUASI]
    if failing:
        return Classification(Verdict.QUASI, nu2, min(failing))
    return Classification(Verdict.REGULARIZABLE, nu2)


# --- non-negative case --------------------------------------------------------


def compute_nonnegative(g: Graph, c: Classification | None = None) -> VulnerabilityResult:
    """Exact nu_bar when it is >= 0.

    Vulnerable graphs: nu_bar = n - tau_2 and the zero-weight nodes of a
    minimum 2-vertex cover are optimal. Quasi-regularizable graphs: the same
    construction on G minus the failing node yields a set with v_G = 0.
    """
    if c is None:
        c = classify(g, componentwise=True)
    if c.verdict is Verdict.REGULARIZABLE:
        raise ContractError("compute_nonnegative called on a regularizable graph")
    if c.verdict is Verdict.VULNERABLE:
        cover = min_two_vertex_cover(g)
        s = g.nodeset(cover.zeros())
        r = _result(g, s, "two_cover")
        assert r.nu_bar == g.n - cover.size > 0
        return r
    k = c.failing_node
    sub, nodes = delete_nodes(g, [k])
    cover = min_two_vertex_cover(sub)
    s = g.nodeset(nodes[i] for i in cover.zeros())
    r = _result(g, s, "per_node_two_cover")
    assert r.nu_bar == 0 and k in r.executioners
    return r


# --- negative case: enumeration of deletion sets ------------------------------


def _has_nonregularizable_component(g: Graph) -> tuple[Graph, tuple[int, ...]] | None:
    for comp, nodes in connected_components(g):
        if _classify_connected(comp).verdict is not Verdict.REGULARIZABLE:
            return comp, nodes
    return None


def vul_at_least(g: Graph, k: int, budget: int | None = None) -> tuple[bool, NodeSet | None]:
    """Decide nu_bar >= k for 1 - min_degree <= k < 0.

    True iff deleting some set T of -k nodes leaves a component with
    nu_bar >= 0; the lowest such T in lexicographic order is returned.
    At k = 1 - min_degree the answer is always true, but the enumeration
    still runs so that a witness comes back.
    """
    delta = min_degree(g)
    if not 1 - delta <= k < 0:
        raise ContractError(f"k={k} outside [{1 - delta}, 0)")
    size = -k
    projected = math.comb(g.n, size)
    budget = enum_budget() if budget is None else budget
    if projected > budget:
        raise BudgetExceeded(
            f"{projected} deletion sets exceed the budget of {budget}; use branch_and_bound"
        )
    for t in combinations(range(g.n), size):
        rest, _ = delete_nodes(g, t)
        if rest.n and _has_nonregularizable_component(rest) is not None:
            return True, g.nodeset(t)
    return False, None


def _witness_set(g: Graph, t: NodeSet) -> NodeSet:
    rest, rest_nodes = delete_nodes(g, t.indices())
    found = _has_nonregularizable_component(rest)
    assert found is not None
    comp, comp_nodes = found
    local = compute_nonnegative(comp, _classify_connected(comp)).optimal_set
    return g.nodeset(rest_nodes[comp_nodes[i]] for i in local.indices())


def compute_negative_binary_search(
    g: Graph, c: Classification | None = None, budget: int | None = None
) -> VulnerabilityResult:
    """Binary search for nu_bar on [1 - min_degree, -1] using vul_at_least."""
    if c is None:
        c = classify(g)
    if c.verdict is not Verdict.REGULARIZABLE:
        raise ContractError("binary search applies to regularizable graphs only")
    delta = min_degree(g)
    lo, hi = 1 - delta, -1
    witness = None
    while lo < hi:
        mid = (lo + hi + 1) // 2
        ok, t = vul_at_least(g, mid, budget)
        if ok:
            lo, witness = mid, t
        else:
            hi = mid - 1
    if witness is None:
        s = g.nodeset([g.degrees.index(delta)])
    else:
        s = _witness_set(g, witness)
    r = _result(g, s, "binary_search")
    assert r.nu_bar == lo, (r.nu_bar, lo)
    return r


# --- negative case: branch and bound -------------------------------------------


def _augment(u, masks, right, pair_l, pair_r, visited):
    avail = masks[u] & right & ~visited[0]
    while avail:
        low = avail & -avail
        avail ^= low
        visited[0] |= low
        r = low.bit_length() - 1
        w = pair_r.get(r)
        if w is None or _augment(w, masks, right, pair_l, pair_r, visited):
            pair_l[u] = r
            pair_r[r] = u
            return True
        avail &= ~visited[0]
    return False


def _deficiency(masks, cand, right, pair_l, pair_r) -> int:
    """|cand| - max matching between cand and ``right`` (warm-started)."""
    size = len(pair_l)
    bits = cand
    while bits:
        low = bits & -bits
        bits ^= low
        u = low.bit_length() - 1
        if u not in pair_l and _augment(u, masks, right, pair_l, pair_r, [0]):
            size += 1
    return cand.bit_count() - size


def _restrict(pair_l, cand, right):
    pl = {u: r for u, r in pair_l.items() if (cand >> u) & 1 and (right >> r) & 1}
    return pl, {r: u for u, r in pl.items()}


def compute_negative_bnb(
    g: Graph, c: Classification | None = None, node_budget: int = DEFAULT_BNB_NODES
) -> VulnerabilityResult:
    """Exact nu_bar by depth-first search over independent sets.

    A node (S, candidates) is pruned when |S| + |cand| - |N(S)| cannot beat
    the incumbent, or when the sharper bound v(S) + deficiency does not,
    where the deficiency max_{A <= cand} |A| - |N(A) \\ N(S)| equals
    |cand| minus a maximum matching from cand into V \\ (S | N(S)). The
    incumbent starts at 1 - min_degree. When ``node_budget`` search nodes
    are exhausted the best set found is returned flagged as a lower bound.
    """
    if c is None:
        c = classify(g)
    if c.verdict is not Verdict.REGULARIZABLE:
        raise ContractError("branch and bound applies to regularizable graphs only")
    masks = g.masks
    full = (1 << g.n) - 1
    delta = min_degree(g)
    best_val = 1 - delta
    best_set = 1 << g.degrees.index(delta)
    visited = 0
    exhausted = False
    # frame: (S, N(S), candidates, matching of cand into V \ (S | N(S)))
    stack = [(0, 0, full, {})]
    while stack:
        if visited >= node_budget:
            exhausted = True
            break
        visited += 1
        s, ns, cand, pair_l = stack.pop()
        val = s.bit_count() - ns.bit_count()
        if s and val > best_val:
            best_val, best_set = val, s
        if not cand:
            continue
        if s.bit_count() + cand.bit_count() - ns.bit_count() <= best_val:
            continue
        right = full & ~(s | ns)
        pl, pr = _restrict(pair_l, cand, right)
        if val + _deficiency(masks, cand, right, pl, pr) <= best_val:
            continue
        # branch on the candidate adding the fewest new neighbours
        v, v_cost = -1, None
        bits = cand
        while bits:
            low = bits & -bits
            bits ^= low
            u = low.bit_length() - 1
            cost = (masks[u] & ~ns).bit_count()
            if v_cost is None or cost < v_cost:
                v, v_cost = u, cost
        vb = 1 << v
        # pushed last is explored first: include v before excluding it
        stack.append((s, ns, cand & ~vb, pl))
        stack.append((s | vb, ns | masks[v], cand & ~vb & ~masks[v], pl))
    return _result(g, NodeSet(best_set, g.n), "branch_and_bound", lower_bound_only=exhausted)


# --- dispatcher -------------------------------------------------------------------


def network_vulnerability(
    g: Graph,
    method: str = "auto",
    componentwise: bool = False,
    delta_cap: int = 3,
    budget: int | None = None,
    auto_enum_limit: int = 20000,
    node_budget: int = DEFAULT_BNB_NODES,
) -> tuple[Classification, VulnerabilityResult]:
    """Classify ``g`` and compute its vulnerability with the requested method.

    ``auto`` uses the 2-cover routes when nu_bar >= 0; for regularizable
    graphs it runs the binary search when min degree <= ``delta_cap`` and the
    largest enumeration is at most ``auto_enum_limit`` deletion sets, and
    branch and bound otherwise. Disconnected graphs need ``componentwise``;
    a regularizable disconnected graph takes the best component.
    """
    c = classify(g, componentwise=componentwise)
    if c.verdict is not Verdict.REGULARIZABLE:
        if method not in ("auto", "two-cover", "two_cover"):
            raise ContractError(f"method {method!r} needs a regularizable graph; verdict is {c.verdict.value}")
        return c, compute_nonnegative(g, c)
    if method in ("two-cover", "two_cover"):
        raise ContractError("two-cover method needs nu_bar >= 0; graph is regularizable")
    comps = connected_components(g)
    best = None
    for comp, nodes in comps:
        cc = _classify_connected(comp) if len(comps) > 1 else c
        r = _negative(comp, cc, method, delta_cap, budget, auto_enum_limit, node_budget)
        if best is None or r.nu_bar > best[0].nu_bar:
            best = (r, nodes)
    r, nodes = best
    if len(comps) > 1:
        s = g.nodeset(nodes[i] for i in r.optimal_set.indices())
        r = _result(g, s, r.method, r.lower_bound_only)
    return c, r


def _negative(g, c, method, delta_cap, budget, auto_enum_limit, node_budget):
    if method == "auto":
        delta = min_degree(g)
        if delta <= delta_cap and math.comb(g.n, max(delta - 1, 0)) <= auto_enum_limit:
            method = "binary-search"
        else:
            method = "bnb"
    if method in ("binary-search", "binary_search"):
        return compute_negative_binary_search(g, c, budget)
    if method in ("bnb", "branch_and_bound"):
        return compute_negative_bnb(g, c, node_budget)
    raise ContractError(f"unknown method {method!r}")


# --- brute-force oracle ---------------------------------------------------------


def _subset_tables(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """N(T) and |T| for every bitmask T, built by doubling over nodes."""
    n = g.n
    nb = np.zeros(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for k, mk in enumerate(g.masks):
        half = 1 << k
        nb[half : 2 * half] = nb[:half] | mk
        pc[half : 2 * half] = pc[:half] + 1
    return nb, pc


def _popcount(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    x = a.copy()
    while np.any(x):
        out += x & 1
        x >>= 1
    return out


def oracle_nu_bar(g: Graph) -> VulnerabilityResult:
    """Exhaustive maximum of v over non-empty independent sets (n <= 20).

    Also checks that the maximum over all independent sets (empty included)
    equals the maximum over all subsets. Ties resolve to the smallest bitmask.
    """
    if g.n > ORACLE_MAX_N:
        raise BudgetExceeded(f"oracle refuses n={g.n} > {ORACLE_MAX_N}")
    if g.n == 0:
        raise DomainError("empty graph")
    nb, pc = _subset_tables(g)
    values = pc - _popcount(nb)
    idx = np.arange(1 << g.n, dtype=np.int64)
    indep = (nb & idx) == 0
    indep_nonempty = indep.copy()
    indep_nonempty[0] = False
    masked = np.where(indep_nonempty, values, np.iinfo(np.int64).min)
    best = int(np.argmax(masked))
    nu_hat_all = int(values.max())
    nu_hat_indep = int(values[indep].max())
    assert nu_hat_all == nu_hat_indep, "max over independent sets must equal max over all sets"
    s = NodeSet(best, g.n)
    r = _result(g, s, "oracle")
    assert r.nu_hat == nu_hat_all
    return r


def oracle_power_maxima(g: Graph) -> dict[str, int]:
    """Exhaustive p_bar = max_T p(T) and q_bar = max over T with S(T) non-empty of q(T)."""
    if g.n > ORACLE_MAX_N:
        raise BudgetExceeded(f"oracle refuses n={g.n} > {ORACLE_MAX_N}")
    nb, pc = _subset_tables(g)
    full = (1 << g.n) - 1
    idx = np.arange(1 << g.n, dtype=np.int64)
    controlled = full & ~nb[full ^ idx]  # B(T) = V \ N(V \ T)
    p = _popcount(controlled) - pc
    s_t = controlled & ~idx
    q = _popcount(s_t) - pc
    has_s = s_t != 0
    return {
        "p_bar": int(p.max()),
        "q_bar": int(q[has_s].max()),
        "p_argmax": int(np.argmax(p)),
        "q_argmax": int(np.argmax(np.where(has_s, q, np.iinfo(np.int64).min))),
    }
