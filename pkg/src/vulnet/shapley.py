"""Node-level Shapley values of the power and vulnerability games.

Three coalitional games live on the node set of a graph:

    p(T) = |B(T)| - |T|      B(T) = nodes whose whole neighbourhood is in T
    q(T) = |S(T)| - |T|      S(T) = B(T) minus T
    v(T) = |T| - |N(T)|

Their Shapley values have closed forms in the degrees alone:

    phi_p(i) = -1 + sum_{j in N(i)} 1/d_j
    phi_q(i) = -1 - 1/(1 + d_i) + sum_{j in N(i)} 1/((1 + d_j) d_j)
    phi_v(i) = -phi_p(i)          (since p(T) = v(V - T))

All scores are exact rationals. Sums are taken over one common denominator
so that large graphs do not pay for repeated Fraction normalisation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .graph_core import Graph, NodeSet, power_p, power_q, vulnerability_of_set
from .vulnerability import _subset_tables

MEASURES = ("p", "q", "v")


@dataclass(frozen=True)
class PowerVector:
    measure: str
    scores: tuple[Fraction, ...]

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise DomainError(f"unknown measure {self.measure!r}")

    @property
    def floats(self) -> tuple[float, ...]:
        return tuple(float(s) for s in self.scores)

    def total(self) -> Fraction:
        den = _lcm_all(s.denominator for s in self.scores)
        return Fraction(sum(s.numerator * (den // s.denominator) for s in self.scores), den)

    def __len__(self) -> int:
        return len(self.scores)

    def __getitem__(self, i: int) -> Fraction:
        return self.scores[i]


@dataclass(frozen=True)
class GameOracleConfig:
    mode: str = "subset_exact"   # or "permutation_exact"
    max_n: int | None = None

    def limit(self) -> int:
        if self.max_n is not None:
            return self.max_n
        return 10 if self.mode == "subset_exact" else 8


def _lcm_all(values) -> int:
    out = 1
    for v in set(values):
        out = math.lcm(out, v)
    return out


def _scaled_p(g: Graph) -> tuple[list[int], int]:
    deg = g.degrees
    den = _lcm_all(d for d in deg if d > 0)
    share = [den // d if d else 0 for d in deg]  # den / d_j
    nums = [-den + sum(share[j] for j in g.adj[i]) for i in range(g.n)]
    return nums, den


def _as_fractions(nums: list[int], den: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(a, den) for a in nums)


def shapley_p(g: Graph) -> PowerVector:
    nums, den = _scaled_p(g)
    isolated = sum(1 for d in g.degrees if d == 0)
    assert sum(nums) == -isolated * den, "efficiency of the p game"
    return PowerVector("p", _as_fractions(nums, den))


def shapley_q(g: Graph) -> PowerVector:
    deg = g.degrees
    den = _lcm_all([d + 1 for d in deg] + [(d + 1) * d for d in deg if d > 0])
    share = [den // ((d + 1) * d) if d else 0 for d in deg]
    nums = [
        -den - den // (deg[i] + 1) + sum(share[j] for j in g.adj[i])
        for i in range(g.n)
    ]
    isolated = sum(1 for d in deg if d == 0)
    assert sum(nums) == -(g.n + isolated) * den, "efficiency of the q game"
    return PowerVector("q", _as_fractions(nums, den))


def shapley_v(g: Graph) -> PowerVector:
    nums, den = _scaled_p(g)
    return PowerVector("v", _as_fractions([-a for a in nums], den))


def shapley(g: Graph, measure: str) -> PowerVector:
    if measure == "p":
        return shapley_p(g)
    if measure == "q":
        return shapley_q(g)
    if measure == "v":
        return shapley_v(g)
    raise DomainError(f"unknown measure {measure!r}")


# -- oracles -----------------------------------------------------------------

def characteristic_table(g: Graph, measure: str) -> np.ndarray:
    """Value of the chosen game on every bitmask T (index = bitmask)."""
    nb, pc = _subset_tables(g)
    masks = np.arange(1 << g.n, dtype=np.int64)
    if measure == "v":
        return pc - _popcount_table(nb, g.n)
    controlled = np.zeros_like(masks)
    inside = np.zeros_like(masks)
    for i, mk in enumerate(g.masks):
        in_b = (masks & mk) == mk
        controlled += in_b
        inside += in_b & (((masks >> i) & 1) == 1)
    if measure == "p":
        return controlled - pc
    if measure == "q":
        return controlled - inside - pc
    raise DomainError(f"unknown measure {measure!r}")


def _popcount_table(a: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros_like(a)
    for k in range(n):
        out += (a >> k) & 1
    return out


def oracle_shapley(g: Graph, characteristic: str, config: GameOracleConfig | None = None) -> PowerVector:
    """Shapley value straight from the definition, in exact arithmetic.

    subset_exact sums weighted marginal contributions over every coalition
    not containing i; permutation_exact averages over all n! arrival orders.
    """
    config = config or GameOracleConfig()
    n = g.n
    if n > config.limit():
        raise DomainError(f"{config.mode} oracle refuses n={n} > {config.limit()}")
    table = characteristic_table(g, characteristic)
    fact = math.factorial(n)
    if config.mode == "subset_exact":
        _, pc = _subset_tables(g)
        weight = np.array(
            [math.factorial(k) * math.factorial(n - k - 1) for k in range(n)] + [0],
            dtype=np.int64,
        )
        masks = np.arange(1 << n, dtype=np.int64)
        totals = []
        for i in range(n):
            without = masks[((masks >> i) & 1) == 0]
            gain = table[without | (1 << i)] - table[without]
            totals.append(int(np.dot(weight[pc[without]], gain)))
    elif config.mode == "permutation_exact":
        vals = table.tolist()
        totals = [0] * n
        for order in itertools.permutations(range(n)):
            t = 0
            for i in order:
                nxt = t | (1 << i)
                totals[i] += vals[nxt] - vals[t]
                t = nxt
    else:
        raise DomainError(f"unknown oracle mode {config.mode!r}")
    return PowerVector(characteristic, tuple(Fraction(a, fact) for a in totals))


# -- core membership ---------------------------------------------------------

@dataclass
class CoreReport:
    measure: str
    checked: int = 0
    tight: int = 0
    violations: list[tuple[NodeSet, Fraction, int]] = field(default_factory=list)
    min_slack: Fraction | None = None

    @property
    def ok(self) -> bool:
        return not self.violations


def _coalition_values(g: Graph, measure: str, member: np.ndarray, adj: np.ndarray) -> np.ndarray:
    """Characteristic value for each row of a boolean membership matrix."""
    inside = member.astype(np.int64) @ adj  # neighbours of j inside T
    size = member.sum(axis=1)
    if measure == "p":
        deg = adj.sum(axis=0)
        return (inside == deg).sum(axis=1) - size
    return size - (inside > 0).sum(axis=1)


def _coalitions(g: Graph, samples: int, rng: np.random.Generator, exhaustive: bool) -> np.ndarray:
    n = g.n
    if exhaustive:
        masks = np.arange(1, 1 << n, dtype=np.int64)
        return ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    fixed = [np.ones(n, dtype=bool)]
    eye = np.eye(n, dtype=bool)
    fixed.extend(eye)
    fixed.extend(~eye)
    for i, nbrs in enumerate(g.adj):
        row = np.zeros(n, dtype=bool)
        row[list(nbrs)] = True
        if row.any():
            fixed.append(row)
    if n <= 60:
        for i, j in itertools.combinations(range(n), 2):
            row = np.zeros(n, dtype=bool)
            row[[i, j]] = True
            fixed.append(row)
    sizes = rng.integers(1, n + 1, size=samples)
    keys = rng.random((samples, n))
    ranks = keys.argsort(axis=1).argsort(axis=1)
    drawn = ranks < sizes[:, None]
    return np.vstack([np.array(fixed), drawn])


def core_check(
    g: Graph,
    pv: PowerVector,
    samples: int = 10000,
    seed: int = 0,
    exhaustive: bool | None = None,
    chunk: int = 4096,
) -> CoreReport:
    """Check sum_{i in T} phi_i >= char(T) on many coalitions T.

    Exhaustive for n <= 10 unless told otherwise; otherwise singletons,
    complements of singletons, V, neighbourhoods, pairs (small n) and
    ``samples`` random coalitions with uniformly drawn size. Comparisons are
    exact: the scores are scaled to integers over a common denominator.
    """
    if pv.measure not in ("p", "v"):
        raise DomainError("core check applies to measures p and v")
    if len(pv) != g.n:
        raise DomainError("power vector length does not match the graph")
    if exhaustive is None:
        exhaustive = g.n <= 10
    den = _lcm_all(s.denominator for s in pv.scores)
    nums = [int(s * den) for s in pv.scores]
    exact_ints = max((abs(a) for a in nums), default=0) * max(g.n, 1) < 2**62
    adj = np.zeros((g.n, g.n), dtype=np.int64)
    for i, nbrs in enumerate(g.adj):
        adj[i, list(nbrs)] = 1
    member = _coalitions(g, samples, np.random.default_rng(seed), exhaustive)
    report = CoreReport(pv.measure)
    for lo in range(0, len(member), chunk):
        block = member[lo : lo + chunk]
        char = _coalition_values(g, pv.measure, block, adj)
        if exact_ints:
            slack = block.astype(np.int64) @ np.array(nums, dtype=np.int64) - char * den
        else:
            slack = np.array([sum(nums[i] for i in np.flatnonzero(row)) for row in block],
                             dtype=object) - char.astype(object) * den
        report.checked += len(block)
        report.tight += int(np.count_nonzero(slack == 0))
        low = Fraction(int(slack.min()), den)
        if report.min_slack is None or low < report.min_slack:
            report.min_slack = low
        for k in np.flatnonzero(slack < 0):
            bits = sum(1 << int(i) for i in np.flatnonzero(block[k]))
            total = Fraction(int(slack[k]) + int(char[k]) * den, den)
            report.violations.append((NodeSet(bits, g.n), total, int(char[k])))
    return report


def characteristic(g: Graph, measure: str, t: NodeSet) -> int:
    return {"p": power_p, "q": power_q, "v": vulnerability_of_set}[measure](g, t)
