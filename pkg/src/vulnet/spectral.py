"""Laplacian spectrum: algebraic connectivity and the expansion inequalities.

For a nonempty node set S the cut size |dS| (edges leaving S) satisfies

    lambda_2 * (1 - |S|/n) <= |dS| / |S|

and when S is independent |dS| / |S| is the mean degree over S, which is at
most |N(S)|. A node with k >= 2 pendant neighbours gives lambda_2 <= 1 and a
vulnerability of at least k - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .graph_core import Graph, NodeSet, _check, boundary, is_independent, neighbors_of_set

DENSE_CAP = 5000
REL_TOL = 1e-9


@dataclass(frozen=True)
class SpectralResult:
    lambda2: float
    tolerance: float
    is_connected_by_spectrum: bool


def laplacian(g: Graph) -> np.ndarray:
    lap = np.zeros((g.n, g.n))
    for i, nbrs in enumerate(g.adj):
        lap[i, list(nbrs)] = -1.0
        lap[i, i] = len(nbrs)
    return lap


def laplacian_spectrum(g: Graph, cap: int = DENSE_CAP) -> np.ndarray:
    if g.n > cap:
        raise DomainError(
            f"n={g.n} exceeds the dense eigensolver cap {cap}; sparse mode is not supported"
        )
    return np.linalg.eigvalsh(laplacian(g))  # ascending


def algebraic_connectivity(g: Graph, cap: int = DENSE_CAP) -> SpectralResult:
    tol = REL_TOL * max(1, max(g.degrees, default=0))
    if g.n < 2:
        return SpectralResult(0.0, tol, g.n == 1)
    lam = float(laplacian_spectrum(g, cap)[1])
    return SpectralResult(lam, tol, lam > tol)


@dataclass(frozen=True)
class ExpansionReport:
    size: int
    boundary: int
    lambda2: float
    left: float             # lambda_2 (1 - |S|/n)
    ratio: Fraction         # |dS| / |S|
    independent: bool
    mean_degree: Fraction | None
    neighbours: int | None
    left_ok: bool
    right_ok: bool | None
    left_margin: float
    right_margin: Fraction | None

    @property
    def ok(self) -> bool:
        return self.left_ok and self.right_ok is not False


def expansion_inequality_check(
    g: Graph, s: NodeSet, lambda2: float, tol: float | None = None
) -> ExpansionReport:
    _check(g, s)
    if not s:
        raise DomainError("expansion check needs a nonempty set")
    if tol is None:
        tol = REL_TOL * max(1, max(g.degrees, default=0)) * g.n
    k = len(s)
    cut = boundary(g, s)
    ratio = Fraction(cut, k)
    left = lambda2 * (1 - k / g.n)
    left_margin = float(ratio) - left
    indep = is_independent(g, s)
    mean_deg = nbrs = right_ok = right_margin = None
    if indep:
        mean_deg = Fraction(sum(g.degree(i) for i in s), k)
        nbrs = len(neighbors_of_set(g, s))
        right_margin = nbrs - ratio
        right_ok = mean_deg == ratio and right_margin >= 0
    return ExpansionReport(
        k, cut, lambda2, left, ratio, indep, mean_deg, nbrs,
        left_margin >= -tol, right_ok, left_margin, right_margin,
    )


@dataclass(frozen=True)
class LeafCertificate:
    hub: int
    k: int
    implied_nu_lower: int
    implied_lambda2_upper: float = 1.0


def leaf_siblings_bound(g: Graph) -> LeafCertificate | None:
    """Node with the most degree-1 neighbours, when it has at least two.

    k pendant leaves on one hub form an independent set whose neighbourhood
    is the hub alone, so v = k - 1.
    """
    best_hub, best_k = -1, 1
    for i, nbrs in enumerate(g.adj):
        k = sum(1 for j in nbrs if g.degree(j) == 1)
        if k > best_k:
            best_hub, best_k = i, k
    if best_hub < 0:
        return None
    return LeafCertificate(best_hub, best_k, best_k - 1)
