"""Dense two-phase primal simplex with Bland's rule, plus an exact certificate.

The tableau runs in float64. At the optimum the primal point and the dual
prices are rounded to nearby rationals and re-checked in exact arithmetic:
primal feasibility, dual feasibility and equal objectives together prove
optimality of the rational point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

EPS = 1e-9
MAX_DENOMINATOR = 10**6


@dataclass(frozen=True)
class LPResult:
    status: str                 # "optimal", "infeasible" or "unbounded"
    x: np.ndarray
    value: float
    x_exact: tuple[Fraction, ...] | None = None
    value_exact: Fraction | None = None
    duals_exact: tuple[Fraction, ...] | None = None
    certified: bool = False
    pivots: int = 0


def _pivot(t: np.ndarray, row: int, col: int) -> None:
    t[row] /= t[row, col]
    factor = t[:, col].copy()
    factor[row] = 0.0
    t -= factor[:, None] * t[row]


def _run(t, basis, cost, allowed, max_pivots):
    """Bland-rule iterations on tableau ``t`` (last column = rhs), maximising.

    The reduced-cost row is appended to the tableau so each pivot updates it
    along with the constraint rows.
    """
    m = len(basis)
    n_cols = t.shape[1] - 1
    full = np.vstack([t, np.append(cost - cost[basis] @ t[:, :n_cols], 0.0)])
    pivots = 0
    status = "optimal"
    while True:
        reduced = full[m, :n_cols]
        candidates = np.nonzero((reduced > EPS) & allowed)[0]
        if not len(candidates):
            break
        col = int(candidates[0])
        column = full[:m, col]
        rows = np.nonzero(column > EPS)[0]
        if not len(rows):
            status = "unbounded"
            break
        ratios = full[rows, -1] / column[rows]
        ties = rows[ratios <= ratios.min() + EPS]
        row = int(ties[0]) if len(ties) == 1 else min(ties.tolist(), key=basis.__getitem__)
        _pivot(full, row, col)
        basis[row] = col
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex pivot limit reached")
    t[:] = full[:m]
    return status, pivots


def solve_lp(c, rows, n_vars: int, max_pivots: int = 100000) -> LPResult:
    """Maximise c.x subject to ``rows`` and x >= 0.

    ``rows`` is a list of ``(coeffs, sense, rhs)`` with ``coeffs`` a dict
    {var: coef} and sense one of "<=", ">=", "=".
    """
    m = len(rows)
    signs = []
    kinds = []
    for coeffs, sense, rhs in rows:
        flip = -1 if rhs < 0 else 1
        signs.append(flip)
        eff = sense if flip == 1 else {"<=": ">=", ">=": "<=", "=": "="}[sense]
        kinds.append(eff)
    n_slack = sum(1 for k in kinds if k != "=")
    n_art = sum(1 for k in kinds if k != "<=")
    width = n_vars + n_slack + n_art
    t = np.zeros((m, width + 1))
    basis = [0] * m
    ident = [0] * m  # column holding +e_i initially, used to read duals
    s_col = n_vars
    a_col = n_vars + n_slack
    for i, ((coeffs, _, rhs), flip, kind) in enumerate(zip(rows, signs, kinds)):
        for j, v in coeffs.items():
            t[i, j] = flip * v
        t[i, -1] = flip * rhs
        if kind == "<=":
            t[i, s_col] = 1.0
            basis[i] = ident[i] = s_col
            s_col += 1
        else:
            if kind == ">=":
                t[i, s_col] = -1.0
                s_col += 1
            t[i, a_col] = 1.0
            basis[i] = ident[i] = a_col
            a_col += 1
    art_start = n_vars + n_slack
    pivots = 0
    if n_art:
        cost1 = np.zeros(width)
        cost1[art_start:] = -1.0
        status, p = _run(t, basis, cost1, np.ones(width, dtype=bool), max_pivots)
        pivots += p
        if -(cost1[basis] @ t[:, -1]) > 1e-7:
            return LPResult("infeasible", np.zeros(n_vars), float("nan"), pivots=pivots)
        for i in range(m):
            if basis[i] >= art_start:
                nz = np.flatnonzero(np.abs(t[i, :art_start]) > EPS)
                if nz.size:
                    _pivot(t, i, int(nz[0]))
                    basis[i] = int(nz[0])
                    pivots += 1
    cost = np.zeros(width)
    cost[:n_vars] = c
    allowed = np.ones(width, dtype=bool)
    allowed[art_start:] = False
    status, p = _run(t, basis, cost, allowed, max_pivots)
    pivots += p
    if status != "optimal":
        return LPResult(status, np.zeros(n_vars), float("inf"), pivots=pivots)
    x_full = np.zeros(width)
    x_full[basis] = t[:, -1]
    x = x_full[:n_vars].copy()
    value = float(np.dot(c, x))
    reduced = cost - cost[basis] @ t[:, :width]
    duals_std = -reduced[ident]
    duals = [flip * d for flip, d in zip(signs, duals_std)]
    x_ex, y_ex, val_ex, ok = _certify(c, rows, x, duals)
    return LPResult("optimal", x, value, x_ex, val_ex, y_ex, ok, pivots)


def _rat(v: float) -> Fraction:
    r = round(v)
    if abs(v - r) < 1e-9:
        return Fraction(int(r))
    return Fraction(float(v)).limit_denominator(MAX_DENOMINATOR)


def _scaled(vals: tuple[Fraction, ...]) -> tuple[list[int], int]:
    den = 1
    for v in vals:
        if v.denominator != 1:
            den = math.lcm(den, v.denominator)
    return [v.numerator * (den // v.denominator) for v in vals], den


def _certify(c, rows, x, duals):
    """Exact check in integers scaled by the common denominators."""
    xr = tuple(_rat(v) for v in x)
    yr = tuple(_rat(v) for v in duals)
    xi, dx = _scaled(xr)
    yi, dy = _scaled(yr)
    ok = all(v >= 0 for v in xi)
    reduced = [int(cj) * dy for cj in c]  # scaled c - A^T y, must end <= 0
    dual_obj = 0
    for (coeffs, sense, rhs), y in zip(rows, yi):
        lhs = sum(int(v) * xi[j] for j, v in coeffs.items())
        bound = int(rhs) * dx
        if sense == "<=":
            ok = ok and lhs <= bound and y >= 0
        elif sense == ">=":
            ok = ok and lhs >= bound and y <= 0
        else:
            ok = ok and lhs == bound
        for j, v in coeffs.items():
            reduced[j] -= int(v) * y
        dual_obj += int(rhs) * y
    ok = ok and all(r <= 0 for r in reduced)
    primal_obj = sum(int(cj) * xj for cj, xj in zip(c, xi))
    ok = ok and primal_obj * dy == dual_obj * dx
    return xr, yr, Fraction(primal_obj, dx), ok
