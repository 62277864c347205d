"""0-1 model of the maximum-vulnerability problem and its LP relaxation.

Variables: x_i = 1 when i is in the independent set S, y_i = 1 when i is in
N(S). The model maximises sum(x_i - y_i) subject to

    x_i + x_j <= 1          for each edge ij   (independence)
    y_j - x_i >= 0          for each edge ij   (neighbour forcing, both ways)
    y_i - x_j >= 0
    sum x_i >= 1                                (S non-empty)
    0 <= x_i, y_i <= 1,  x integral.

When the relaxation optimum is positive, its x = 1 nodes form an optimal
independent set. When it is zero, re-solving with one x_i pinned to 1 finds
an optimal set if nu_bar = 0; if no pin succeeds nu_bar is negative.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

from ._simplex import solve_lp
from .errors import ContractError
from .graph_core import Graph, NodeSet, is_independent, vulnerability_of_set
from .vulnerability import _result

X1_TOL = 1e-6
_NAME_BAD = re.compile(r"[^A-Za-z0-9_.]")


@dataclass(frozen=True)
class Row:
    coeffs: tuple[tuple[int, int], ...]  # (variable index, coefficient)
    sense: str
    rhs: int
    kind: str


@dataclass(frozen=True)
class IlpModel:
    n: int
    names: tuple[str, ...]      # x vars at 0..n-1, y vars at n..2n-1
    objective: tuple[int, ...]
    rows: tuple[Row, ...]
    upper: tuple[int, ...]
    integer: tuple[bool, ...]

    def x(self, i: int) -> int:
        return i

    def y(self, i: int) -> int:
        return self.n + i

    def count(self, kind: str) -> int:
        return sum(1 for r in self.rows if r.kind == kind)


@dataclass(frozen=True)
class RelaxationSolution:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    value: Fraction
    x1: NodeSet
    certified: bool
    x_float: tuple[float, ...]
    pins: tuple[int, ...] = ()


def _var_names(labels) -> list[str]:
    base = [_NAME_BAD.sub("_", lab) for lab in labels]
    seen: dict[str, int] = {}
    for b in base:
        seen[b] = seen.get(b, 0) + 1
    return [b if seen[b] == 1 else f"{b}_{i}" for i, b in enumerate(base)]


def build_model(g: Graph) -> IlpModel:
    n = g.n
    stems = _var_names(g.labels)
    names = tuple([f"x_{s}" for s in stems] + [f"y_{s}" for s in stems])
    rows = []
    edges = list(g.edges())
    for i, j in edges:
        rows.append(Row(((i, 1), (j, 1)), "<=", 1, "independence"))
    for i, j in edges:
        rows.append(Row(((n + j, 1), (i, -1)), ">=", 0, "neighbor"))
        rows.append(Row(((n + i, 1), (j, -1)), ">=", 0, "neighbor"))
    rows.append(Row(tuple((i, 1) for i in range(n)), ">=", 1, "nonempty"))
    objective = tuple([1] * n + [-1] * n)
    return IlpModel(n, names, objective, tuple(rows), tuple([1] * (2 * n)),
                    tuple([True] * n + [False] * n))


def _linear(terms, names) -> str:
    out = []
    for k, (var, coef) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = names[var] if mag == 1 else f"{mag} {names[var]}"
        if k == 0:
            out.append(body if sign == "+" else f"- {body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def export_lp(model: IlpModel, sink: TextIO | str | None = None) -> str:
    """Render the model in CPLEX LP format; also write it to ``sink`` if given."""
    names = model.names
    lines = ["\\ maximum vulnerability model", "Maximize"]
    obj_terms = [(v, c) for v, c in enumerate(model.objective) if c]
    lines.append(" obj: " + _linear(obj_terms, names))
    lines.append("Subject To")
    counters: dict[str, int] = {}
    for row in model.rows:
        k = counters.get(row.kind, 0)
        counters[row.kind] = k + 1
        lines.append(f" {row.kind}_{k}: {_linear(row.coeffs, names)} {row.sense} {row.rhs}")
    lines.append("Bounds")
    for v, ub in enumerate(model.upper):
        lines.append(f" 0 <= {names[v]} <= {ub}")
    lines.append("Generals")
    ints = [names[v] for v, flag in enumerate(model.integer) if flag]
    for k in range(0, len(ints), 8):
        lines.append(" " + " ".join(ints[k : k + 8]))
    lines.append("End")
    text = "\n".join(lines) + "\n"
    if isinstance(sink, str):
        with open(sink, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif sink is not None:
        sink.write(text)
    return text


def parse_lp(text: str) -> dict:
    """Read back the LP dialect written by :func:`export_lp`.

    Returns the objective as {name: coef} and the rows as a set of
    (frozenset of (name, coef), sense, rhs) tuples, plus bounds and generals.
    """
    section = None
    objective: dict[str, int] = {}
    rows = set()
    bounds = {}
    generals = []
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low in ("maximize", "subject to", "bounds", "generals", "end"):
            section = low
            continue
        if ":" in line:
            line = line.split(":", 1)[1].strip()
        if section == "maximize":
            objective = dict(_terms(line))
        elif section == "subject to":
            m = re.match(r"(.*?)\s*(<=|>=|=)\s*(-?\d+)$", line)
            if not m:
                raise ValueError(f"bad constraint line: {raw!r}")
            rows.add((frozenset(_terms(m.group(1))), m.group(2), int(m.group(3))))
        elif section == "bounds":
            lo, var, hi = re.match(r"(-?\d+)\s*<=\s*(\S+)\s*<=\s*(-?\d+)", line).groups()
            bounds[var] = (int(lo), int(hi))
        elif section == "generals":
            generals.extend(line.split())
    return {"objective": objective, "rows": rows, "bounds": bounds, "generals": generals}


def _terms(expr: str):
    tokens = expr.replace("+", " + ").replace("-", " - ").split()
    sign, coef = 1, None
    for tok in tokens:
        if tok in "+-":
            sign = -1 if tok == "-" else 1
        elif re.fullmatch(r"\d+", tok):
            coef = int(tok)
        else:
            yield tok, sign * (coef if coef is not None else 1)
            sign, coef = 1, None


def model_rows(model: IlpModel) -> set:
    """Row set in the same shape :func:`parse_lp` returns."""
    return {
        (frozenset((model.names[v], c) for v, c in r.coeffs), r.sense, r.rhs)
        for r in model.rows
    }


def solve_relaxation(model: IlpModel, pins: tuple[int, ...] = ()) -> RelaxationSolution:
    """Optimal vertex of the continuous relaxation (x_i = 1 forced for ``pins``)."""
    n = model.n
    rows = [(dict(r.coeffs), r.sense, r.rhs) for r in model.rows]
    # y_i <= 1 never binds when maximising -y, and x_i <= 1 follows from any
    # independence row on i; skipped bounds are checked exactly afterwards
    # (with dual 0 they leave the optimality certificate intact)
    covered = {v for r in model.rows if r.kind == "independence" for v, _ in r.coeffs}
    for v, ub in enumerate(model.upper):
        if v < n and v not in covered:
            rows.append(({v: 1}, "<=", ub))
    for i in pins:
        rows.append(({model.x(i): 1}, "=", 1))
    res = solve_lp(list(model.objective), rows, 2 * n)
    if res.status != "optimal":
        raise ContractError(f"relaxation solve ended {res.status}")
    xs, ys = res.x_exact[:n], res.x_exact[n:]
    certified = res.certified and all(v <= ub for v, ub in zip(res.x_exact, model.upper))
    if certified:
        x1 = [i for i in range(n) if xs[i] == 1]
    else:
        x1 = [i for i in range(n) if res.x[i] >= 1 - X1_TOL]
    return RelaxationSolution(
        xs, ys, res.value_exact, NodeSet.of(n, x1), certified,
        tuple(float(v) for v in res.x[:n]), tuple(pins),
    )


def _check_feasible(model: IlpModel, sol: RelaxationSolution) -> None:
    vals = list(sol.x) + list(sol.y)
    for r in model.rows:
        lhs = sum(c * vals[v] for v, c in r.coeffs)
        if (r.sense == "<=" and lhs > r.rhs) or (r.sense == ">=" and lhs < r.rhs):
            raise ContractError(f"solution violates a {r.kind} row")
    if any(not 0 <= v <= 1 for v in vals):
        raise ContractError("solution violates variable bounds")


def extract_integral(g: Graph, sol: RelaxationSolution, model: IlpModel | None = None):
    """Optimal independent set recovered from the relaxation, or None.

    None means every pinned re-solve failed, which certifies nu_bar < 0.
    """
    model = build_model(g) if model is None else model
    if not sol.certified:
        raise ContractError("relaxation solution is not certified optimal")
    _check_feasible(model, sol)
    if sol.value < 0:
        raise ContractError("relaxation optimum cannot be negative")
    if sol.value > 0:
        if sol.value.denominator != 1:
            raise ContractError(f"positive relaxation optimum {sol.value} is not integral")
        r = _result(g, sol.x1, "lp_relaxation")
        assert r.nu_bar == sol.value and is_independent(g, sol.x1)
        return r
    if sol.x1 and vulnerability_of_set(g, sol.x1) == 0:
        return _result(g, sol.x1, "lp_relaxation")
    for i in range(g.n):
        pinned = solve_relaxation(model, (i,))
        if pinned.certified and pinned.value == 0 and pinned.x1:
            if vulnerability_of_set(g, pinned.x1) == 0:
                return _result(g, pinned.x1, "lp_pinned")
    return None
