"""Command-line entry point: ``vulnet <command> ...``.

Exit codes: 0 success, 2 parse error, 3 contract/domain error, 4 budget
exceeded, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import rankdata

from .errors import BudgetExceeded, ContractError, DomainError, ParseError, VulnetError
from .generators import barabasi_albert, erdos_renyi
from .graph_core import Graph, connected_components, largest_component, read_edge_list
from .ilp import build_model, export_lp, extract_integral, solve_relaxation
from .shapley import shapley, shapley_p
from .spectral import algebraic_connectivity
from .vulnerability import (
    ORACLE_MAX_N,
    Verdict,
    classify,
    network_vulnerability,
    oracle_nu_bar,
    oracle_power_maxima,
)

EXIT_IO = 5


@dataclass(frozen=True)
class StatsRow:
    nodes: int
    edges: int
    vul: int
    maxdeg: int
    maxpow: float
    maxdiff: float
    cor_pearson: float
    cor_spearman: float


@dataclass(frozen=True)
class SweepRow:
    mean_degree: float
    samples: int
    frac_quasi_regularizable: float
    frac_regularizable: float
    frac_vulnerable: float


# -- helpers -------------------------------------------------------------------

def emit_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def emit_csv(header, rows, out) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    out.write(buf.getvalue())


def select_component(g: Graph, all_components: bool) -> tuple[Graph, dict]:
    """Largest component unless ``all_components``; also the "component" field."""
    k = len(connected_components(g)) if g.n else 0
    if all_components or k <= 1:
        mode = "whole" if k <= 1 else "all"
        return g, {"mode": mode, "n_components": k, "nodes": g.n, "edges": g.m}
    sub, _ = largest_component(g)
    return sub, {"mode": "largest", "n_components": k, "nodes": sub.n, "edges": sub.m}


def _pearson(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.std() == 0 or y.std() == 0:
        return float("nan")
    return float(np.corrcoef(x, y)[0, 1])


def _spearman(x, y) -> float:
    return _pearson(rankdata(x, method="average"), rankdata(y, method="average"))


def stats_row(g: Graph) -> StatsRow:
    _, r = network_vulnerability(g, componentwise=True)
    phi = shapley_p(g).scores
    deg = g.degrees
    spread = max(phi) - min(phi)
    groups: dict[int, list[Fraction]] = {}
    for d, s in zip(deg, phi):
        groups.setdefault(d, []).append(s)
    within = max(max(v) - min(v) for v in groups.values())
    maxdiff = float(within / spread) if spread else 0.0
    return StatsRow(
        nodes=g.n,
        edges=g.m,
        vul=r.nu_bar,
        maxdeg=max(deg),
        maxpow=round(float(max(phi)), 2),
        maxdiff=maxdiff,
        cor_pearson=_pearson(deg, [float(s) for s in phi]),
        cor_spearman=_spearman(deg, [float(s) for s in phi]),
    )


def _classify_er(args) -> tuple[bool, bool]:
    n, k, seed, stream = args
    c = classify(erdos_renyi(n, mean_degree=k, seed=seed, stream=stream), componentwise=True)
    return c.verdict is not Verdict.VULNERABLE, c.verdict is Verdict.REGULARIZABLE


def sweep_rows(n: int, degrees, samples: int, seed: int, workers: int = 1) -> list[SweepRow]:
    """Componentwise classification of ``samples`` G(n, p) graphs per mean degree.

    Sample s at mean degree index j uses stream j * samples + s.
    """
    rows = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for j, k in enumerate(degrees):
            jobs = [(n, k, seed, j * samples + s) for s in range(samples)]
            res = list(pool.map(_classify_er, jobs, chunksize=16)) if pool else list(map(_classify_er, jobs))
            quasi = sum(q for q, _ in res) / samples
            reg = sum(r for _, r in res) / samples
            rows.append(SweepRow(k, samples, quasi, reg, 1 - quasi))
    finally:
        if pool:
            pool.shutdown()
    return rows


def ba_edge_count(n: int, m_per_step: int) -> int:
    return sum(min(m_per_step, t) for t in range(1, n))


def scatter_graphs(model: str, n: int, count: int, seed: int):
    """Yield (graph id, model, m_per_step, graph) for the scatter experiment.

    Graph i uses m_per_step = 1 + i mod (n/2). ER graphs get the edge density
    of the BA graph with the same m_per_step.
    """
    half = max(1, n // 2)
    models = ("ba", "er") if model == "both" else (model,)
    stream = 0
    for mdl in models:
        for i in range(count):
            mps = 1 + i % half
            if mdl == "ba":
                g = barabasi_albert(n, mps, seed=seed, stream=stream)
            else:
                p = ba_edge_count(n, mps) / math.comb(n, 2)
                g = erdos_renyi(n, p, seed=seed, stream=stream)
            yield f"{mdl}-{i}", mdl, mps, g
            stream += 1


def scatter_rows(model: str, n: int, count: int, seed: int):
    for gid, mdl, mps, g in scatter_graphs(model, n, count, seed):
        c, r = network_vulnerability(g, componentwise=True)
        lam = algebraic_connectivity(g).lambda2
        yield gid, mdl, mps, g.m, r.nu_bar, lam, c.verdict.value


# -- commands ------------------------------------------------------------------

def cmd_classify(args, out) -> None:
    t0 = time.perf_counter()
    g, comp = select_component(read_edge_list(args.path), args.all_components)
    c = classify(g, componentwise=True)
    emit_json({
        "verdict": c.verdict.value,
        "nu2": c.nu2,
        "failing_node": None if c.failing_node is None else g.labels[c.failing_node],
        "component": comp,
        "method": "two_matching",
        "wall_time": time.perf_counter() - t0,
    }, out)


def cmd_vulnerability(args, out) -> None:
    t0 = time.perf_counter()
    g, comp = select_component(read_edge_list(args.path), args.all_components)
    if args.method == "ilp-export":
        text = export_lp(build_model(g), args.out)
        if args.out is None:
            out.write(text)
        else:
            emit_json({"method": "ilp-export", "path": args.out, "component": comp,
                       "wall_time": time.perf_counter() - t0}, out)
        return
    if args.method == "lp":
        model = build_model(g)
        sol = solve_relaxation(model)
        r = extract_integral(g, sol, model)
        if r is None:
            emit_json({"nu_bar": None, "inconclusive": True, "relaxation_value": str(sol.value),
                       "method": "lp_pinned", "component": comp,
                       "wall_time": time.perf_counter() - t0}, out)
            return
        c = classify(g, componentwise=True)
    else:
        c, r = network_vulnerability(
            g, method=args.method, componentwise=True, delta_cap=args.delta_cap,
            budget=args.budget, node_budget=args.node_budget,
        )
    emit_json({
        "nu_bar": r.nu_bar,
        "nu_hat": r.nu_hat,
        "optimal_set": g.label_list(r.optimal_set),
        "executioners": g.label_list(r.executioners),
        "method": r.method,
        "verdict": c.verdict.value,
        "lower_bound_only": r.lower_bound_only,
        "component": comp,
        "wall_time": time.perf_counter() - t0,
    }, out)


def cmd_power(args, out) -> None:
    t0 = time.perf_counter()
    g, comp = select_component(read_edge_list(args.path), args.all_components)
    pv = shapley(g, args.measure)
    if args.format == "csv":
        emit_csv(["label", "score", "exact"],
                  [(lab, f"{float(s):.6f}", str(s)) for lab, s in zip(g.labels, pv.scores)], out)
        return
    emit_json({
        "measure": args.measure,
        "scores": {lab: float(s) for lab, s in zip(g.labels, pv.scores)},
        "exact": {lab: str(s) for lab, s in zip(g.labels, pv.scores)},
        "sum": str(pv.total()),
        "method": "closed_form",
        "component": comp,
        "wall_time": time.perf_counter() - t0,
    }, out)


def cmd_lambda2(args, out) -> None:
    t0 = time.perf_counter()
    g = read_edge_list(args.path)
    res = algebraic_connectivity(g, cap=args.cap)
    emit_json({
        "lambda2": res.lambda2,
        "tolerance": res.tolerance,
        "connected": res.is_connected_by_spectrum,
        "nodes": g.n,
        "method": "dense_eigvalsh",
        "wall_time": time.perf_counter() - t0,
    }, out)


def cmd_stats(args, out) -> None:
    t0 = time.perf_counter()
    g, comp = select_component(read_edge_list(args.path), args.all_components)
    row = stats_row(g)
    if args.format == "csv":
        emit_csv(list(asdict(row)), [list(asdict(row).values())], out)
        return
    emit_json({**asdict(row), "component": comp, "method": "closed_form_phi_p",
                "wall_time": time.perf_counter() - t0}, out)


def _degrees(args) -> list[float]:
    count = int(round((args.kmax - args.kmin) / args.kstep)) + 1
    return [round(args.kmin + i * args.kstep, 10) for i in range(count)]


def cmd_sweep(args, out) -> None:
    rows = sweep_rows(args.n, _degrees(args), args.samples, args.seed, args.workers)
    emit_csv(list(SweepRow.__dataclass_fields__),
              [[r.mean_degree, r.samples, f"{r.frac_quasi_regularizable:.4f}",
                f"{r.frac_regularizable:.4f}", f"{r.frac_vulnerable:.4f}"] for r in rows], out)


def cmd_scatter(args, out) -> None:
    rows = [
        (gid, mdl, mps, m, nu, f"{lam:.10g}", verdict)
        for gid, mdl, mps, m, nu, lam, verdict in scatter_rows(args.model, args.n, args.count, args.seed)
    ]
    emit_csv(["graph_id", "model", "m_per_step", "edges", "nu_bar", "lambda2", "verdict"], rows, out)


def cmd_oracle(args, out) -> None:
    t0 = time.perf_counter()
    g = read_edge_list(args.path)
    if g.n > ORACLE_MAX_N:
        raise BudgetExceeded(f"oracle refuses n={g.n} > {ORACLE_MAX_N}")
    r = oracle_nu_bar(g)
    pm = oracle_power_maxima(g)
    emit_json({
        "nu_bar": r.nu_bar,
        "nu_hat": r.nu_hat,
        "optimal_set": g.label_list(r.optimal_set),
        "p_bar": pm["p_bar"],
        "q_bar": pm["q_bar"],
        "method": "oracle",
        "wall_time": time.perf_counter() - t0,
    }, out)


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vulnet", description="Vulnerability and power analysis of networks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_path(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("path", help="edge-list file, one 'u v' pair per line")
        return p

    p = with_path("classify", "vulnerable / quasi-regularizable / regularizable")
    p.add_argument("--all-components", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = with_path("vulnerability", "maximum vulnerability and an optimal independent set")
    p.add_argument("--method", default="auto",
                   choices=["auto", "two-cover", "binary-search", "bnb", "lp", "ilp-export"])
    p.add_argument("--all-components", action="store_true")
    p.add_argument("--delta-cap", type=int, default=3)
    p.add_argument("--budget", type=int, default=None, help="enumeration budget (default: VULNET_BUDGET or 1e8)")
    p.add_argument("--node-budget", type=int, default=5 * 10**6, help="branch-and-bound node budget")
    p.add_argument("--out", default=None, help="LP file for --method ilp-export")
    p.set_defaults(func=cmd_vulnerability)

    p = with_path("power", "Shapley power or vulnerability per node")
    p.add_argument("--measure", choices=["p", "q", "v"], default="p")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--all-components", action="store_true")
    p.set_defaults(func=cmd_power)

    p = with_path("lambda2", "algebraic connectivity")
    p.add_argument("--cap", type=int, default=5000)
    p.set_defaults(func=cmd_lambda2)

    p = with_path("stats", "summary row: vulnerability, degree and power statistics")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--all-components", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="classification frequencies of random graphs vs mean degree")
    p.add_argument("--model", choices=["er"], default="er")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--kmin", type=float, default=1.0)
    p.add_argument("--kmax", type=float, default=10.0)
    p.add_argument("--kstep", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scatter", help="(vulnerability, lambda2) pairs for random graphs")
    p.add_argument("--model", choices=["ba", "er", "both"], default="both")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_scatter)

    p = with_path("oracle", "brute-force ground truth (small graphs only)")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except ParseError as e:
        print(f"vulnet: parse error: {e}", file=sys.stderr)
        return e.exit_code
    except BudgetExceeded as e:
        print(f"vulnet: budget exceeded: {e}", file=sys.stderr)
        return e.exit_code
    except (ContractError, DomainError) as e:
        print(f"vulnet: {e}", file=sys.stderr)
        return 3
    except VulnetError as e:
        print(f"vulnet: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"vulnet: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
