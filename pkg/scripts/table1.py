"""Summary statistics row for each network given as an edge-list file.

Columns: nodes, edges, vul, maxdeg, maxpow, maxdiff, cor_pearson,
cor_spearman. Disconnected inputs are reduced to their largest component
unless --all-components is given.
"""

import argparse
import sys
import time
from dataclasses import asdict
from pathlib import Path

from vulnet.cli import StatsRow, emit_csv, select_component, stats_row
from vulnet.graph_core import read_edge_list


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("paths", nargs="+", help="edge-list files")
    ap.add_argument("--all-components", action="store_true")
    args = ap.parse_args(argv)

    rows = []
    for p in args.paths:
        t0 = time.perf_counter()
        g, comp = select_component(read_edge_list(p), args.all_components)
        row = stats_row(g)
        rows.append([Path(p).stem, *asdict(row).values()])
        print(f"{p}: {comp['mode']} component, {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    emit_csv(["network", *StatsRow.__dataclass_fields__], rows, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
