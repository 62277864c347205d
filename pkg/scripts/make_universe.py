"""Write every connected graph on 8 nodes, one per isomorphism class, as graph6.

Each 8-node graph is a 7-node graph (any of the atlas graphs) plus one new
node attached to a nonempty neighbour set. Candidates are bucketed by a
Weisfeiler-Lehman hash and deduplicated with an exact isomorphism test.
Expected count: 11117.
"""

import argparse
import itertools
import sys
import time

import networkx as nx


def connected_graphs(n: int):
    base = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n - 1]
    buckets: dict[str, list[nx.Graph]] = {}
    for h in base:
        for r in range(1, n):
            for nbrs in itertools.combinations(range(n - 1), r):
                g = nx.Graph(h)
                g.add_node(n - 1)
                g.add_edges_from((n - 1, v) for v in nbrs)
                if not nx.is_connected(g):
                    continue
                key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
                bucket = buckets.setdefault(key, [])
                if any(nx.faster_could_be_isomorphic(g, o) and nx.is_isomorphic(g, o)
                       for o in bucket):
                    continue
                bucket.append(g)
    for key in sorted(buckets):
        yield from buckets[key]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", nargs="?", default="tests/data/connected8.g6")
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    graphs = list(connected_graphs(8))
    with open(args.out, "w") as fh:
        for g in graphs:
            fh.write(nx.to_graph6_bytes(g, header=False).decode().strip() + "\n")
    print(f"{len(graphs)} graphs in {time.perf_counter() - t0:.1f}s -> {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
