"""Write every triangle-free graph on 1..N vertices, one per isomorphism class, as graph6.

Classes on n vertices are grown from classes on n - 1 vertices: a new
vertex may be joined to any independent set (that is exactly what keeps
the graph triangle-free).  Duplicates are removed with a
Weisfeiler-Lehman hash bucket followed by a full isomorphism test.

The result is cross-checked by counting labeled graphs two ways: the sum
of n!/|Aut(G)| over the classes, and a direct recurrence over labeled
graphs.

    python tools/gen_triangle_free.py 8 > tests/data/triangle_free_1_8.g6
"""

from __future__ import annotations

import argparse
import math
import sys

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from minorforge import from_edge_list, to_graph6


def independent_sets(g: nx.Graph):
    nodes = sorted(g)
    out = []

    def grow(i, chosen):
        if i == len(nodes):
            out.append(list(chosen))
            return
        grow(i + 1, chosen)
        v = nodes[i]
        if not any(g.has_edge(v, u) for u in chosen):
            chosen.append(v)
            grow(i + 1, chosen)
            chosen.pop()

    grow(0, [])
    return out


def extend(classes: list[nx.Graph], n: int) -> list[nx.Graph]:
    buckets: dict[str, list[nx.Graph]] = {}
    found = []
    for g in classes:
        for s in independent_sets(g):
            h = g.copy()
            h.add_node(n - 1)
            h.add_edges_from((n - 1, u) for u in s)
            key = nx.weisfeiler_lehman_graph_hash(h, iterations=3)
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(h, other) for other in bucket):
                continue
            bucket.append(h)
            found.append(h)
    return found


def automorphisms(g: nx.Graph) -> int:
    return sum(1 for _ in GraphMatcher(g, g).isomorphisms_iter())


def count_independent(rows, alive: int) -> int:
    if not alive:
        return 1
    v = alive.bit_length() - 1
    rest = alive & ~(1 << v)
    return count_independent(rows, rest) + count_independent(rows, rest & ~rows[v])


def labeled_counts(top: int) -> list[int]:
    # a labeled triangle-free graph on n vertices is one on n - 1 vertices plus
    # an independent neighbourhood for the new vertex
    counts = []
    layer = [()]
    for n in range(1, top + 1):
        if n == top:
            full = (1 << (n - 1)) - 1
            counts.append(sum(count_independent(rows, full) for rows in layer))
            break
        nxt = []
        for rows in layer:
            for mask in range(1 << (n - 1)):
                if any(mask >> v & 1 and rows[v] & mask for v in range(n - 1)):
                    continue
                nxt.append(tuple(r | ((mask >> v & 1) << (n - 1)) for v, r in enumerate(rows)) + (mask,))
        counts.append(len(nxt))
        layer = nxt
    return counts


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("top", type=int, nargs="?", default=8)
    ap.add_argument("--no-check", action="store_true", help="skip the labeled-count cross-check")
    args = ap.parse_args()

    level = [nx.empty_graph(1)]
    by_n = {1: level}
    for n in range(2, args.top + 1):
        level = extend(level, n)
        by_n[n] = level

    if not args.no_check:
        expected = labeled_counts(args.top)
        for n, classes in by_n.items():
            total = sum(math.factorial(n) // automorphisms(g) for g in classes)
            if total != expected[n - 1]:
                sys.exit(f"n={n}: classes give {total} labeled graphs, recurrence gives {expected[n - 1]}")
        print("counts: " + " ".join(str(len(by_n[n])) for n in sorted(by_n)), file=sys.stderr)

    for n in sorted(by_n):
        for g in by_n[n]:
            print(to_graph6(from_edge_list(n, g.edges())))


if __name__ == "__main__":
    main()
