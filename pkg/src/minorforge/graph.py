"""Bitset graphs on at most 62 vertices.

A vertex set is a plain ``int`` bitmask (bit ``v`` set means vertex ``v``
is present); ``Graph.adj[v]`` is the neighbourhood of ``v`` as such a mask.
Graphs are never mutated: complement, induced subgraphs and contractions
all return new graphs.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import EmptySet, InvalidEdge, LoopRejected, NotConnected, ParseError, TooLarge

MAX_N = 62

VertexSet = int


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Simple undirected graph with bitset adjacency rows."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Iterable[int], *, check: bool = True):
        adj = tuple(adj)
        if check:
            if n < 0 or n > MAX_N:
                raise TooLarge(f"graphs are limited to {MAX_N} vertices, got {n}")
            if len(adj) != n:
                raise ValueError(f"expected {n} adjacency rows, got {len(adj)}")
            full = (1 << n) - 1
            for v, row in enumerate(adj):
                if row & ~full:
                    raise InvalidEdge(f"row {v} references a vertex >= {n}")
                if row >> v & 1:
                    raise LoopRejected(f"loop at vertex {v}")
                for u in bits(row):
                    if not adj[u] >> v & 1:
                        raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = adj

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    @property
    def full(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) >> 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_edgeless(self) -> bool:
        return not any(self.adj)


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0 or n > MAX_N:
        raise TooLarge(f"graphs are limited to {MAX_N} vertices, got {n}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise LoopRejected(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj, check=False)


def empty_graph(n: int) -> Graph:
    return from_edge_list(n, [])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)], check=False)


# -- edge masks -------------------------------------------------------------
#
# Edge bit k of an edge mask is the k-th pair in graph6 column order:
# (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...

@lru_cache(maxsize=None)
def edge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for j in range(1, n) for i in range(j))


@lru_cache(maxsize=None)
def _mask_tables(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    # one table per 8-bit slice of the edge mask: slice value -> row contributions
    pairs = edge_pairs(n)
    tables = []
    for start in range(0, len(pairs), 8):
        chunk = pairs[start:start + 8]
        table = []
        for value in range(1 << len(chunk)):
            rows = [0] * n
            for k, (i, j) in enumerate(chunk):
                if value >> k & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            table.append(tuple(rows))
        tables.append(tuple(table))
    return tuple(tables)


def from_edge_mask(n: int, mask: int) -> Graph:
    """Graph whose edges are the set bits of ``mask`` (graph6 pair order)."""
    if n > 12:
        pairs = edge_pairs(n)
        return from_edge_list(n, (pairs[k] for k in bits(mask)))
    rows = [0] * n
    for table in _mask_tables(n):
        contrib = table[mask & 0xFF]
        mask >>= 8
        rows = [a | b for a, b in zip(rows, contrib)]
    return Graph(n, rows, check=False)


def edge_mask(g: Graph) -> int:
    mask = 0
    k = 0
    adj = g.adj
    for j in range(1, g.n):
        row = adj[j]
        mask |= (row & ((1 << j) - 1)) << k
        k += j
    return mask


# -- graph6 -------------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    """Short-form graph6 of the labeled graph (no canonical relabeling)."""
    n = g.n
    out = [chr(63 + n)]
    value = 0
    count = 0
    adj = g.adj
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            value = (value << 1) | (row >> i & 1)
            count += 1
            if count == 6:
                out.append(chr(63 + value))
                value = 0
                count = 0
    if count:
        out.append(chr(63 + (value << (6 - count))))
    return "".join(out)


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    if not text:
        raise ParseError("empty graph6 string", offset=0)
    data = [ord(c) for c in text]
    for offset, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise ParseError(f"invalid graph6 byte {byte!r}", offset=offset)
    n = data[0] - 63
    if n > MAX_N:
        raise ParseError(f"declared n > {MAX_N} (long-form graph6 is not supported)", offset=0)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(data) != expected:
        raise ParseError(f"graph6 for n={n} needs {expected} bytes, got {len(data)}",
                         offset=min(len(data), expected))
    adj = [0] * n
    k = 0
    i, j = 0, 1
    for offset in range(1, expected):
        value = data[offset] - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                if value & ((1 << (shift + 1)) - 1):
                    raise ParseError("non-zero padding bits", offset=offset)
                break
            if value >> shift & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, adj, check=False)


def looks_like_graph6(token: str) -> bool:
    """True when ``token`` is a well-formed short graph6 string."""
    if not token or len(token) > 62 * 61 // 12 + 2:
        return False
    if any(not 63 <= ord(c) <= 126 for c in token):
        return False
    n = ord(token[0]) - 63
    return n <= MAX_N and len(token) == 1 + (n * (n - 1) // 2 + 5) // 6


# -- edge-list text -------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2 or not all(re.fullmatch(r"-?\d+", f) for f in fields):
            raise ParseError(f"expected two integers, got {raw.strip()!r}", line=lineno)
        a, b = int(fields[0]), int(fields[1])
        if header is None:
            header = (a, b, lineno)
        else:
            edges.append((a, b, lineno))
    if header is None:
        raise ParseError("missing 'n m' header line", line=1)
    n, m, _ = header
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}", line=header[2])
    if n > MAX_N:
        raise TooLarge(f"graphs are limited to {MAX_N} vertices, got {n}")
    if n < 0:
        raise ParseError("negative vertex count", line=header[2])
    for u, v, lineno in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range for n={n}", line=lineno)
        if u == v:
            raise ParseError(f"loop at vertex {u}", line=lineno)
    return from_edge_list(n, [(u, v) for u, v, _ in edges])


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# -- derived graphs ---------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)], check=False)


def _gather(row: int, members: list[int]) -> int:
    out = 0
    for i, v in enumerate(members):
        if row >> v & 1:
            out |= 1 << i
    return out


def induced_subgraph(g: Graph, s: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``s``; the second value maps new labels to old ones."""
    members = bits(s & g.full)
    adj = [_gather(g.adj[v] & s, members) for v in members]
    return Graph(len(members), adj, check=False), tuple(members)


def reach(adj: tuple[int, ...] | list[int], start: int, within: int) -> int:
    """Vertices of ``within`` reachable from the mask ``start`` inside ``within``."""
    seen = start & within
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= adj[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_connected_set(g: Graph, s: VertexSet) -> bool:
    if not s:
        return True
    return reach(g.adj, s & -s, s) == s


def quotient(adj: tuple[int, ...] | list[int], n: int, s: VertexSet) -> tuple[int, ...]:
    """Rows after merging ``s`` into its lowest vertex.

    The merged vertex keeps the label ``min(s)``; every other vertex keeps its
    relative order, so labels are the blocks sorted by their minimum.  No
    connectivity check is done here.
    """
    keep = min(bits(s))
    rest = s & ~(1 << keep)
    merged = 0
    for v in bits(s):
        merged |= adj[v]
    rows = list(adj)
    rows[keep] = merged & ~s
    for v in bits(merged & ~s):
        rows[v] = (rows[v] & ~s) | (1 << keep)
    survivors = [v for v in range(n) if not rest >> v & 1]
    return tuple(_gather(rows[v], survivors) for v in survivors)


def contract_set(g: Graph, s: VertexSet) -> Graph:
    """Contract the connected vertex set ``s`` into one vertex.

    The new vertex takes the label ``min(s)``; the remaining vertices keep
    their relative order.
    """
    s &= g.full
    if not s:
        raise EmptySet("cannot contract an empty vertex set")
    if not is_connected_set(g, s):
        raise NotConnected(f"vertex set {bits(s)} does not induce a connected subgraph")
    rows = quotient(g.adj, g.n, s)
    return Graph(len(rows), rows, check=False)


# -- structural predicates ----------------------------------------------------------

def components(g: Graph) -> list[VertexSet]:
    """Connected components as masks, ordered by their lowest vertex."""
    out = []
    left = g.full
    while left:
        comp = reach(g.adj, left & -left, left)
        out.append(comp)
        left &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return g.n == 0 or reach(g.adj, 1, g.full) == g.full


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def is_bipartite(g: Graph) -> tuple[bool, tuple[VertexSet, VertexSet] | None]:
    """2-colour by BFS; the part containing each component's lowest vertex is listed first."""
    side_a = side_b = 0
    adj = g.adj
    for comp in components(g):
        a = comp & -comp
        b = 0
        frontier = a
        colour_a = True
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= ~(a | b)
            if colour_a:
                b |= nxt
            else:
                a |= nxt
            frontier = nxt
            colour_a = not colour_a
        for v in bits(a):
            if adj[v] & a:
                return False, None
        for v in bits(b):
            if adj[v] & b:
                return False, None
        side_a |= a
        side_b |= b
    return True, (side_a, side_b)


def iter_edges_masked(g: Graph, alive: VertexSet) -> Iterator[tuple[int, int]]:
    adj = g.adj
    for u in bits(alive):
        for v in bits(adj[u] & alive & ~((2 << u) - 1)):
            yield u, v
