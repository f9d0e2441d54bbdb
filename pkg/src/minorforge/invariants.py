"""Exact independence, clique, Hadwiger and chromatic numbers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .certificate import MinorCertificate
from .errors import Undefined
from .graph import Graph, bits, complement, is_bipartite, is_connected, is_forest

# KMAX[m] = largest k with k(k-1)/2 <= m; a graph with m edges has no K_k minor above it
KMAX = []
_k = 1
for _m in range(62 * 61 // 2 + 1):
    while (_k + 1) * _k // 2 <= _m:
        _k += 1
    KMAX.append(_k)
del _k, _m


# -- independent sets --------------------------------------------------------------

def _clique_cover(adj, mask: int) -> int:
    # greedy clique cover size; an upper bound on alpha of the subgraph on mask
    count = 0
    while mask:
        low = mask & -mask
        clique = low
        cand = adj[low.bit_length() - 1] & mask
        while cand:
            c = cand & -cand
            clique |= c
            cand &= adj[c.bit_length() - 1]
        mask &= ~clique
        count += 1
    return count


def mis_size(adj, mask: int) -> int:
    """Independence number of the subgraph induced by ``mask``.

    Branch and bound: vertices of degree <= 1 are taken greedily, otherwise
    branch on a maximum-degree vertex (include it, or delete it) and prune
    with a greedy clique cover.
    """
    best = 0

    def search(mask: int, size: int) -> None:
        nonlocal best
        while True:
            reduced = False
            pick = -1
            top = -1
            m = mask
            while m:
                low = m & -m
                m ^= low
                v = low.bit_length() - 1
                nb = adj[v] & mask
                if nb & (nb - 1) == 0:
                    # degree 0 or 1: some maximum independent set contains v
                    size += 1
                    mask &= ~(nb | low)
                    m &= mask
                    reduced = True
                elif not reduced:
                    d = nb.bit_count()
                    if d > top:
                        top = d
                        pick = v
            if not reduced:
                break
        if not mask:
            if size > best:
                best = size
            return
        count = mask.bit_count()
        if size + count <= best:
            return
        # the cover bound does not pay for itself on tiny subproblems
        if count > 8 and size + _clique_cover(adj, mask) <= best:
            return
        low = 1 << pick
        search(mask & ~(adj[pick] | low), size + 1)
        search(mask & ~low, size)

    search(mask, 0)
    return best


def mis_witness(adj, mask: int) -> tuple[int, int]:
    """Independence number of ``mask`` and the lexicographically smallest maximum set.

    The witness is built vertex by vertex in increasing order, keeping a
    vertex whenever a maximum set containing the choices so far still exists.
    """
    alpha = mis_size(adj, mask)
    chosen = 0
    cand = mask
    need = alpha
    while need:
        low = cand & -cand
        v = low.bit_length() - 1
        rest = cand & ~(adj[v] | ((low << 1) - 1))
        if need == 1 or (rest.bit_count() >= need - 1 and mis_size(adj, rest) >= need - 1):
            chosen |= low
            need -= 1
            cand = rest
        else:
            cand ^= low
    return alpha, chosen


def max_independent_set(g: Graph) -> tuple[int, int]:
    """Size of a maximum independent set and the lexicographically smallest one."""
    return mis_witness(g.adj, g.full)


def max_clique(g: Graph) -> tuple[int, int]:
    return max_independent_set(complement(g))


def clique_number(rows, n: int) -> int:
    full = (1 << n) - 1
    comp = [full & ~r & ~(1 << v) for v, r in enumerate(rows)]
    return mis_size(comp, full)


# -- Hadwiger number ---------------------------------------------------------------

class HadwigerMemo:
    """Exact Hadwiger numbers keyed by labeled adjacency rows.

    A fresh memo is used per call unless the caller passes one in; sharing
    a memo across calls only saves work, since stored values are exact
    (``exact``) or proven upper bounds (``upper``).
    """

    __slots__ = ("exact", "upper", "omega", "max_rows")

    def __init__(self, max_rows: int = 62):
        self.exact: dict[tuple[int, ...], int] = {}
        self.upper: dict[tuple[int, ...], int] = {}
        self.omega: dict[tuple[int, ...], int] = {}
        # graphs with more vertices than this are solved but not stored
        self.max_rows = max_rows

    def clear(self) -> None:
        self.exact.clear()
        self.upper.clear()
        self.omega.clear()

    def __len__(self) -> int:
        return len(self.exact)


def contract_edge(rows: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    """Rows of G/uv for u < v: v merges into u, labels above v shift down."""
    bu = 1 << u
    bv = 1 << v
    low = bv - 1
    merged = (rows[u] | rows[v]) & ~(bu | bv)
    out = []
    for w, r in enumerate(rows):
        if w == v:
            continue
        if w == u:
            r = merged
        elif r & bv:
            r = (r ^ bv) | bu
        out.append((r & low) | ((r >> 1) & ~low))
    return tuple(out)


def _solve(rows: tuple[int, ...], floor: int, memo: HadwigerMemo):
    # exact h(rows) when it exceeds floor, else None (h <= floor)
    h = memo.exact.get(rows)
    if h is not None:
        return h if h > floor else None
    ub = memo.upper.get(rows)
    if ub is not None and ub <= floor:
        return None
    n = len(rows)
    keep = n <= memo.max_rows
    m = 0
    for r in rows:
        m += r.bit_count()
    m >>= 1
    if 2 * m == n * (n - 1):
        if keep:
            memo.exact[rows] = n
        return n if n > floor else None
    top = min(n - 1, KMAX[m])
    if top <= floor:
        if keep:
            memo.upper[rows] = top
        return None
    best = memo.omega.get(rows)
    if best is None:
        best = clique_number(rows, n)
        if keep:
            memo.omega[rows] = best
    if best < top:
        if best < floor:
            best = floor
        for u in range(n):
            ru = rows[u]
            nb = ru >> (u + 1)
            v = u
            while nb:
                step = (nb & -nb).bit_length()
                nb >>= step
                v += step
                # contracting uv loses the edge itself and one edge per common neighbour
                if min(n - 1, KMAX[m - 1 - (ru & rows[v]).bit_count()]) <= best:
                    continue
                got = _solve(contract_edge(rows, u, v), best, memo)
                if got is not None:
                    best = got
                    if best >= top:
                        break
            if best >= top:
                break
    if best > floor:
        if keep:
            memo.exact[rows] = best
        return best
    if keep:
        memo.upper[rows] = floor
    return None


def hadwiger_number(g: Graph, memo: HadwigerMemo | None = None, *,
                    clique: int | None = None) -> tuple[int, MinorCertificate]:
    """Exact Hadwiger number with a certificate of that order.

    Uses h(G) = max(omega(G), max over edges uv of h(G/uv)); every value is
    memoized on the labeled rows, so contraction sequences reaching the same
    partition are solved once.  ``clique`` may pass in the witness of
    :func:`max_clique` when the caller already has it.
    """
    if g.n == 0:
        raise Undefined("the Hadwiger number of the empty graph is undefined")
    if memo is None:
        memo = HadwigerMemo()
    rows = g.adj
    h = _solve(rows, 0, memo)
    blocks = [1 << v for v in range(g.n)]
    while True:
        omega = memo.omega.get(rows)
        if omega is None:
            omega = clique_number(rows, len(rows))
        if omega == h:
            break
        for u, v in _edges(rows):
            child = contract_edge(rows, u, v)
            if _solve(child, h - 1, memo) == h:
                blocks[u] |= blocks.pop(v)
                rows = child
                break
        else:  # pragma: no cover - the recurrence guarantees a witness
            raise AssertionError("no contraction attains the Hadwiger number")
    if clique is None or rows is not g.adj:
        clique = max_clique(Graph(len(rows), rows, check=False))[1]
    return h, MinorCertificate(g.n, tuple(blocks[i] for i in bits(clique)))


def _edges(rows):
    for u, r in enumerate(rows):
        for v in bits(r >> (u + 1)):
            yield u, u + 1 + v


# -- chromatic number --------------------------------------------------------------

def _colourable(adj, order: list[int], k: int) -> bool:
    classes = [0] * k
    n = len(order)

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        bit = 1 << v
        nb = adj[v]
        # a fresh colour is only tried once (colour symmetry)
        for c in range(min(used + 1, k)):
            if not classes[c] & nb:
                classes[c] |= bit
                if place(i + 1, used + 1 if c == used else used):
                    return True
                classes[c] ^= bit
        return False

    return place(0, 0)


def chromatic_number(g: Graph, omega: int | None = None) -> int:
    if g.n == 0:
        raise Undefined("the chromatic number of the empty graph is undefined")
    if g.is_edgeless():
        return 1
    if is_bipartite(g)[0]:
        return 2
    adj = g.adj
    order = sorted(range(g.n), key=lambda v: (-adj[v].bit_count(), v))
    # greedy colouring in the same order gives the starting upper bound
    colour = {}
    for v in order:
        taken = {colour[u] for u in bits(adj[v]) if u in colour}
        colour[v] = next(c for c in range(g.n) if c not in taken)
    upper = max(colour.values()) + 1
    if omega is None:
        omega = max_clique(g)[0]
    for k in range(max(omega, 3), upper):
        if _colourable(adj, order, k):
            return k
    return upper


# -- bundle ------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantBundle:
    n: int
    m: int
    alpha: int
    alpha_witness: int
    omega: int
    omega_witness: int
    h: int
    h_certificate: MinorCertificate
    connected: bool
    bipartite: bool
    forest: bool
    chi: int | None = None
    graph: Graph | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "alpha": self.alpha,
            "alpha_witness": bits(self.alpha_witness),
            "omega": self.omega,
            "omega_witness": bits(self.omega_witness),
            "h": self.h,
            "h_certificate": self.h_certificate.to_dict(),
            "connected": self.connected,
            "bipartite": self.bipartite,
            "forest": self.forest,
        }
        if self.chi is not None:
            out["chi"] = self.chi
        return out


def compute_bundle(g: Graph, want_chi: bool = False, memo: HadwigerMemo | None = None) -> InvariantBundle:
    if g.n == 0:
        raise Undefined("invariants of the empty graph are undefined")
    alpha, aw = max_independent_set(g)
    omega, ow = max_clique(g)
    h, cert = hadwiger_number(g, memo, clique=ow)
    return InvariantBundle(
        n=g.n,
        m=g.m,
        alpha=alpha,
        alpha_witness=aw,
        omega=omega,
        omega_witness=ow,
        h=h,
        h_certificate=cert,
        connected=is_connected(g),
        bipartite=is_bipartite(g)[0],
        forest=is_forest(g),
        chi=chromatic_number(g, omega) if want_chi else None,
        graph=g,
    )
