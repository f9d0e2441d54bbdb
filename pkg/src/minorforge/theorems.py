"""Inequality checkers and recognizers for the two extremal families.

Every checker takes an :class:`InvariantBundle` and reports both sides of
its inequality.  The inequalities are theorems, so an applicable report
with ``holds == False`` can only come from a bug (or a corrupted bundle)
and is flagged as an anomaly.

Formulas (alpha, omega, h, n of the graph):

    DM         (2a - 1) h            >= n           every graph
    WOODALL    2a (h - 1)            >= n           at least one edge
    MAIN       (2a - 1)(h - 1) + 3   >= n + w       neither edgeless nor complete
    COROLLARY  (2a - 1)(h - 1) + 2   >= n + w       a >= 3 and w >= 3
    ALPHA2     3h                    >= n + w       a == 2
    OMEGA2     (2a - 1)(h - 1) + 1   >= n           w == 2
    WOOD       (2a - 1)(2h - 5)      >= 2n - 5      h >= 5

MAIN holds with equality exactly for forests with a perfect matching
(FOREST_PM) and for graphs split into two cliques of size n/2 with
h = n/2 (TWIN_CLIQUES).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits, complement, components, is_bipartite, is_forest
from .invariants import InvariantBundle, mis_size

THEOREMS = ("DM", "WOODALL", "MAIN", "COROLLARY", "ALPHA2", "OMEGA2", "WOOD")
FOREST_PM = "FOREST_PM"
TWIN_CLIQUES = "TWIN_CLIQUES"


@dataclass(frozen=True)
class ExtremalClass:
    tags: tuple[str, ...]
    matching: tuple[tuple[int, int], ...] | None = None
    cliques: tuple[int, int] | None = None

    @property
    def tag(self) -> str:
        return "+".join(self.tags) if self.tags else "NONE"

    @property
    def anomaly(self) -> bool:
        return not self.tags

    def to_dict(self) -> dict:
        out: dict = {"classes": list(self.tags) or ["NONE"]}
        if self.matching is not None:
            out["matching"] = [list(e) for e in self.matching]
        if self.cliques is not None:
            out["cliques"] = [bits(c) for c in self.cliques]
        return out


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    applicable: bool
    lhs: int
    rhs: int
    reason: str | None = None
    classes: tuple[str, ...] = ()
    anomaly: str | None = None

    @property
    def holds(self) -> bool | None:
        return self.lhs >= self.rhs if self.applicable else None

    @property
    def equality(self) -> bool | None:
        return self.lhs == self.rhs if self.applicable else None

    @property
    def strict(self) -> bool | None:
        return self.lhs > self.rhs if self.applicable else None

    @property
    def extremal_class(self) -> str:
        if self.theorem_id != "MAIN" or not self.equality:
            return "N/A"
        return "+".join(self.classes) if self.classes else "NONE"

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem_id,
            "applicable": self.applicable,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "equality": self.equality,
            "extremal_class": self.extremal_class,
        }
        if self.reason:
            out["reason"] = self.reason
        if self.anomaly:
            out["anomaly"] = self.anomaly
        return out


def _sides(theorem_id: str, n: int, m: int, a: int, w: int, h: int) -> tuple[int, int, str | None]:
    complete = m == n * (n - 1) // 2
    if theorem_id == "DM":
        return (2 * a - 1) * h, n, None
    if theorem_id == "WOODALL":
        return 2 * a * (h - 1), n, None if m >= 1 else "graph has no edge"
    if theorem_id == "MAIN":
        reason = "graph has no edge" if m == 0 else "graph is complete" if complete else None
        return (2 * a - 1) * (h - 1) + 3, n + w, reason
    if theorem_id == "COROLLARY":
        reason = None if a >= 3 and w >= 3 else "needs alpha >= 3 and omega >= 3"
        return (2 * a - 1) * (h - 1) + 2, n + w, reason
    if theorem_id == "ALPHA2":
        return 3 * h, n + w, None if a == 2 else "needs alpha = 2"
    if theorem_id == "OMEGA2":
        return (2 * a - 1) * (h - 1) + 1, n, None if w == 2 else "needs omega = 2"
    if theorem_id == "WOOD":
        return (2 * a - 1) * (2 * h - 5), 2 * n - 5, None if h >= 5 else "needs h >= 5"
    raise ValueError(f"unknown theorem {theorem_id!r}")


def check(theorem_id: str, bundle: InvariantBundle, g: Graph | None = None) -> TheoremReport:
    """Evaluate one inequality on ``bundle``.

    MAIN equality cases are classified with the recognizers, which need the
    graph itself (``g`` or ``bundle.graph``).
    """
    lhs, rhs, reason = _sides(theorem_id, bundle.n, bundle.m, bundle.alpha, bundle.omega, bundle.h)
    if reason is not None:
        return TheoremReport(theorem_id, False, lhs, rhs, reason)
    if lhs < rhs:
        return TheoremReport(theorem_id, True, lhs, rhs, anomaly=f"violation: {lhs} < {rhs}")
    if theorem_id == "MAIN" and lhs == rhs:
        graph = g if g is not None else bundle.graph
        if graph is None:
            raise ValueError("classifying a MAIN equality case needs the graph")
        cls = classify_equality(bundle, graph)
        anomaly = "equality outside both extremal families" if cls.anomaly else None
        return TheoremReport(theorem_id, True, lhs, rhs, classes=cls.tags, anomaly=anomaly)
    return TheoremReport(theorem_id, True, lhs, rhs)


def check_all(bundle: InvariantBundle, g: Graph | None = None, theorems=THEOREMS) -> list[TheoremReport]:
    return [check(t, bundle, g) for t in theorems]


def recognize_lemma1(g: Graph) -> tuple[tuple[int, int], ...] | None:
    """Perfect matching of a non-empty forest, or None.

    Leaves are matched to their neighbours, smallest leaf first; in a
    forest this succeeds exactly when a perfect matching exists.
    """
    if g.n == 0 or g.is_edgeless() or g.n % 2 or not is_forest(g):
        return None
    adj = g.adj
    alive = g.full
    matching = []
    while alive:
        leaf = -1
        for v in bits(alive):
            nb = adj[v] & alive
            if not nb:
                return None
            if not nb & (nb - 1):
                leaf = v
                break
        if leaf < 0:  # pragma: no cover - every non-empty forest has a leaf
            return None
        nb = adj[leaf] & alive
        u = nb.bit_length() - 1
        matching.append((min(leaf, u), max(leaf, u)))
        alive &= ~((1 << leaf) | nb)
    return tuple(sorted(matching))


def _equal_split(comps_sides: list[tuple[int, int]], half: int) -> tuple[int, int] | None:
    # choose an orientation per component so one side has exactly `half` vertices
    reachable = {0: ()}
    for a, b in comps_sides:
        nxt = {}
        for total, picks in reachable.items():
            for flip, side in ((0, a), (1, b)):
                t = total + side.bit_count()
                if t <= half and t not in nxt:
                    nxt[t] = picks + (flip,)
        reachable = nxt
    picks = reachable.get(half)
    if picks is None:
        return None
    left = right = 0
    for (a, b), flip in zip(comps_sides, picks):
        left |= b if flip else a
        right |= a if flip else b
    return left, right


def recognize_lemma2(g: Graph, h: int, alpha: int | None = None) -> tuple[int, int] | None:
    """Two disjoint cliques of size n/2 covering the graph when h = n/2, or None.

    ``h`` must be the exact Hadwiger number.  The clique pairs are the
    balanced 2-colourings of the complement.
    """
    n = g.n
    if n < 2 or n % 2 or 2 * h != n:
        return None
    if alpha is None:
        alpha = mis_size(g.adj, g.full)
    if alpha > 2:
        return None
    co = complement(g)
    ok, _ = is_bipartite(co)
    if not ok:
        return None
    sides = [_two_colour(co, comp) for comp in components(co)]
    split = _equal_split(sides, n // 2)
    if split is None:
        return None
    a, b = split
    return (a, b) if a & 1 else (b, a)


def _two_colour(g: Graph, comp: int) -> tuple[int, int]:
    # BFS layers of a bipartite component, alternating sides
    a = comp & -comp
    b = 0
    frontier = a
    to_b = True
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= comp & ~(a | b)
        if to_b:
            b |= nxt
        else:
            a |= nxt
        frontier = nxt
        to_b = not to_b
    return a, b


def classify_equality(bundle: InvariantBundle, g: Graph) -> ExtremalClass:
    """Which extremal families ``g`` belongs to; an empty result is an anomaly."""
    tags = []
    matching = recognize_lemma1(g)
    if matching is not None:
        tags.append(FOREST_PM)
    cliques = recognize_lemma2(g, bundle.h, bundle.alpha)
    if cliques is not None:
        tags.append(TWIN_CLIQUES)
    return ExtremalClass(tuple(tags), matching, cliques)


def verify_evidence(g: Graph, cls: ExtremalClass) -> bool:
    """Independent check of the evidence attached to an extremal class."""
    if FOREST_PM in cls.tags:
        if cls.matching is None or not is_forest(g):
            return False
        covered = 0
        for u, v in cls.matching:
            if not g.has_edge(u, v) or covered >> u & 1 or covered >> v & 1:
                return False
            covered |= (1 << u) | (1 << v)
        if covered != g.full:
            return False
    if TWIN_CLIQUES in cls.tags:
        if cls.cliques is None:
            return False
        a, b = cls.cliques
        if a & b or a | b != g.full or a.bit_count() != b.bit_count():
            return False
        for side in (a, b):
            for v in bits(side):
                if (side & ~(1 << v)) & ~g.adj[v]:
                    return False
    return True
