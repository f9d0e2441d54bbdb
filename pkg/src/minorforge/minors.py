"""Connected dominating sets and the Duchet-Meyniel clique-minor construction.

The construction: in a connected non-complete graph, start from an induced
path x-y-z and repeatedly add a vertex at distance two together with a
vertex joining it to the set.  The result D is connected, dominates the
graph and satisfies |D| <= 2*alpha(G[D]) - 1, because the added
distance-two vertices together with {x, z} stay independent.  Contracting
D gives a vertex adjacent to everything left, so

    order(G) >= 1 + order(G - D)

and induction gives a K_k minor with (2*alpha - 1) * k >= n.

For disconnected graphs the construction recurses into the component C
maximising ceil(n(C) / (2*alpha(C) - 1)).  This keeps the bound: alpha is
additive over components, so n / (2*alpha - 1) is at most the mediant
sum(n_i) / sum(2*alpha_i - 1), which is at most max_i n_i / (2*alpha_i - 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificate import MinorCertificate, Verdict, validate_certificate
from .errors import BadSeed, NotConnected, Undefined
from .graph import Graph, bits, is_connected, reach
from .invariants import mis_size, mis_witness

__all__ = [
    "DominatingSetTrace",
    "MinorCertificate",
    "Verdict",
    "dm_clique_minor",
    "find_induced_p3",
    "grow_dominating_set",
    "validate_certificate",
]


@dataclass(frozen=True)
class DominatingSetTrace:
    D: int
    k: int
    alpha_lower: int
    seed: int
    steps: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return self.D.bit_count()

    def to_dict(self) -> dict:
        return {
            "D": bits(self.D),
            "k": self.k,
            "alpha_lower": self.alpha_lower,
            "seed": bits(self.seed),
            "steps": [list(s) for s in self.steps],
        }


def _closed_nbhd(adj, s: int) -> int:
    out = s
    for v in bits(s):
        out |= adj[v]
    return out


def _grow(adj, alive: int, seed: int) -> tuple[int, list[tuple[int, int]]]:
    # alive must induce a connected graph containing the connected seed
    d = seed
    steps = []
    while True:
        closed = _closed_nbhd(adj, d) & alive
        if closed == alive:
            return d, steps
        ring = closed & ~d
        outer = _closed_nbhd(adj, ring) & alive & ~closed
        x = (outer & -outer).bit_length() - 1
        joint = adj[x] & ring
        z = (joint & -joint).bit_length() - 1
        d |= (1 << x) | (1 << z)
        steps.append((x, z))


def grow_dominating_set(g: Graph, seed: int) -> DominatingSetTrace:
    """Grow ``seed`` into a connected dominating set of ``g``.

    Each step adds the smallest vertex x at distance two from the current
    set and the smallest vertex z adjacent to both x and the set.
    """
    if not is_connected(g):
        raise NotConnected("grow_dominating_set needs a connected graph")
    if not seed or seed & ~g.full or reach(g.adj, seed & -seed, seed) != seed:
        raise BadSeed(f"seed {bits(seed & g.full)} must be a non-empty connected vertex set")
    d, steps = _grow(g.adj, g.full, seed)
    k = len(steps)
    return DominatingSetTrace(d, k, mis_size(g.adj, seed) + k, seed, tuple(steps))


def _induced_p3(adj, alive: int):
    for y in bits(alive):
        nb = adj[y] & alive
        for x in bits(nb):
            far = nb & ~adj[x] & ~((2 << x) - 1)
            if far:
                return x, y, (far & -far).bit_length() - 1
    return None


def find_induced_p3(g: Graph) -> tuple[int, int, int] | None:
    """An induced path x-y-z (x, z non-adjacent), smallest middle vertex first."""
    return _induced_p3(g.adj, g.full)


def _components(adj, alive: int) -> list[int]:
    out = []
    while alive:
        comp = reach(adj, alive & -alive, alive)
        out.append(comp)
        alive &= ~comp
    return out


def _dm(adj, co_adj, alive: int) -> list[int]:
    if not any(adj[v] & alive for v in bits(alive)):
        return [alive & -alive]
    comps = _components(adj, alive)
    if len(comps) > 1:
        def ratio(c):
            denom = 2 * mis_size(adj, c) - 1
            return -(-c.bit_count() // denom)
        return _dm(adj, co_adj, max(comps, key=ratio))
    p3 = _induced_p3(adj, alive)
    if p3 is None:
        return [1 << v for v in bits(alive)]
    x, y, z = p3
    d, _ = _grow(adj, alive, (1 << x) | (1 << y) | (1 << z))
    rest = alive & ~d
    sets = [d] + (_dm(adj, co_adj, rest) if rest else [])
    if mis_size(co_adj, alive) > len(sets):
        return [1 << v for v in bits(mis_witness(co_adj, alive)[1])]
    return sets


def dm_clique_minor(g: Graph) -> MinorCertificate:
    """A K_k minor with (2*alpha - 1) * k >= n, built from dominating sets."""
    if g.n == 0:
        raise Undefined("the empty graph has no clique minor")
    full = g.full
    co_adj = [full & ~r & ~(1 << v) for v, r in enumerate(g.adj)]
    return MinorCertificate(g.n, tuple(_dm(g.adj, co_adj, full)))
