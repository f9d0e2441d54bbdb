"""Clique-minor certificates and their independent checker."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits, is_connected_set


@dataclass(frozen=True)
class MinorCertificate:
    """Branch sets (vertex masks of the host graph) witnessing a K_k minor."""

    host_n: int
    branch_sets: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.branch_sets)

    def to_dict(self) -> dict:
        return {"order": self.order, "branch_sets": [bits(s) for s in self.branch_sets]}

    @classmethod
    def from_dict(cls, data: dict, host_n: int) -> "MinorCertificate":
        sets = []
        for members in data["branch_sets"]:
            mask = 0
            for v in members:
                mask |= 1 << v
            sets.append(mask)
        return cls(host_n, tuple(sets))


@dataclass(frozen=True)
class Verdict:
    ok: bool
    order: int
    clause: str | None = None
    detail: str | None = None
    offending: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        out = {"valid": self.ok, "order": self.order}
        if not self.ok:
            out.update(clause=self.clause, detail=self.detail, offending=list(self.offending))
        return out


def validate_certificate(g: Graph, cert: MinorCertificate) -> Verdict:
    """Check every branch-set condition against ``g``.

    On failure the verdict names the violated clause and the indices of the
    offending branch sets.
    """
    k = cert.order
    if cert.host_n != g.n:
        return Verdict(False, k, "host_mismatch", f"certificate is for n={cert.host_n}, graph has n={g.n}")
    used = 0
    for i, s in enumerate(cert.branch_sets):
        if not s:
            return Verdict(False, k, "empty", f"branch set {i} is empty", (i,))
        if s & ~g.full:
            return Verdict(False, k, "out_of_range", f"branch set {i} has vertices >= {g.n}", (i,))
        if s & used:
            j = next(j for j in range(i) if cert.branch_sets[j] & s)
            return Verdict(False, k, "overlap", f"branch sets {j} and {i} share vertices", (j, i))
        used |= s
        if not is_connected_set(g, s):
            return Verdict(False, k, "disconnected", f"branch set {i} {bits(s)} is not connected", (i,))
    adj = g.adj
    reach = []
    for s in cert.branch_sets:
        nb = 0
        for v in bits(s):
            nb |= adj[v]
        reach.append(nb)
    for i in range(k):
        for j in range(i + 1, k):
            if not reach[i] & cert.branch_sets[j]:
                return Verdict(False, k, "not_adjacent", f"no edge joins branch sets {i} and {j}", (i, j))
    return Verdict(True, k)
