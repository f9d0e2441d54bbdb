"""Run bundles, theorem checks and recognizers over whole corpora.

A corpus is either every labeled graph on n vertices (n <= 7), enumerated
by edge mask, or a graph6 stream.  Work is split into static blocks that
are processed independently (optionally in worker processes) and merged
with count sums and a final sort, so the report does not depend on the
number of workers.
"""

from __future__ import annotations

import json
import multiprocessing
import sys
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import GraphError, TooLarge
from .graph import Graph, bits, from_edge_mask, from_graph6, is_connected, to_graph6
from .invariants import HadwigerMemo, InvariantBundle, compute_bundle
from .minors import dm_clique_minor, validate_certificate
from .theorems import THEOREMS, check, classify_equality, recognize_lemma1, recognize_lemma2

MAX_EXHAUSTIVE_N = 7
BLOCK = 1 << 13


@dataclass(frozen=True)
class SweepFilter:
    min_edges: int = 0
    require_non_complete: bool = False
    alpha_eq: int | None = None
    omega_eq: int | None = None
    connected_only: bool = False

    @classmethod
    def parse(cls, text: str | None) -> "SweepFilter":
        """Parse ``key=value`` pairs separated by commas, e.g. ``omega_eq=2,connected_only``."""
        if not text:
            return cls()
        fields = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            key, _, value = item.partition("=")
            key = key.strip()
            if key in ("require_non_complete", "connected_only"):
                fields[key] = value.strip().lower() not in ("0", "false", "no")
            elif key in ("min_edges", "alpha_eq", "omega_eq"):
                fields[key] = int(value)
            else:
                raise ValueError(f"unknown filter {key!r}")
        return cls(**fields)

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v not in (None, False, 0)}

    def pre(self, g: Graph) -> bool:
        if self.min_edges and g.m < self.min_edges:
            return False
        if self.require_non_complete and g.is_complete():
            return False
        if self.connected_only and not is_connected(g):
            return False
        return True

    def post(self, b: InvariantBundle) -> bool:
        if self.alpha_eq is not None and b.alpha != self.alpha_eq:
            return False
        if self.omega_eq is not None and b.omega != self.omega_eq:
            return False
        return True


@dataclass(frozen=True)
class CorpusSource:
    kind: str  # "exhaustive" or "graph6"
    n: int = 0
    n_min: int = 0
    path: str | None = None
    lines: tuple[str, ...] | None = None
    filter: SweepFilter = field(default_factory=SweepFilter)

    @classmethod
    def exhaustive(cls, n: int, n_min: int | None = None, filter: SweepFilter | None = None) -> "CorpusSource":
        n_min = n if n_min is None else n_min
        if not 1 <= n_min <= n <= MAX_EXHAUSTIVE_N:
            raise TooLarge(f"exhaustive enumeration needs 1 <= n <= {MAX_EXHAUSTIVE_N}")
        return cls("exhaustive", n=n, n_min=n_min, filter=filter or SweepFilter())

    @classmethod
    def graph6(cls, path: str | None = None, lines: Iterable[str] | None = None,
               filter: SweepFilter | None = None) -> "CorpusSource":
        return cls("graph6", path=path, lines=None if lines is None else tuple(lines),
                   filter=filter or SweepFilter())

    def describe(self) -> str:
        if self.kind == "exhaustive":
            span = f"{self.n}" if self.n == self.n_min else f"{self.n_min}..{self.n}"
            return f"exhaustive:n={span}"
        return f"graph6:{self.path or '<lines>'}"


@dataclass(frozen=True)
class SweepOptions:
    checks: tuple[str, ...] = THEOREMS
    facts: bool = False
    constructive: bool = False
    roundtrip: bool = False


def enumerate_labeled(n: int) -> Iterator[Graph]:
    """All labeled graphs on n vertices, in increasing edge-mask order."""
    if not 1 <= n <= MAX_EXHAUSTIVE_N:
        raise TooLarge(f"exhaustive enumeration needs 1 <= n <= {MAX_EXHAUSTIVE_N}")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield from_edge_mask(n, mask)


# -- per-block accumulation ---------------------------------------------------------

class _Partial:
    __slots__ = ("total", "examined", "filtered", "skipped", "errors", "theorems",
                 "witnesses", "anomalies", "agreement", "facts", "constructive", "roundtrip", "cross")

    def __init__(self, checks):
        self.total = 0
        self.examined = 0
        self.filtered = 0
        self.skipped = 0
        self.errors = []
        self.theorems = {t: [0, 0, 0, 0] for t in checks}
        self.witnesses = []
        self.anomalies = []
        self.agreement = {}
        self.facts = {}
        self.constructive = {}
        self.roundtrip = 0
        self.cross = {}

    def bump(self, table: dict, key: str, by: int = 1) -> None:
        table[key] = table.get(key, 0) + by

    def merge(self, other: "_Partial") -> None:
        self.total += other.total
        self.examined += other.examined
        self.filtered += other.filtered
        self.skipped += other.skipped
        self.errors.extend(other.errors)
        for t, counts in other.theorems.items():
            mine = self.theorems[t]
            for i in range(4):
                mine[i] += counts[i]
        self.witnesses.extend(other.witnesses)
        self.anomalies.extend(other.anomalies)
        for name in ("agreement", "facts", "constructive", "cross"):
            mine = getattr(self, name)
            for key, value in getattr(other, name).items():
                mine[key] = mine.get(key, 0) + value
        self.roundtrip += other.roundtrip


def _agree(part: _Partial, name: str, claim: bool, truth: bool, g6: str) -> None:
    if claim == truth:
        part.bump(part.agreement, name)
    else:
        part.anomalies.append({"g6": g6, "check": name,
                               "detail": f"recognizer says {claim}, invariants say {truth}"})


def _examine(g: Graph, part: _Partial, opts: SweepOptions, flt: SweepFilter, memo: HadwigerMemo) -> None:
    part.total += 1
    if not flt.pre(g):
        part.filtered += 1
        return
    b = compute_bundle(g, want_chi=opts.facts, memo=memo)
    if not flt.post(b):
        part.filtered += 1
        return
    part.examined += 1
    g6 = None
    if opts.roundtrip:
        g6 = to_graph6(g)
        back = from_graph6(g6)
        if back == g and to_graph6(back) == g6:
            part.roundtrip += 1
        else:
            part.anomalies.append({"g6": g6, "check": "roundtrip", "detail": "graph6 round trip changed the graph"})

    n, alpha, omega, h = b.n, b.alpha, b.omega, b.h
    lemma1 = recognize_lemma1(g) is not None
    cliques = recognize_lemma2(g, h, alpha)
    lemma2 = cliques is not None
    if lemma2:
        # which numbers of edges between the two cliques keep h = n/2
        left, right = cliques
        cross = 0
        for v in bits(left):
            cross += (g.adj[v] & right).bit_count()
        part.bump(part.cross, f"n{n}_cross{cross}")
    for t in opts.checks:
        rep = check(t, b, g)
        counts = part.theorems[t]
        if not rep.applicable:
            continue
        counts[0] += 1
        if rep.holds:
            counts[1] += 1
        if rep.strict:
            counts[2] += 1
        if rep.equality:
            counts[3] += 1
            g6 = g6 or to_graph6(g)
            part.witnesses.append((g6, t, rep.classes))
        if rep.anomaly:
            g6 = g6 or to_graph6(g)
            part.anomalies.append({"g6": g6, "check": t, "detail": rep.anomaly})
        # the "if and only if" halves of the equality characterizations
        if t == "DM":
            claim, truth = rep.equality, alpha == 1
        elif t == "MAIN":
            claim, truth = rep.equality, lemma1 or lemma2
        elif t == "ALPHA2":
            claim, truth = rep.equality, 2 * h == n and h == omega
        elif t == "OMEGA2":
            claim, truth = rep.equality, h == 2 and 2 * alpha == n
        else:
            continue
        if claim != truth:
            g6 = g6 or to_graph6(g)
        _agree(part, f"{t.lower()}_equality", claim, truth, g6)

    truth1 = h == 2 and 2 * alpha == n and b.m >= 1
    truth2 = 2 * h == n and h == omega and alpha == 2
    if lemma1 != truth1 or lemma2 != truth2:
        g6 = g6 or to_graph6(g)
    _agree(part, "lemma1", lemma1, truth1, g6)
    _agree(part, "lemma2", lemma2, truth2, g6)

    if opts.facts:
        chi = b.chi
        facts = (
            ("h2_forest", h != 2 or (b.forest and b.m >= 1)),
            ("h3_alpha_third", h != 3 or 3 * alpha >= n),
            ("chi4_h4", chi < 4 or h >= 4),
            ("omega_le_h", omega <= h),
            ("omega_le_chi", omega <= chi),
            ("alpha_chi_ge_n", alpha * chi >= n),
        )
        for name, ok in facts:
            part.bump(part.facts, name)
            if not ok:
                g6 = g6 or to_graph6(g)
                part.anomalies.append({"g6": g6, "check": name, "detail": f"alpha={alpha} omega={omega} h={h} chi={chi}"})

    if opts.constructive:
        cert = dm_clique_minor(g)
        k = cert.order
        results = (
            ("dm_valid", validate_certificate(g, cert).ok),
            ("dm_bound", (2 * alpha - 1) * k >= n),
            ("dm_le_h", k <= h),
            ("h_certificate", b.h_certificate.order == h and validate_certificate(g, b.h_certificate).ok),
        )
        for name, ok in results:
            part.bump(part.constructive, name)
            if not ok:
                g6 = g6 or to_graph6(g)
                part.anomalies.append({"g6": g6, "check": name, "detail": f"order={k} alpha={alpha} h={h}"})
        part.bump(part.constructive, f"dm_slack_{k + (-n // (2 * alpha - 1))}")


def _reverify(part: _Partial) -> None:
    # recompute every equality witness from its graph6 text before it is reported
    for g6, t, classes in part.witnesses:
        g = from_graph6(g6)
        b = compute_bundle(g)
        rep = check(t, b, g)
        ok = rep.applicable and rep.equality and rep.classes == classes
        if t == "MAIN":
            cls = classify_equality(b, g)
            ok = ok and cls.tags == classes and not cls.anomaly
        if not ok:
            part.anomalies.append({"g6": g6, "check": f"{t}_reverify", "detail": "witness did not re-verify"})


# -- task execution ------------------------------------------------------------------

_WORKER_MEMO: HadwigerMemo | None = None


def _memo_for(n: int | None) -> HadwigerMemo:
    global _WORKER_MEMO
    if _WORKER_MEMO is None:
        _WORKER_MEMO = HadwigerMemo()
    memo = _WORKER_MEMO
    # top-level graphs of an exhaustive block never recur; only cache proper minors
    memo.max_rows = (n - 1) if n is not None else 62
    if len(memo.exact) + len(memo.upper) > 2_000_000:
        memo.clear()
    return memo


def _run_task(task) -> _Partial:
    kind, payload, opts, flt = task
    part = _Partial(opts.checks)
    if kind == "masks":
        n, start, stop = payload
        memo = _memo_for(n)
        for mask in range(start, stop):
            _examine(from_edge_mask(n, mask), part, opts, flt, memo)
    else:
        memo = _memo_for(None)
        for lineno, text in payload:
            try:
                g = from_graph6(text)
            except GraphError as exc:
                part.skipped += 1
                part.errors.append({"line": lineno, "error": str(exc)})
                continue
            _examine(g, part, opts, flt, memo)
    _reverify(part)
    return part


def _stream_lines(source: CorpusSource) -> list[tuple[int, str]]:
    if source.lines is not None:
        raw = list(source.lines)
    elif source.path in (None, "-"):
        raw = sys.stdin.read().splitlines()
    else:
        with open(source.path, encoding="ascii", errors="replace") as fh:
            raw = fh.read().splitlines()
    return [(i, line.strip()) for i, line in enumerate(raw, start=1) if line.strip()]


def _tasks(source: CorpusSource, opts: SweepOptions) -> list:
    flt = source.filter
    tasks = []
    if source.kind == "exhaustive":
        for n in range(source.n_min, source.n + 1):
            size = 1 << (n * (n - 1) // 2)
            for start in range(0, size, BLOCK):
                tasks.append(("masks", (n, start, min(size, start + BLOCK)), opts, flt))
    elif source.kind == "graph6":
        lines = _stream_lines(source)
        chunk = 256
        for start in range(0, len(lines), chunk):
            tasks.append(("lines", lines[start:start + chunk], opts, flt))
    else:
        raise ValueError(f"unknown corpus kind {source.kind!r}")
    return tasks


@dataclass
class SweepSummary:
    source: str
    filter: dict
    total: int
    examined: int
    filtered: int
    skipped: int
    errors: list
    theorems: dict
    equality_witnesses: list
    anomalies: list
    recognizer_agreement: dict
    facts: dict
    constructive: dict
    roundtrip_ok: int
    lemma2_cross_edges: dict = field(default_factory=dict)
    runtime_ms: int = 0

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "source": self.source,
            "filter": self.filter,
            "total": self.total,
            "examined": self.examined,
            "filtered": self.filtered,
            "skipped": self.skipped,
            "errors": self.errors,
            "theorems": self.theorems,
            "equality_witnesses": self.equality_witnesses,
            "anomalies": self.anomalies,
            "recognizer_agreement": self.recognizer_agreement,
        }
        if self.facts:
            out["facts"] = self.facts
        if self.constructive:
            out["constructive"] = self.constructive
        if self.roundtrip_ok:
            out["roundtrip_ok"] = self.roundtrip_ok
        if self.lemma2_cross_edges:
            out["lemma2_cross_edges"] = self.lemma2_cross_edges
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_json(self, timing: bool = True, indent: int | None = 1) -> str:
        return json.dumps(self.to_dict(timing), indent=indent, sort_keys=False)

    def witnesses_for(self, theorem_id: str) -> list[str]:
        return [w["g6"] for w in self.equality_witnesses if w["theorem"] == theorem_id]


def run_sweep(source: CorpusSource, checks: Iterable[str] = THEOREMS, workers: int = 1, *,
              facts: bool = False, constructive: bool = False, roundtrip: bool = False) -> SweepSummary:
    """Sweep ``source`` and return the merged, sorted summary."""
    checks = tuple(checks)
    for t in checks:
        if t not in THEOREMS:
            raise ValueError(f"unknown theorem {t!r}")
    opts = SweepOptions(checks, facts, constructive, roundtrip)
    started = time.perf_counter()
    tasks = _tasks(source, opts)
    total = _Partial(checks)
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            total.merge(_run_task(task))
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers, initializer=_reset_worker) as pool:
            for part in pool.imap(_run_task, tasks):
                total.merge(part)
    witnesses = sorted(total.witnesses, key=lambda w: (w[0], THEOREMS.index(w[1])))
    return SweepSummary(
        source=source.describe(),
        filter=source.filter.to_dict(),
        total=total.total,
        examined=total.examined,
        filtered=total.filtered,
        skipped=total.skipped,
        errors=sorted(total.errors, key=lambda e: e["line"]),
        theorems={t: dict(zip(("applicable", "holds", "strict", "equality"), total.theorems[t])) for t in checks},
        equality_witnesses=[{"g6": g6, "theorem": t, "classes": list(cls)} for g6, t, cls in witnesses],
        anomalies=sorted(total.anomalies, key=lambda a: (a["g6"], a["check"], a["detail"])),
        recognizer_agreement=dict(sorted(total.agreement.items())),
        facts=dict(sorted(total.facts.items())),
        constructive=dict(sorted(total.constructive.items())),
        roundtrip_ok=total.roundtrip,
        lemma2_cross_edges=dict(sorted(total.cross.items(), key=lambda kv: _cross_key(kv[0]))),
        runtime_ms=round((time.perf_counter() - started) * 1000),
    )


def _cross_key(key: str) -> tuple[int, int]:
    n, cross = key[1:].split("_cross")
    return int(n), int(cross)


def _reset_worker() -> None:
    global _WORKER_MEMO
    _WORKER_MEMO = None
