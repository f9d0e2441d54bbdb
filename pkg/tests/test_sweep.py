import json

import pytest

from conftest import two_triangles
from oracles import brute_alpha, brute_hadwiger, brute_is_forest, brute_omega, brute_perfect_matching
from minorforge import (
    CorpusSource,
    SweepFilter,
    THEOREMS,
    TooLarge,
    enumerate_labeled,
    from_edge_mask,
    to_graph6,
)
from minorforge.sweep import run_sweep


def test_enumerate_counts():
    assert sum(1 for _ in enumerate_labeled(1)) == 1
    assert sum(1 for _ in enumerate_labeled(3)) == 8
    graphs = list(enumerate_labeled(4))
    assert len(graphs) == 64 and len({to_graph6(g) for g in graphs}) == 64
    assert graphs[0].m == 0 and graphs[-1].m == 6


def test_enumerate_range():
    with pytest.raises(TooLarge):
        list(enumerate_labeled(8))
    with pytest.raises(TooLarge):
        list(enumerate_labeled(0))
    with pytest.raises(TooLarge):
        CorpusSource.exhaustive(8)


def test_main_n4_witnesses_match_oracle():
    s = run_sweep(CorpusSource.exhaustive(4), ["MAIN"])
    expected = set()
    for mask in range(64):
        g = from_edge_mask(4, mask)
        if 0 < g.m < 6 and brute_alpha(g) == 2 and brute_omega(g) == 2 and brute_hadwiger(g) == 2:
            expected.add(to_graph6(g))
    assert set(s.witnesses_for("MAIN")) == expected
    assert len(expected) == 15  # 12 labeled paths and 3 perfect matchings
    main = s.theorems["MAIN"]
    assert main["applicable"] == main["holds"] == 62 and main["equality"] == 15
    assert s.anomalies == []


def test_single_complete_graph_stream():
    s = run_sweep(CorpusSource.graph6(lines=["Bw"]), ["MAIN"])
    assert s.total == 1 and s.theorems["MAIN"]["applicable"] == 0 and s.anomalies == []


def test_stream_errors_are_counted_with_lines():
    s = run_sweep(CorpusSource.graph6(lines=["Bw", "", "Bww", "C~", "Q"]))
    assert s.total == 2 and s.skipped == 2
    assert [e["line"] for e in s.errors] == [3, 5]


def test_stream_file(tmp_path):
    path = tmp_path / "g.g6"
    path.write_text("Bw\nCr\n")
    s = run_sweep(CorpusSource.graph6(str(path)))
    assert s.total == 2 and s.source.startswith("graph6:")


def test_filters():
    flt = SweepFilter.parse("omega_eq=2, connected_only")
    assert flt == SweepFilter(omega_eq=2, connected_only=True)
    s = run_sweep(CorpusSource.exhaustive(4, filter=flt), ["OMEGA2"])
    # connected triangle-free labeled graphs on 4 vertices: 16 trees, 3 four-cycles
    assert s.examined == 19 and s.filtered == 45
    assert s.theorems["OMEGA2"]["applicable"] == 19
    with pytest.raises(ValueError):
        SweepFilter.parse("colour=3")
    s = run_sweep(CorpusSource.exhaustive(4, filter=SweepFilter.parse("min_edges=1,require_non_complete")), ["MAIN"])
    assert s.examined == 62 and s.theorems["MAIN"]["applicable"] == 62


def test_report_schema():
    s = run_sweep(CorpusSource.exhaustive(3), facts=True, constructive=True, roundtrip=True)
    d = json.loads(s.to_json())
    for key in ("source", "total", "theorems", "equality_witnesses", "anomalies", "runtime_ms"):
        assert key in d
    assert set(d["theorems"]) == set(THEOREMS)
    for counts in d["theorems"].values():
        assert set(counts) == {"applicable", "holds", "strict", "equality"}
        assert counts["holds"] == counts["applicable"]
        assert counts["strict"] + counts["equality"] == counts["holds"]
    assert d["roundtrip_ok"] == 8
    assert "runtime_ms" not in s.to_dict(timing=False)


def test_witnesses_sorted_and_reverified():
    s = run_sweep(CorpusSource.exhaustive(4, n_min=2))
    keys = [(w["g6"], THEOREMS.index(w["theorem"])) for w in s.equality_witnesses]
    assert keys == sorted(keys)
    assert s.anomalies == []


def test_worker_count_does_not_change_report():
    source = CorpusSource.exhaustive(5, n_min=1)
    one = run_sweep(source, workers=1, constructive=True).to_json(timing=False)
    two = run_sweep(source, workers=2, constructive=True).to_json(timing=False)
    assert one == two


def test_n6_main_equality_families():
    s = run_sweep(CorpusSource.exhaustive(6), ["MAIN", "ALPHA2"])
    assert s.anomalies == []
    main = set(s.witnesses_for("MAIN"))
    assert to_graph6(two_triangles()) in main
    assert to_graph6(two_triangles()) in s.witnesses_for("ALPHA2")
    forests = set()
    for mask in range(1 << 15):
        if mask.bit_count() <= 5:
            g = from_edge_mask(6, mask)
            if g.m and brute_is_forest(g) and brute_perfect_matching(g):
                forests.add(to_graph6(g))
    assert forests <= main
    tagged = {w["g6"] for w in s.equality_witnesses if w["theorem"] == "MAIN" and "FOREST_PM" in w["classes"]}
    assert tagged == forests
