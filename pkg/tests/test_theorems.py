import dataclasses

import pytest

from conftest import cycle, path, petersen, random_graph, two_triangles
from oracles import brute_alpha, brute_hadwiger, brute_is_forest, brute_perfect_matching
from minorforge import (
    FOREST_PM,
    THEOREMS,
    TWIN_CLIQUES,
    ExtremalClass,
    bits,
    check,
    check_all,
    classify_equality,
    complement,
    complete_graph,
    compute_bundle,
    empty_graph,
    from_edge_list,
    from_edge_mask,
    recognize_lemma1,
    recognize_lemma2,
    verify_evidence,
)

STAR = from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
TWO_EDGES = from_edge_list(4, [(0, 1), (2, 3)])
OCTAHEDRON = complement(from_edge_list(6, [(0, 1), (2, 3), (4, 5)]))


def report(theorem_id, g):
    return check(theorem_id, compute_bundle(g), g)


def test_main_two_triangles():
    r = report("MAIN", two_triangles())
    assert (r.lhs, r.rhs) == (9, 9) and r.equality and r.extremal_class == TWIN_CLIQUES


def test_main_p4():
    r = report("MAIN", path(4))
    assert (r.lhs, r.rhs) == (6, 6) and r.equality and FOREST_PM in r.classes
    # P4 is also two K2 joined by one edge with h = 2, so it sits in both families
    assert r.extremal_class == "FOREST_PM+TWIN_CLIQUES"


def test_main_not_applicable_to_complete_or_edgeless():
    for g in (complete_graph(4), empty_graph(4)):
        r = report("MAIN", g)
        assert not r.applicable and r.reason
        assert r.holds is None and r.equality is None and r.extremal_class == "N/A"


def test_alpha2_two_triangles():
    r = report("ALPHA2", two_triangles())
    assert (r.lhs, r.rhs) == (9, 9) and r.equality


def test_omega2_c5():
    r = report("OMEGA2", cycle(5))
    assert (r.lhs, r.rhs) == (7, 5) and r.strict


def test_wood_petersen():
    # alpha = 4 and h = 5 from the oracles, so (7)(5) >= 15
    pg = petersen()
    r = report("WOOD", pg)
    assert r.applicable and (r.lhs, r.rhs) == (35, 15) and r.strict


def test_applicability_clauses():
    assert not report("WOODALL", empty_graph(3)).applicable
    assert report("WOODALL", path(2)).applicable
    assert report("DM", empty_graph(1)).applicable
    assert not report("COROLLARY", two_triangles()).applicable  # alpha = 2
    assert not report("ALPHA2", cycle(6)).applicable           # alpha = 3
    assert not report("OMEGA2", complete_graph(3)).applicable
    assert not report("OMEGA2", empty_graph(3)).applicable      # omega = 1
    assert not report("WOOD", complete_graph(4)).applicable
    assert report("WOOD", complete_graph(5)).applicable


def test_lemma1_examples():
    assert recognize_lemma1(path(4)) == ((0, 1), (2, 3))
    assert recognize_lemma1(STAR) is None
    assert recognize_lemma1(cycle(4)) is None
    assert recognize_lemma1(empty_graph(2)) is None
    assert recognize_lemma1(empty_graph(0)) is None


def test_lemma2_examples():
    assert recognize_lemma2(two_triangles(), 3) == (0b000111, 0b111000)
    h = brute_hadwiger(OCTAHEDRON)
    assert h == 4
    assert recognize_lemma2(OCTAHEDRON, h) is None
    assert recognize_lemma2(cycle(5), 3) is None


def test_lemma2_with_cross_edges():
    # two triangles joined by one edge still have h = 3
    g = from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    h = brute_hadwiger(g)
    assert h == 3
    a, b = recognize_lemma2(g, h)
    assert sorted([bits(a), bits(b)]) == [[0, 1, 2], [3, 4, 5]]


def test_two_edges_in_both_classes():
    b = compute_bundle(TWO_EDGES)
    assert (b.alpha, b.omega, b.h, b.n) == (2, 2, 2, 4)
    r = check("MAIN", b, TWO_EDGES)
    assert (r.lhs, r.rhs) == (6, 6)
    assert set(r.classes) == {FOREST_PM, TWIN_CLIQUES}
    assert r.extremal_class == "FOREST_PM+TWIN_CLIQUES"
    cls = classify_equality(b, TWO_EDGES)
    assert verify_evidence(TWO_EDGES, cls)


def test_classify_examples():
    assert FOREST_PM in classify_equality(compute_bundle(path(4)), path(4)).tags
    star_pm = from_edge_list(6, [(0, 1), (0, 2), (0, 3), (2, 4), (3, 5)])
    assert classify_equality(compute_bundle(star_pm), star_pm).tags == (FOREST_PM,)
    assert classify_equality(compute_bundle(two_triangles()), two_triangles()).tags == (TWIN_CLIQUES,)


def test_verify_evidence_rejects_forgeries():
    g = path(4)
    assert not verify_evidence(g, ExtremalClass((FOREST_PM,), matching=((0, 1), (1, 2))))
    assert not verify_evidence(g, ExtremalClass((FOREST_PM,), matching=((0, 1),)))
    assert not verify_evidence(g, ExtremalClass((TWIN_CLIQUES,), cliques=(0b0101, 0b1010)))
    assert verify_evidence(g, ExtremalClass((TWIN_CLIQUES,), cliques=(0b0011, 0b1100)))
    assert verify_evidence(g, ExtremalClass((FOREST_PM,), matching=((0, 1), (2, 3))))


def test_corrupted_bundle_is_flagged():
    b = compute_bundle(cycle(5))
    bad = dataclasses.replace(b, h=1)
    r = check("DM", bad)
    assert r.applicable and r.holds is False and r.anomaly


def test_unclassified_equality_is_flagged():
    # claim h = 2 for C6 so MAIN reaches equality on a graph outside both families
    g = cycle(6)
    b = dataclasses.replace(compute_bundle(g), h=2)
    r = check("MAIN", b, g)
    assert r.equality and r.extremal_class == "NONE" and r.anomaly


def test_unknown_theorem():
    with pytest.raises(ValueError):
        check("NOPE", compute_bundle(path(2)))


def test_report_json_fields():
    d = report("MAIN", from_edge_list(6, [(0, 1), (0, 2), (0, 3), (2, 4), (3, 5)])).to_dict()
    assert d == {"theorem": "MAIN", "applicable": True, "lhs": 8, "rhs": 8, "holds": True,
                 "equality": True, "extremal_class": "FOREST_PM"}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_biconditionals_exhaustive_small(n):
    for mask in range(1 << (n * (n - 1) // 2)):
        g = from_edge_mask(n, mask)
        b = compute_bundle(g)
        for r in check_all(b, g):
            assert not r.applicable or r.holds
            assert r.anomaly is None
        l1 = recognize_lemma1(g) is not None
        assert l1 == (b.h == 2 and 2 * b.alpha == n and b.m >= 1)
        assert l1 == (brute_is_forest(g) and g.m >= 1 and brute_perfect_matching(g))
        l2 = recognize_lemma2(g, b.h) is not None
        assert l2 == (2 * b.h == n and b.h == b.omega and b.alpha == 2)


def test_lemma1_random_forests(rng):
    for _ in range(300):
        n = rng.randint(2, 12)
        edges = [(v, rng.randrange(v)) for v in range(1, n) if rng.random() < 0.8]
        g = from_edge_list(n, edges)
        m = recognize_lemma1(g)
        assert (m is not None) == (g.m >= 1 and brute_perfect_matching(g))
        if m is not None:
            assert verify_evidence(g, ExtremalClass((FOREST_PM,), matching=m))


def test_lemma2_random_even(rng):
    for _ in range(200):
        g = random_graph(rng.choice([2, 4, 6, 8]), rng.uniform(0.4, 1.0), rng)
        h = brute_hadwiger(g) if g.n <= 6 else compute_bundle(g).h
        got = recognize_lemma2(g, h)
        if got is not None:
            assert verify_evidence(g, ExtremalClass((TWIN_CLIQUES,), cliques=got))
            assert got[0] & 1
        assert (got is not None) == (2 * h == g.n and brute_alpha(g) <= 2 and _two_clique_split(g))


def _two_clique_split(g):
    half = g.n // 2
    for mask in range(1 << g.n):
        if mask.bit_count() != half:
            continue
        other = g.full & ~mask
        if all((s & ~(1 << v)) & ~g.adj[v] == 0 for s in (mask, other) for v in bits(s)):
            return True
    return False


def test_check_all_order():
    assert [r.theorem_id for r in check_all(compute_bundle(path(3)), path(3))] == list(THEOREMS)
