import random
from fractions import Fraction

import pytest

from contentmax.graph import GraphError, LabeledDigraph
from contentmax.patterns import (
    CopyIndex,
    PatternError,
    count_homomorphisms,
    ct_E,
    enumerate_copies,
    equistar_pattern,
    make_pattern,
    parse_pattern_spec,
    parse_pattern_text,
    path_ct_via_matrix,
    path_pattern,
    pattern_from_edges,
    satisfies_coverage,
    star_pattern,
)
from oracles import automorphisms_bruteforce, copies_bruteforce, ct_bruteforce

F = Fraction


def unit_graph(edges, vertices=()):
    return LabeledDigraph({e: 1 for e in edges}, vertices)


def cycle(m, label=1):
    return LabeledDigraph([(i, (i + 1) % m, label) for i in range(m)])


def test_path_pattern():
    p = make_pattern("path", 2)
    assert set(p.vertices) == {0, 1, 2}
    assert set(p.edges) == {(0, 1), (1, 2)}
    assert p.automorphism_count == 1


def test_star_pattern():
    p = make_pattern("star", 2)
    assert len(p.edges) == 2 and len({v for _, v in p.edges}) == 1
    assert p.automorphism_count == 2


def test_equistar_pattern():
    p = make_pattern("equistar", 2, 2)
    assert len(p.vertices) == 5 and len(p.edges) == 4
    # two length-2 arms into root 0
    indeg = {v: sum(1 for _, w in p.edges if w == v) for v in p.vertices}
    assert indeg[0] == 2
    assert p.automorphism_count == automorphisms_bruteforce(p.vertices, p.edges) == 2


@pytest.mark.parametrize(
    "pattern",
    [path_pattern(1), path_pattern(4), star_pattern(1), star_pattern(3), star_pattern(4),
     equistar_pattern(3, 2), equistar_pattern(2, 3),
     pattern_from_edges([(0, 1), (1, 0)]),
     pattern_from_edges([(0, 1), (2, 3)]),
     pattern_from_edges([(0, 1), (1, 2), (2, 0)])],
    ids=str,
)
def test_automorphism_counts_match_bruteforce(pattern):
    assert pattern.automorphism_count == automorphisms_bruteforce(pattern.vertices, pattern.edges)


def test_documented_automorphism_counts():
    assert [star_pattern(a).automorphism_count for a in (1, 2, 3, 4)] == [1, 2, 6, 24]
    assert equistar_pattern(3, 2).automorphism_count == 6
    assert path_pattern(5).automorphism_count == 1


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (0, 1)], []])
def test_bad_explicit_patterns(edges):
    with pytest.raises(PatternError):
        pattern_from_edges(edges)


def test_pattern_specs(tmp_path):
    assert parse_pattern_spec("path:3") == path_pattern(3)
    assert parse_pattern_spec("star:2") == star_pattern(2)
    assert parse_pattern_spec("equistar:2:3") == equistar_pattern(2, 3)
    f = tmp_path / "e.txt"
    f.write_text("# a triangle\nx y\ny z 5\nz x\n")
    tri = parse_pattern_spec(f"file:{f}")
    assert tri.automorphism_count == 3
    for bad in ["path", "path:x", "star:1:2", "cube:3", "path:0", "file:/nonexistent/file"]:
        with pytest.raises(PatternError):
            parse_pattern_spec(bad)
    with pytest.raises(PatternError):
        parse_pattern_text("a a\n")


def test_enumerate_copies_examples():
    path = LabeledDigraph([("a", "b", 1), ("b", "c", 1)])
    assert len(enumerate_copies(path, path_pattern(2))) == 1
    star3 = unit_graph([("u", "c"), ("v", "c"), ("w", "c")])
    assert len(enumerate_copies(star3, star_pattern(2))) == 3
    assert len(copies_bruteforce(star3, star_pattern(2))) == 3
    tri = cycle(3)
    assert len(enumerate_copies(tri, path_pattern(2))) == 3
    assert len(copies_bruteforce(tri, path_pattern(2))) == 3


def test_copy_equality_is_by_edge_set():
    g = unit_graph([("u", "c"), ("v", "c")])
    copies = enumerate_copies(g, star_pattern(2))
    assert len(copies) == 1
    c = copies[0]
    assert c.edge_set == frozenset({("u", "c"), ("v", "c")})
    # vertex map is a genuine embedding
    m = c.mapping()
    assert {(m[s], m[t]) for s, t in star_pattern(2).edges} == c.edge_set


def test_ct_examples():
    g = LabeledDigraph([("a", "b", 2), ("b", "c", 3)])
    assert ct_E(g, path_pattern(2)) == 6
    star = LabeledDigraph([("u", "c", 1), ("v", "c", 2), ("w", "c", 3)])
    assert ct_E(star, star_pattern(2)) == 11
    assert ct_bruteforce(star, star_pattern(2)) == 11
    assert ct_E(g, star_pattern(2)) == 0


def test_path_ct_via_matrix_examples():
    g = LabeledDigraph([("a", "b", 2), ("b", "c", 3)])
    assert path_ct_via_matrix(g, 2) == 6
    assert path_ct_via_matrix(g, 3) == 0
    with pytest.raises(GraphError):
        path_ct_via_matrix(cycle(3), 2)


def random_graph(rng, n_max=5, loops=True):
    n = rng.randint(1, n_max)
    cells = [(u, v) for u in range(n) for v in range(n) if loops or u != v]
    chosen = [c for c in cells if rng.random() < 0.45]
    rng.shuffle(chosen)
    return LabeledDigraph([(u, v, F(rng.randint(1, 9), rng.randint(1, 4))) for u, v in chosen], range(n))


PATTERNS = [path_pattern(1), path_pattern(2), path_pattern(3), star_pattern(2), star_pattern(3),
            equistar_pattern(2, 2), pattern_from_edges([(0, 1), (2, 3)]), pattern_from_edges([(0, 1), (1, 0)])]


@pytest.mark.parametrize("pattern", PATTERNS, ids=str)
def test_copies_match_bruteforce(pattern):
    rng = random.Random(7)
    for _ in range(40):
        g = random_graph(rng)
        found = enumerate_copies(g, pattern)
        assert {c.edge_set for c in found} == set(copies_bruteforce(g, pattern))
        assert len(found) == len({c.edge_set for c in found})
        assert ct_E(g, pattern) == ct_bruteforce(g, pattern)


@pytest.mark.parametrize("pattern", PATTERNS, ids=str)
def test_homomorphism_count_is_copies_times_automorphisms(pattern):
    rng = random.Random(11)
    for _ in range(40):
        g = random_graph(rng)
        assert count_homomorphisms(g, pattern) == len(enumerate_copies(g, pattern)) * pattern.automorphism_count


def test_copies_come_out_in_canonical_order():
    g = LabeledDigraph([("c", "d", 1), ("a", "b", 1), ("b", "c", 1)])
    keys = [sorted(g.edge_index(e) for e in c.edge_set) for c in enumerate_copies(g, path_pattern(1))]
    assert keys == sorted(keys)


def test_unit_labels_give_plain_counts():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng)
        unit = LabeledDigraph({e: 1 for e in g.edges}, g.vertices)
        for p in PATTERNS[:5]:
            assert ct_E(unit, p) == len(enumerate_copies(g, p))


def test_ct_is_affine_in_each_label():
    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng, loops=False)
        if not g.num_edges():
            continue
        e = rng.choice(g.edge_list())
        p = rng.choice(PATTERNS[:6])
        slope = CopyIndex(g, p).sigma(e)
        values = [F(1), F(7, 3), F(11)]
        cts = [ct_E(g.with_label(e, x), p) for x in values]
        base = cts[0] - slope * values[0]
        assert all(c == base + slope * x for c, x in zip(cts, values))


def test_path_ct_via_matrix_matches_enumeration():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(2, 6)
        edges = [(u, v, F(rng.randint(1, 9), rng.randint(1, 3))) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.5]
        g = LabeledDigraph(edges, range(n))
        for k in (1, 2, 3, 4):
            assert path_ct_via_matrix(g, k) == ct_E(g, path_pattern(k))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_coverage_for_paths_and_short_cycles(k):
    labels = [F(i + 2, 3) for i in range(k)]
    path = LabeledDigraph([(i, i + 1, labels[i]) for i in range(k)])
    assert satisfies_coverage(path, path_pattern(k))
    for m in range(k + 1, 2 * k):
        assert satisfies_coverage(cycle(m, 5), path_pattern(k))
    assert not satisfies_coverage(cycle(2 * k, 5), path_pattern(k))


def test_coverage_failure_witness():
    g = unit_graph([("a", "b"), ("c", "d")])
    res = satisfies_coverage(g, path_pattern(1))
    assert not res
    assert res.witness == (("a", "b"), ("c", "d"))
    lonely = unit_graph([("a", "b")])
    res = satisfies_coverage(lonely, path_pattern(2))
    assert not res and res.witness == (("a", "b"), ("a", "b"))


def test_c4_fails_for_two_paths():
    res = satisfies_coverage(cycle(4), path_pattern(2))
    assert not res
    (a, b), (c, d) = res.witness
    assert {a, b}.isdisjoint({c, d})
