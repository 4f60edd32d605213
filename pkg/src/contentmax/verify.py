"""Verification suites: closed forms against oracles, optimizer ledgers, round trips.

Each suite returns a :class:`SuiteResult` made of named cases so the CLI and
the test-suite can report one line per case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from math import comb

from .bounds import (
    balanced_exchange,
    bound_report,
    path_bound_int,
    star_bound_int,
    star_finite_value,
    star_sup_real,
)
from .graph import LabeledDigraph, LabeledMatrix, is_dag, mat_pow, mat_weight, to_adjacency, weight
from .io import format_edge_list, format_matrix, parse_edge_list, parse_matrix
from .optimizer import optimize
from .patterns import (
    CopyIndex,
    Pattern,
    count_homomorphisms,
    ct_E,
    enumerate_copies,
    parse_pattern_spec,
    path_pattern,
    satisfies_coverage,
    star_pattern,
)
from .search import (
    canonical_form,
    check_nilpotent_bound,
    classify_coverage_graphs,
    cycle_shape,
    describe_shape,
    max_ct_over_dags,
    max_ct_over_digraphs,
    max_elementary_symmetric,
    max_product_composition,
    path_shape,
)


@dataclass
class CaseResult:
    label: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'}  {self.label}{tail}"


@dataclass
class SuiteResult:
    name: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def add(self, label: str, passed: bool, detail: str = "") -> None:
        self.cases.append(CaseResult(label, bool(passed), detail))

    def summary(self) -> str:
        ok = sum(c.passed for c in self.cases)
        return f"{self.name}: {ok}/{len(self.cases)} cases passed"


def random_label(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.randint(1, 5))


def random_dag(rng: random.Random, max_vertices: int = 6, density: float = 0.5) -> LabeledDigraph:
    """Random rational-labeled DAG; vertex and edge insertion orders are shuffled."""
    n = rng.randint(2, max_vertices)
    topo = list(range(n))
    rng.shuffle(topo)
    pairs = [(topo[i], topo[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    if not pairs:
        i, j = sorted(rng.sample(range(n), 2))
        pairs = [(topo[i], topo[j])]
    rng.shuffle(pairs)
    vertices = list(range(n))
    rng.shuffle(vertices)
    return LabeledDigraph([(u, v, random_label(rng)) for u, v in pairs], vertices)


def random_digraph(rng: random.Random, max_vertices: int = 6, density: float = 0.4, loops: bool = True) -> LabeledDigraph:
    n = rng.randint(1, max_vertices)
    pairs = [(u, v) for u in range(n) for v in range(n) if (loops or u != v) and rng.random() < density]
    rng.shuffle(pairs)
    return LabeledDigraph([(u, v, random_label(rng)) for u, v in pairs], range(n))


def _is_balanced_path(g: LabeledDigraph, k: int, balanced: tuple[int, ...]) -> bool:
    if g.num_edges() != k or canonical_form(g.edges) != path_shape(k):
        return False
    return sorted(g.edges.values()) == sorted(Fraction(x) for x in balanced)


def suite_paths(max_n: int = 8, max_k: int = 3, workers: int = 1) -> SuiteResult:
    """Oracle over DAGs on k+2 vertices against the balanced-product closed form.

    Three cases per (N, k): the values agree; every maximizer is a balanced
    k-path; and among the maximizers the coverage-satisfying ones are exactly
    the balanced k-paths, which do occur.
    """
    res = SuiteResult("paths")
    for k in range(1, max_k + 1):
        pattern = path_pattern(k)
        for N in range(1, max_n + 1):
            closed, balanced = path_bound_int(N, k)
            sr = max_ct_over_dags(N, pattern, k + 2, workers=workers)
            tag = f"N={N} k={k}"
            res.add(f"{tag} value", sr.best_value == closed,
                    f"oracle {sr.best_value}, closed form {closed}, space {sr.search_space_size}")
            odd = [g for g in sr.maximizers if not _is_balanced_path(g, k, balanced)]
            res.add(f"{tag} every maximizer is a balanced {k}-path", not odd,
                    f"{len(sr.maximizers)} maximizers" + (f", e.g. {format_edge_list(odd[0]).strip()!r}" if odd else ""))
            if closed:
                covered = [g for g in sr.maximizers if satisfies_coverage(g, pattern)]
                ok = bool(covered) and all(_is_balanced_path(g, k, balanced) for g in covered)
                res.add(f"{tag} coverage-satisfying maximizers are balanced {k}-paths", ok,
                        f"{len(covered)} of {len(sr.maximizers)} maximizers satisfy coverage")
    return res


def suite_compositions(max_n: int = 12, max_k: int = 5) -> SuiteResult:
    res = SuiteResult("compositions")
    for k in range(1, max_k + 1):
        for N in range(0, max_n + 1):
            closed, _ = path_bound_int(N, k)
            best, argmax = max_product_composition(N, k)
            reached = tuple(balanced_exchange([N] + [0] * (k - 1)))
            res.add(f"N={N} k={k}", best == closed and reached in argmax,
                    f"oracle {best}, closed form {closed}, exchange reaches {reached}")
    return res


def suite_matrix(trials: int = 1000, seed: int = 42, ks=(1, 2, 3), dims=(3, 4, 5),
                 weights=(Fraction(1), Fraction(5), Fraction(22, 7))) -> SuiteResult:
    res = SuiteResult("matrix")
    for N in weights:
        for k in ks:
            for dim in dims:
                r = check_nilpotent_bound(N, k, dim, trials, seed)
                res.add(f"N={N} k={k} dim={dim}", r.passed,
                        f"{trials - r.violations}/{trials} inequalities hold, bound {r.bound}, "
                        f"witness {r.witness_value}, max ratio {r.max_ratio}")
    return res


def replay_ledger(start: LabeledDigraph, pattern: Pattern) -> list[str]:
    """Run :func:`optimize` and re-derive every step independently; return the problems found."""
    result = optimize(start, pattern)
    problems = []
    n_edges = start.num_edges()
    w0 = weight(start)
    g = start
    ct_prev = ct_E(g, pattern)
    if ct_prev != result.ct_before:
        problems.append("initial ct mismatch")
    for i, step in enumerate(result.trace):
        e, f = step.survivor, step.removed
        index = CopyIndex(g, pattern)
        if index.share_copy(e, f):
            problems.append(f"step {i}: merged pair shares a copy")
        if (index.sigma(e), index.sigma(f)) != (step.sigma_survivor, step.sigma_removed):
            problems.append(f"step {i}: sigma mismatch")
        if step.sigma_survivor < step.sigma_removed:
            problems.append(f"step {i}: sigma ordering violated")
        g = g.with_label(e, g.edges[e] + g.edges[f]).without_edge(f)
        ct_now = ct_E(g, pattern)
        if ct_now - ct_prev != step.removed_label * (step.sigma_survivor - step.sigma_removed):
            problems.append(f"step {i}: increment identity fails")
        if ct_now != step.ct_after or ct_prev != step.ct_before:
            problems.append(f"step {i}: recorded ct differs from recomputation")
        if ct_now < ct_prev:
            problems.append(f"step {i}: ct decreased")
        if weight(g) != w0:
            problems.append(f"step {i}: weight changed")
        ct_prev = ct_now
    if g != result.graph:
        problems.append("replayed graph differs from optimizer output")
    if n_edges and len(result.trace) >= n_edges:
        problems.append(f"{len(result.trace)} steps for {n_edges} edges")
    if CopyIndex(g, pattern).first_uncovered(inclusive=False) is not None:
        problems.append("final graph still has an uncovered pair")
    return problems


def suite_merge(graphs: int = 1000, seed: int = 42, patterns=("path:2", "path:3", "star:2")) -> SuiteResult:
    res = SuiteResult("merge")
    rng = random.Random(seed)
    pats = [parse_pattern_spec(p) for p in patterns]
    for i in range(graphs):
        g = random_dag(rng)
        for pattern in pats:
            problems = replay_ledger(g, pattern)
            res.add(f"graph {i} {pattern}", not problems, "; ".join(problems))
    return res


def suite_stars(max_n: int = 8, max_a: int = 3, digraph_max_n: int = 4, digraph_vertices: int = 4) -> SuiteResult:
    """Tuple-space oracle for e_a against C(N, a), plus unrestricted digraph searches for star:2.

    The digraph search runs twice: at the given vertex cap, and with room
    for an N-armed star (N + 1 vertices).
    """
    res = SuiteResult("stars")
    for a in range(1, max_a + 1):
        for N in range(1, max_n + 1):
            best, argmax, seen = max_elementary_symmetric(N, a)
            ones = (1,) * N
            res.add(f"N={N} a={a} tuples", best == comb(N, a) and ones in argmax,
                    f"oracle {best}, C(N,a) {comb(N, a)}, {seen} tuples, all-ones attains: {ones in argmax}")
    star2 = star_pattern(2)
    for N in range(1, digraph_max_n + 1):
        for v in dict.fromkeys((digraph_vertices, N + 1)):
            if v < star2.num_vertices:
                continue
            sr = max_ct_over_digraphs(N, star2, v)
            res.add(f"N={N} star:2 digraphs on <= {v} vertices", sr.best_value == star_bound_int(N, 2),
                    f"oracle {sr.best_value}, C(N,2) {star_bound_int(N, 2)}, space {sr.search_space_size}")
    for N in range(1, max_n + 1):
        for a in range(1, max_a + 1):
            rep = bound_report("star-int", N, a)
            res.add(f"N={N} a={a} witness", rep.witness_value() == rep.value,
                    f"witness ct {rep.witness_value()}, bound {rep.value}")
    return res


def suite_supremum(max_t: int = 200, big_t: int = 10**6, weights=(Fraction(1), Fraction(5), Fraction(22, 7)),
                   arms=(1, 2, 3), rel_tol: str = "1e-4") -> SuiteResult:
    res = SuiteResult("supremum")
    for N in weights:
        for a in arms:
            sup, _ = star_sup_real(N, a)
            values = [star_finite_value(N, a, t) for t in range(a, max_t + 1)]
            monotone = all(x <= y for x, y in zip(values, values[1:]))
            below = all(x <= sup for x in values) and (a < 2 or all(x < sup for x in values))
            res.add(f"N={N} a={a} monotone t={a}..{max_t}", monotone and below,
                    f"sup {sup}, value at t={max_t}: {values[-1]}")
            with localcontext() as ctx:
                ctx.prec = 50
                big = star_finite_value(N, a, big_t)
                rel = abs(Decimal(big.numerator) / Decimal(big.denominator) / (Decimal(sup.numerator) / Decimal(sup.denominator)) - 1)
                res.add(f"N={N} a={a} t={big_t}", rel <= Decimal(rel_tol), f"relative gap {rel:.3e}")
    return res


def suite_lemma(cases=((2, 4, 4), (3, 6, 6))) -> SuiteResult:
    res = SuiteResult("lemma")
    for k, max_v, max_e in cases:
        c = classify_coverage_graphs(k, max_v, max_e)
        expected = {path_shape(k)} | {cycle_shape(m) for m in range(k + 1, 2 * k) if m <= max_v and m <= max_e}
        got = set(c.graphs)
        names = ", ".join(describe_shape(g) for g in c.graphs)
        res.add(f"k={k} caps {max_v}/{max_e}", got == expected and len(c.graphs) == len(got),
                f"found {{{names}}} among {c.candidates} connected candidates")
    return res


def suite_crosscheck(graphs: int = 500, seed: int = 42, ks=(1, 2, 3)) -> SuiteResult:
    res = SuiteResult("crosscheck")
    rng = random.Random(seed)
    for i in range(graphs):
        g = random_dag(rng)
        a = to_adjacency(g)
        for k in ks:
            by_copies = ct_E(g, path_pattern(k))
            by_matrix = mat_weight(mat_pow(a, k))
            res.add(f"graph {i} k={k}", by_copies == by_matrix and is_dag(g), f"{by_copies} vs {by_matrix}")
    return res


def suite_dedup(graphs: int = 200, seed: int = 42,
                patterns=("path:2", "path:3", "star:2", "star:3", "equistar:2:2")) -> SuiteResult:
    res = SuiteResult("dedup")
    rng = random.Random(seed)
    pats = [parse_pattern_spec(p) for p in patterns]
    for i in range(graphs):
        g = random_digraph(rng)
        for p in pats:
            homs = count_homomorphisms(g, p)
            copies = len(enumerate_copies(g, p))
            res.add(f"graph {i} {p}", homs == copies * p.automorphism_count,
                    f"{homs} homomorphisms = {copies} copies x {p.automorphism_count}")
    return res


def suite_roundtrip(count: int = 100, seed: int = 42) -> SuiteResult:
    res = SuiteResult("roundtrip")
    rng = random.Random(seed)
    for i in range(count):
        g = random_digraph(rng, max_vertices=7)
        g = g.relabeled({v: f"v{v}" for v in g.vertices})
        if rng.random() < 0.5:
            g = LabeledDigraph(g.edges, list(g.vertices) + ["iso"])
        text = format_edge_list(g)
        back = parse_edge_list(text)
        res.add(f"graph {i}", back == g and list(back.edges) == list(g.edges) and format_edge_list(back) == text)
        dim = rng.randint(1, 5)
        m = LabeledMatrix([[random_label(rng) if rng.random() < 0.6 else 0 for _ in range(dim)] for _ in range(dim)])
        mtext = format_matrix(m)
        mback = parse_matrix(mtext)
        res.add(f"matrix {i}", mback == m and format_matrix(mback) == mtext)
    return res


SUITES = {
    "paths": suite_paths,
    "compositions": suite_compositions,
    "matrix": suite_matrix,
    "merge": suite_merge,
    "stars": suite_stars,
    "supremum": suite_supremum,
    "lemma": suite_lemma,
    "crosscheck": suite_crosscheck,
    "dedup": suite_dedup,
    "roundtrip": suite_roundtrip,
}
