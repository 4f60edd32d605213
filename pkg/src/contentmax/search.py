"""Brute-force oracles.

Everything here is exhaustive over a small, explicitly described space, so
the results can be compared against the closed forms in :mod:`bounds` and
the output of :mod:`optimizer`.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import prod

from .bounds import elementary_symmetric, path_bound_real
from .graph import LabeledDigraph, LabeledMatrix, as_label, mat_pow, mat_weight
from .patterns import CopyIndex, Pattern, ct_E, enumerate_copies, path_pattern


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ``parts``-tuples of positive integers summing to ``total``."""
    if parts < 1 or total < parts:
        return
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered ``parts``-tuples of nonnegative integers summing to ``total``."""
    for c in compositions(total + parts, parts):
        yield tuple(x - 1 for x in c)


def forward_cells(v: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(v) for j in range(i + 1, v)]


def offdiagonal_cells(v: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(v) for j in range(v) if i != j]


def _labeled(support: Sequence, labels: Sequence, v: int) -> LabeledDigraph:
    return LabeledDigraph([(u, w, lab) for (u, w), lab in zip(support, labels)], range(v))


def _weighted_graphs(N: int, v: int, cells: Sequence) -> Iterator[LabeledDigraph]:
    for size in range(1, min(N, len(cells)) + 1):
        for support in combinations(cells, size):
            for labels in compositions(N, size):
                yield _labeled(support, labels, v)


def enumerate_weighted_dags(N: int, v: int) -> Iterator[LabeledDigraph]:
    """Integer-labeled DAGs of weight ``N`` on vertices ``0..v-1`` with only forward edges.

    Any DAG on at most ``v`` vertices is isomorphic to one of these (number
    its vertices in topological order).
    """
    if N < 1 or v < 2:
        raise ValueError("need N >= 1 and v >= 2")
    return _weighted_graphs(N, v, forward_cells(v))


def enumerate_weighted_digraphs(N: int, v: int) -> Iterator[LabeledDigraph]:
    """Loop-free integer-labeled digraphs of weight ``N`` on ``0..v-1``, cycles allowed."""
    if N < 1 or v < 2:
        raise ValueError("need N >= 1 and v >= 2")
    return _weighted_graphs(N, v, offdiagonal_cells(v))


def _refined_classes(vertices: Sequence, signature) -> list[list]:
    sigs = {x: signature(x) for x in vertices}
    ordered = sorted(vertices, key=lambda x: sigs[x])
    classes: list[list] = []
    for x in ordered:
        if classes and sigs[classes[-1][0]] == sigs[x]:
            classes[-1].append(x)
        else:
            classes.append([x])
    return classes


def _canonical_items(edges: dict) -> tuple:
    """Minimal sorted ``(u, v, label)`` tuple over relabelings onto ``0..n-1``.

    Vertices are first split by a relabeling-invariant signature and only
    permuted inside a class, which leaves the minimum unchanged.
    """
    touched = list(dict.fromkeys(x for e in edges for x in e))
    outs: dict = {x: [] for x in touched}
    ins: dict = {x: [] for x in touched}
    for (u, v), lab in edges.items():
        outs[u].append(lab)
        ins[v].append(lab)

    def signature(x):
        return (len(outs[x]), len(ins[x]), sorted(outs[x]), sorted(ins[x]))

    classes = _refined_classes(touched, signature)
    best = None
    for choice in product(*(permutations(c) for c in classes)):
        names = {}
        for block in choice:
            for x in block:
                names[x] = len(names)
        key = tuple(sorted((names[u], names[v], lab) for (u, v), lab in edges.items()))
        if best is None or key < best:
            best = key
    return best or ()


def canonical_labeled(g: LabeledDigraph) -> LabeledDigraph:
    """Isomorphism-invariant form of ``g`` with isolated vertices dropped."""
    items = _canonical_items(dict(g.edges))
    n = 1 + max((max(u, v) for u, v, _ in items), default=-1)
    return LabeledDigraph([(u, v, lab) for u, v, lab in items], range(n))


def canonical_form(edges: Iterable[tuple]) -> tuple[tuple[int, int], ...]:
    """Canonical edge tuple of an unlabeled digraph (isolated vertices ignored)."""
    items = _canonical_items({e: 1 for e in edges})
    return tuple((u, v) for u, v, _ in items)


@dataclass
class SearchResult:
    best_value: Fraction
    maximizers: list[LabeledDigraph]
    search_space_size: int
    parameters: dict = field(default_factory=dict)


def _scan_supports(N: int, v: int, pattern: Pattern, supports: list[tuple]) -> tuple[int, list, int]:
    best = 0
    winners: list = []
    seen = 0
    for support in supports:
        skeleton = LabeledDigraph({e: 1 for e in support}, range(v))
        position = {e: i for i, e in enumerate(support)}
        copies = [tuple(position[e] for e in c.edge_set) for c in enumerate_copies(skeleton, pattern)]
        for labels in compositions(N, len(support)):
            seen += 1
            value = sum(prod(labels[i] for i in c) for c in copies)
            if value > best:
                best, winners = value, [(support, labels)]
            elif value == best:
                winners.append((support, labels))
    return best, winners, seen


def _max_ct(N: int, pattern: Pattern, v: int, cells: list, space: str, workers: int) -> SearchResult:
    if v < pattern.num_vertices:
        raise ValueError(f"v={v} cannot host a pattern with {pattern.num_vertices} vertices")
    supports = [s for size in range(1, min(N, len(cells)) + 1) for s in combinations(cells, size)]
    if workers > 1 and len(supports) > 1:
        chunks = [supports[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_supports, [N] * workers, [v] * workers, [pattern] * workers, chunks))
    else:
        parts = [_scan_supports(N, v, pattern, supports)]
    best = max(p[0] for p in parts)
    winners = [w for p in parts if p[0] == best for w in p[1]]
    size = sum(p[2] for p in parts)

    found: dict = {}
    for support, labels in winners:
        g = canonical_labeled(_labeled(support, labels, v))
        found.setdefault(g, None)
    maximizers = sorted(found, key=lambda g: sorted((u, v, lab) for (u, v), lab in g.edges.items()))
    for g in maximizers:
        if ct_E(g, pattern) != best:
            raise RuntimeError(f"maximizer {g!r} does not reproduce value {best}")
    params = {"N": N, "pattern": str(pattern), "max_vertices": v, "space": space}
    return SearchResult(Fraction(best), maximizers, size, params)


def max_ct_over_dags(N: int, pattern: Pattern, v: int | None = None, workers: int = 1) -> SearchResult:
    """Exact maximum of ct_E over integer-labeled DAGs of weight ``N`` on ``<= v`` vertices."""
    v = pattern.num_vertices + 2 if v is None else v
    return _max_ct(N, pattern, v, forward_cells(v), "forward-edge DAGs (topological normal form)", workers)


def max_ct_over_digraphs(N: int, pattern: Pattern, v: int, workers: int = 1) -> SearchResult:
    """Same as :func:`max_ct_over_dags` but over all loop-free digraphs, cycles included."""
    return _max_ct(N, pattern, v, offdiagonal_cells(v), "all loop-free digraphs", workers)


def max_product_composition(N: int, k: int) -> tuple[int, list[tuple[int, ...]]]:
    best = -1
    argmax: list[tuple[int, ...]] = []
    for c in weak_compositions(N, k):
        p = prod(c)
        if p > best:
            best, argmax = p, [c]
        elif p == best:
            argmax.append(c)
    return best, argmax


def max_elementary_symmetric(N: int, a: int) -> tuple[Fraction, list[tuple[int, ...]], int]:
    """Maximize ``e_a`` over positive integer tuples of any length summing to ``N``.

    Returns ``(best, argmax tuples, number of tuples examined)``.
    """
    best = Fraction(-1)
    argmax: list[tuple[int, ...]] = []
    seen = 0
    for t in range(1, N + 1):
        for lams in compositions(N, t):
            seen += 1
            val = elementary_symmetric(a, lams)
            if val > best:
                best, argmax = val, [lams]
            elif val == best:
                argmax.append(lams)
    return max(best, Fraction(0)), argmax, seen


def random_upper_triangular(rng: random.Random, dim: int, N) -> LabeledMatrix:
    """Strictly upper-triangular matrix, entries uniform in [1, 1000], rescaled to weight ``N``."""
    raw = [[rng.randint(1, 1000) if j > i else 0 for j in range(dim)] for i in range(dim)]
    total = sum(map(sum, raw))
    scale = as_label(N) / total
    return LabeledMatrix([[x * scale for x in row] for row in raw])


def path_matrix(k: int, entry) -> LabeledMatrix:
    """``(k+1)``-dimensional matrix of a k-path with every label ``entry``."""
    entry = as_label(entry)
    return LabeledMatrix([[entry if j == i + 1 else 0 for j in range(k + 1)] for i in range(k + 1)])


@dataclass(frozen=True)
class NilpotentBoundReport:
    N: Fraction
    k: int
    dim: int
    trials: int
    seed: int
    bound: Fraction
    violations: int
    max_ratio: Fraction | None
    witness_value: Fraction

    @property
    def witness_ok(self) -> bool:
        return self.witness_value == self.bound

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.witness_ok


def check_nilpotent_bound(N, k: int, dim: int, trials: int = 1000, seed: int = 0) -> NilpotentBoundReport:
    """Sample nilpotent matrices of weight ``N`` and compare ``|A^k|`` with ``(N/k)^k``."""
    if dim < 2:
        raise ValueError("dim must be >= 2")
    N = as_label(N)
    bound = path_bound_real(N, k)
    violations = 0
    max_ratio = None
    for trial in range(trials):
        rng = random.Random(f"{seed}/{k}/{dim}/{N}/{trial}")
        a = random_upper_triangular(rng, dim, N)
        value = mat_weight(mat_pow(a, k))
        if value > bound:
            violations += 1
        if bound:
            ratio = value / bound
            max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)
    witness = mat_weight(mat_pow(path_matrix(k, N / k), k))
    return NilpotentBoundReport(N, k, dim, trials, seed, bound, violations, max_ratio, witness)


def connected_digraphs(max_vertices: int, max_edges: int) -> list[tuple[tuple[int, int], ...]]:
    """Canonical forms of weakly connected loop-free digraphs within the caps.

    Grown one edge at a time: every such graph with two or more edges loses an
    edge (a non-tree edge or a spanning-tree leaf edge) and stays connected.
    """
    if max_vertices < 2 or max_edges < 1:
        return []
    level = {canonical_form([(0, 1)])}
    found = sorted(level)
    for _ in range(max_edges - 1):
        nxt = set()
        for g in level:
            n = 1 + max(max(e) for e in g)
            present = set(g)
            extra = [(u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in present]
            if n < max_vertices:
                extra += [(u, n) for u in range(n)] + [(n, u) for u in range(n)]
            for e in extra:
                nxt.add(canonical_form(g + (e,)))
        level = nxt
        found.extend(sorted(level))
    return found


def path_shape(k: int) -> tuple[tuple[int, int], ...]:
    return canonical_form([(i, i + 1) for i in range(k)])


def cycle_shape(m: int) -> tuple[tuple[int, int], ...]:
    return canonical_form([(i, (i + 1) % m) for i in range(m)])


def describe_shape(edges: tuple[tuple[int, int], ...]) -> str:
    m = len(edges)
    if edges == path_shape(m):
        return f"P{m}"
    if edges == cycle_shape(m):
        return f"C{m}"
    return "edges:" + ",".join(f"{u}>{v}" for u, v in edges)


@dataclass
class Classification:
    k: int
    max_vertices: int
    max_edges: int
    candidates: int
    graphs: list[tuple[tuple[int, int], ...]]

    def names(self) -> list[str]:
        return [describe_shape(g) for g in self.graphs]


def classify_coverage_graphs(k: int, max_vertices: int, max_edges: int) -> Classification:
    """Digraphs within the caps in which every two edges lie on a common k-path.

    The empty graph is skipped (it satisfies the property vacuously) and so
    are disconnected graphs, since a path cannot contain edges from two
    different components.
    """
    if k < 2:
        raise ValueError("classification is defined for k >= 2")
    pattern = path_pattern(k)
    candidates = connected_digraphs(max_vertices, max_edges)
    survivors = []
    for edges in candidates:
        g = LabeledDigraph({e: 1 for e in edges})
        if CopyIndex(g, pattern).first_uncovered(inclusive=True) is None:
            survivors.append(edges)
    return Classification(k, max_vertices, max_edges, len(candidates), survivors)
