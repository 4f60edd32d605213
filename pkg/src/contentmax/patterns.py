"""Pattern graphs and the enumeration of their copies inside a labeled digraph.

A *copy* of a pattern ``E`` in ``g`` is a subgraph of ``g`` isomorphic to
``E``.  Copies are found as images of injective homomorphisms ``E -> g`` and
identified by their edge sets, so each subgraph is counted once no matter how
many automorphisms ``E`` has.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from pathlib import Path

from .graph import (
    Edge,
    GraphError,
    LabeledDigraph,
    is_dag,
    mat_pow,
    mat_weight,
    to_adjacency,
)


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    """A simple loop-free digraph without isolated vertices."""

    vertices: tuple
    edges: tuple[Edge, ...]
    automorphism_count: int
    name: str = ""

    def __str__(self) -> str:
        return self.name or f"edges:{list(self.edges)}"

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def as_graph(self) -> LabeledDigraph:
        return LabeledDigraph({e: 1 for e in self.edges}, self.vertices)


@dataclass(frozen=True)
class Copy:
    """One embedded subgraph; equality and hashing use ``edge_set`` only."""

    edge_set: frozenset
    vertex_map: tuple = field(compare=False)

    def mapping(self) -> dict:
        return dict(self.vertex_map)

    def content(self, g: LabeledDigraph) -> Fraction:
        return prod((g.edges[e] for e in self.edge_set), start=Fraction(1))


def _pattern_from_edges(edges: Iterable[Edge], name: str = "") -> Pattern:
    edges = list(edges)
    if not edges:
        raise PatternError("pattern must have at least one edge")
    seen = set()
    for u, v in edges:
        if u == v:
            raise PatternError(f"pattern has a loop at {u!r}")
        if (u, v) in seen:
            raise PatternError(f"pattern repeats edge {u!r} -> {v!r}")
        seen.add((u, v))
    vertices = tuple(dict.fromkeys(x for e in edges for x in e))
    skeleton = LabeledDigraph({e: 1 for e in edges}, vertices)
    auts = sum(1 for _ in _injective_maps(skeleton, vertices, tuple(edges)))
    return Pattern(vertices, tuple(edges), auts, name)


def path_pattern(k: int) -> Pattern:
    if k < 1:
        raise PatternError("path length must be >= 1")
    return _pattern_from_edges([(i, i + 1) for i in range(k)], f"path:{k}")


def star_pattern(a: int) -> Pattern:
    """The a-arm 1-star: leaves ``1..a`` each with one edge into root ``0``."""
    if a < 1:
        raise PatternError("number of arms must be >= 1")
    return _pattern_from_edges([(i, 0) for i in range(1, a + 1)], f"star:{a}")


def equistar_pattern(a: int, length: int) -> Pattern:
    """``a`` directed arms of ``length`` edges meeting only at root ``0``."""
    if a < 1 or length < 1:
        raise PatternError("arms and arm length must be >= 1")
    edges = []
    for arm in range(a):
        chain = [0] + [1 + arm * length + d for d in range(length)]
        edges.extend((chain[d + 1], chain[d]) for d in range(length))
    return _pattern_from_edges(edges, f"equistar:{a}:{length}")


def pattern_from_edges(edges: Iterable[Edge], name: str = "") -> Pattern:
    return _pattern_from_edges(edges, name)


def make_pattern(kind: str, *params) -> Pattern:
    """Build a pattern: ``path k``, ``star a``, ``equistar a l`` or ``edges [...]``."""
    builders = {"path": path_pattern, "star": star_pattern, "equistar": equistar_pattern, "edges": pattern_from_edges}
    try:
        builder = builders[kind]
    except KeyError:
        raise PatternError(f"unknown pattern kind {kind!r}") from None
    return builder(*params)


def parse_pattern_text(text: str, name: str = "") -> Pattern:
    """Edge-list text whose third column (the label) is optional and ignored."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "vertex" and len(tokens) == 2:
            raise PatternError(f"line {lineno}: patterns cannot declare isolated vertices")
        if len(tokens) not in (2, 3):
            raise PatternError(f"line {lineno}: expected `SRC DST [LABEL]`")
        edges.append((tokens[0], tokens[1]))
    return _pattern_from_edges(edges, name)


def parse_pattern_spec(spec: str) -> Pattern:
    """Parse ``path:K``, ``star:A``, ``equistar:A:L`` or ``file:PATH``."""
    kind, _, rest = spec.partition(":")
    if kind == "file":
        if not rest:
            raise PatternError("file: needs a path")
        try:
            text = Path(rest).read_text()
        except OSError as exc:
            raise PatternError(f"cannot read pattern file {rest!r}: {exc}") from None
        return parse_pattern_text(text, spec)
    if kind not in ("path", "star", "equistar"):
        raise PatternError(f"unknown pattern spec {spec!r}")
    parts = rest.split(":") if rest else []
    if len(parts) != (2 if kind == "equistar" else 1):
        raise PatternError(f"wrong number of parameters in {spec!r}")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise PatternError(f"non-integer parameter in {spec!r}") from None
    return make_pattern(kind, *nums)


def _match_order(vertices: tuple, edges: tuple[Edge, ...]) -> list:
    """Order pattern vertices so each one (after a component's first) touches an earlier one."""
    nbrs: dict[Hashable, set] = {v: set() for v in vertices}
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    order: list = []
    placed: set = set()
    remaining = list(vertices)
    while remaining:
        start = max(remaining, key=lambda v: len(nbrs[v]))
        frontier = [start]
        while frontier:
            # most links into the placed set first, degree as tie-break
            v = max(frontier, key=lambda x: (len(nbrs[x] & placed), len(nbrs[x])))
            frontier.remove(v)
            order.append(v)
            placed.add(v)
            remaining.remove(v)
            frontier.extend(w for w in nbrs[v] if w not in placed and w not in frontier)
    return order


def _injective_maps(g: LabeledDigraph, vertices: tuple, edges: tuple[Edge, ...]) -> Iterator[dict]:
    order = _match_order(vertices, edges)
    pos = {v: i for i, v in enumerate(order)}
    plan = []
    for i, p in enumerate(order):
        outs = [q for (a, q) in edges if a == p and pos[q] < i]
        ins = [q for (q, b) in edges if b == p and pos[q] < i]
        plan.append((p, outs, ins))

    position = {v: i for i, v in enumerate(g.vertices)}
    succ = {v: sorted(ws, key=position.__getitem__) for v, ws in g.successors().items()}
    pred = {v: sorted(ws, key=position.__getitem__) for v, ws in g.predecessors().items()}
    succ_sets = {v: set(ws) for v, ws in succ.items()}
    all_vertices = g.vertices
    assign: dict = {}
    used: set = set()

    def extend(i: int) -> Iterator[dict]:
        if i == len(plan):
            yield dict(assign)
            return
        p, outs, ins = plan[i]
        if ins:
            candidates = succ[assign[ins[0]]]
        elif outs:
            candidates = pred[assign[outs[0]]]
        else:
            candidates = all_vertices
        for x in candidates:
            if x in used:
                continue
            if any(assign[q] not in succ_sets[x] for q in outs):
                continue
            if any(x not in succ_sets[assign[q]] for q in ins):
                continue
            assign[p] = x
            used.add(x)
            yield from extend(i + 1)
            used.discard(x)
            del assign[p]

    yield from extend(0)


def injective_homomorphisms(g: LabeledDigraph, pattern: Pattern) -> Iterator[dict]:
    """Yield every injective vertex map carrying pattern edges onto edges of ``g``."""
    return _injective_maps(g, pattern.vertices, pattern.edges)


def count_homomorphisms(g: LabeledDigraph, pattern: Pattern) -> int:
    return sum(1 for _ in injective_homomorphisms(g, pattern))


def _copy_key(g: LabeledDigraph, edge_set: Iterable[Edge]) -> tuple[int, ...]:
    return tuple(sorted(g.edge_index(e) for e in edge_set))


def enumerate_copies(g: LabeledDigraph, pattern: Pattern) -> list[Copy]:
    """All copies of ``pattern`` in ``g``, sorted by their edge-index keys."""
    found: dict[frozenset, tuple] = {}
    for phi in injective_homomorphisms(g, pattern):
        edge_set = frozenset((phi[u], phi[v]) for u, v in pattern.edges)
        if edge_set not in found:
            found[edge_set] = tuple((p, phi[p]) for p in pattern.vertices)
    copies = [Copy(es, vm) for es, vm in found.items()]
    copies.sort(key=lambda c: _copy_key(g, c.edge_set))
    return copies


def ct_E(g: LabeledDigraph, pattern: Pattern) -> Fraction:
    """Sum over copies of ``pattern`` of the product of their edge labels."""
    return sum((c.content(g) for c in enumerate_copies(g, pattern)), Fraction(0))


def path_ct_via_matrix(g: LabeledDigraph, k: int) -> Fraction:
    """Weight of ``A**k`` for the adjacency matrix ``A`` of a DAG ``g``.

    Outside DAGs walks revisit vertices and would overcount paths, so cyclic
    input is rejected.
    """
    if not is_dag(g):
        raise GraphError("path_ct_via_matrix needs a DAG")
    if not g.vertices:
        return Fraction(0)
    return mat_weight(mat_pow(to_adjacency(g), k))


class CopyIndex:
    """Copies of a pattern in a fixed graph plus per-edge incidence sets."""

    def __init__(self, g: LabeledDigraph, pattern: Pattern):
        self.graph = g
        self.pattern = pattern
        self.copies = enumerate_copies(g, pattern)
        self.incidence: dict[Edge, set[int]] = {e: set() for e in g.edges}
        for i, c in enumerate(self.copies):
            for e in c.edge_set:
                self.incidence[e].add(i)

    def ct(self) -> Fraction:
        return sum((c.content(self.graph) for c in self.copies), Fraction(0))

    def sigma(self, e: Edge) -> Fraction:
        if e not in self.incidence:
            raise GraphError(f"{e!r} is not an edge")
        labels = self.graph.edges
        total = Fraction(0)
        for i in self.incidence[e]:
            total += prod((labels[x] for x in self.copies[i].edge_set if x != e), start=Fraction(1))
        return total

    def share_copy(self, e: Edge, f: Edge) -> bool:
        return not self.incidence[e].isdisjoint(self.incidence[f])

    def first_uncovered(self, inclusive: bool) -> tuple[Edge, Edge] | None:
        """Lexicographically first pair (by edge order) lying on no common copy."""
        edges = self.graph.edge_list()
        for i, e in enumerate(edges):
            for f in edges[i if inclusive else i + 1:]:
                if not self.share_copy(e, f):
                    return (e, f)
        return None


@dataclass(frozen=True)
class Coverage:
    holds: bool
    witness: tuple[Edge, Edge] | None = None

    def __bool__(self) -> bool:
        return self.holds


def satisfies_coverage(g: LabeledDigraph, pattern: Pattern) -> Coverage:
    """Check that every two edges, an edge with itself included, share a copy.

    On failure the witness is the first offending pair; ``(e, e)`` means ``e``
    lies on no copy at all.
    """
    pair = CopyIndex(g, pattern).first_uncovered(inclusive=True)
    return Coverage(pair is None, pair)
