"""Exact-arithmetic labeled digraphs and their adjacency matrices.

Labels are :class:`fractions.Fraction` values.  A label of zero means "no
edge", so zero labels are dropped on construction and every stored edge has a
strictly positive label.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from fractions import Fraction
from math import prod
from types import MappingProxyType
from typing import Union

Label = Fraction
Edge = tuple[Hashable, Hashable]
LabelLike = Union[Fraction, int, str]


class GraphError(ValueError):
    """Raised for malformed graphs, matrices or invalid graph arguments."""


def as_label(value: LabelLike) -> Fraction:
    """Convert ``value`` to a nonnegative exact label.

    Accepts ints, Fractions and strings of the form ``p``, ``p/q`` or a finite
    decimal literal.  Floats are refused because they are rarely the exact
    value the caller meant.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise GraphError(f"label must be exact, got {value!r}")
    if isinstance(value, str):
        try:
            out = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphError(f"cannot parse label {value!r}") from exc
    else:
        try:
            out = Fraction(value)
        except TypeError as exc:
            raise GraphError(f"cannot use {value!r} as a label") from exc
    if out < 0:
        raise GraphError(f"label must be nonnegative, got {out}")
    return out


class LabeledDigraph:
    """A simple digraph whose edges carry positive rational labels.

    ``edges`` is either a mapping ``(src, dst) -> label`` or an iterable of
    ``(src, dst, label)`` triples.  Vertices listed in ``vertices`` come first,
    followed by edge endpoints in order of first appearance.  Edge insertion
    order is kept and serves as the canonical edge order everywhere else in
    the package.

    Instances are immutable; the ``with_*``/``without_*`` helpers return new
    graphs.
    """

    __slots__ = ("_vertices", "_edges", "_edge_index")

    def __init__(self, edges: Mapping | Iterable = (), vertices: Iterable[Hashable] = ()):
        verts: dict[Hashable, None] = dict.fromkeys(vertices)
        stored: dict[Edge, Fraction] = {}
        items = edges.items() if isinstance(edges, Mapping) else edges
        seen: set[Edge] = set()
        for item in items:
            if isinstance(edges, Mapping):
                (src, dst), lab = item
            else:
                try:
                    src, dst, lab = item
                except (TypeError, ValueError) as exc:
                    raise GraphError(f"edge must be (src, dst, label), got {item!r}") from exc
            key = (src, dst)
            if key in seen:
                raise GraphError(f"duplicate edge {src!r} -> {dst!r}")
            seen.add(key)
            verts.setdefault(src, None)
            verts.setdefault(dst, None)
            lab = as_label(lab)
            if lab:
                stored[key] = lab
        self._vertices = tuple(verts)
        self._edges = stored
        self._edge_index = {e: i for i, e in enumerate(stored)}

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> Mapping[Edge, Fraction]:
        return MappingProxyType(self._edges)

    def edge_list(self) -> list[Edge]:
        return list(self._edges)

    def edge_index(self, edge: Edge) -> int:
        """Position of ``edge`` in canonical (insertion) order."""
        try:
            return self._edge_index[edge]
        except KeyError:
            raise GraphError(f"{edge!r} is not an edge") from None

    def label(self, src: Hashable, dst: Hashable) -> Fraction:
        return self._edges.get((src, dst), Fraction(0))

    def has_edge(self, src: Hashable, dst: Hashable) -> bool:
        return (src, dst) in self._edges

    def num_edges(self) -> int:
        return len(self._edges)

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return set(self._vertices) == set(other._vertices) and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((frozenset(self._vertices), frozenset(self._edges.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{u!r}->{v!r}: {lab}" for (u, v), lab in self._edges.items())
        return f"LabeledDigraph({{{body}}}, vertices={list(self._vertices)!r})"

    def successors(self) -> dict[Hashable, list[Hashable]]:
        out: dict[Hashable, list[Hashable]] = {v: [] for v in self._vertices}
        for u, v in self._edges:
            out[u].append(v)
        return out

    def predecessors(self) -> dict[Hashable, list[Hashable]]:
        out: dict[Hashable, list[Hashable]] = {v: [] for v in self._vertices}
        for u, v in self._edges:
            out[v].append(u)
        return out

    def with_label(self, edge: Edge, label: LabelLike) -> LabeledDigraph:
        """Return a copy with ``edge`` relabeled in place (order kept)."""
        if edge not in self._edges:
            raise GraphError(f"{edge!r} is not an edge")
        new = dict(self._edges)
        new[edge] = as_label(label)
        return LabeledDigraph(new, self._vertices)

    def without_edge(self, edge: Edge) -> LabeledDigraph:
        if edge not in self._edges:
            raise GraphError(f"{edge!r} is not an edge")
        new = {e: lab for e, lab in self._edges.items() if e != edge}
        return LabeledDigraph(new, self._vertices)

    def relabeled(self, mapping: Mapping[Hashable, Hashable]) -> LabeledDigraph:
        """Rename vertices through ``mapping`` (must be injective)."""
        if len(set(mapping[v] for v in self._vertices)) != len(self._vertices):
            raise GraphError("vertex renaming must be injective")
        return LabeledDigraph(
            {(mapping[u], mapping[v]): lab for (u, v), lab in self._edges.items()},
            [mapping[v] for v in self._vertices],
        )


def weight(g: LabeledDigraph) -> Fraction:
    return sum(g.edges.values(), Fraction(0))


def content(g: LabeledDigraph) -> Fraction:
    return prod(g.edges.values(), start=Fraction(1))


def exclusive_content(g: LabeledDigraph, excluded: Iterable[Edge]) -> Fraction:
    """Product of the labels of edges outside ``excluded``."""
    excluded = set(excluded)
    missing = [e for e in excluded if e not in g.edges]
    if missing:
        raise GraphError(f"not edges of the graph: {missing!r}")
    return prod((lab for e, lab in g.edges.items() if e not in excluded), start=Fraction(1))


def topological_order(g: LabeledDigraph) -> list | None:
    """Kahn's algorithm with ties broken by vertex insertion order.

    Returns ``None`` when ``g`` has a directed cycle (a self-loop counts).
    """
    indeg = {v: 0 for v in g.vertices}
    for _, v in g.edges:
        indeg[v] += 1
    succ = g.successors()
    position = {v: i for i, v in enumerate(g.vertices)}
    ready = sorted((v for v, d in indeg.items() if d == 0), key=position.__getitem__)
    order = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        fresh = []
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                fresh.append(w)
        if fresh:
            ready = sorted(ready + fresh, key=position.__getitem__)
    if len(order) != len(g.vertices):
        return None
    return order


def is_dag(g: LabeledDigraph) -> bool:
    return topological_order(g) is not None


class LabeledMatrix:
    """Square matrix of nonnegative exact rationals."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[LabelLike]]):
        data = tuple(tuple(as_label(x) for x in row) for row in rows)
        n = len(data)
        if n == 0:
            raise GraphError("matrix must have positive dimension")
        for i, row in enumerate(data):
            if len(row) != n:
                raise GraphError(f"matrix is not square: row {i} has {len(row)} entries, expected {n}")
        self._rows = data

    @classmethod
    def zeros(cls, n: int) -> LabeledMatrix:
        return cls([[0] * n for _ in range(n)])

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        inner = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"LabeledMatrix([{inner}])"

    def __matmul__(self, other: LabeledMatrix) -> LabeledMatrix:
        return mat_mul(self, other)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._rows)


def mat_mul(a: LabeledMatrix, b: LabeledMatrix) -> LabeledMatrix:
    n = a.dim
    if b.dim != n:
        raise GraphError(f"dimension mismatch: {n} vs {b.dim}")
    brows = b.rows
    out = []
    for row in a.rows:
        acc = [Fraction(0)] * n
        for l, x in enumerate(row):
            if not x:
                continue
            for j, y in enumerate(brows[l]):
                if y:
                    acc[j] += x * y
        out.append(acc)
    return LabeledMatrix(out)


def mat_pow(a: LabeledMatrix, k: int) -> LabeledMatrix:
    """Exact ``a**k`` for ``k >= 1`` by repeated squaring."""
    if not isinstance(k, int) or k < 1:
        raise GraphError(f"power must be a positive integer, got {k!r}")
    result = None
    base = a
    while True:
        if k & 1:
            result = base if result is None else mat_mul(result, base)
        k >>= 1
        if not k:
            return result
        base = mat_mul(base, base)


def mat_weight(a: LabeledMatrix) -> Fraction:
    return sum((x for row in a.rows for x in row), Fraction(0))


def to_adjacency(g: LabeledDigraph, order: Iterable[Hashable] | None = None) -> LabeledMatrix:
    """Adjacency matrix of ``g`` with rows/columns in ``order`` (default: vertex order)."""
    order = list(g.vertices if order is None else order)
    if len(set(order)) != len(order) or set(order) != set(g.vertices):
        raise GraphError("order must list every vertex exactly once")
    if not order:
        raise GraphError("graph has no vertices")
    pos = {v: i for i, v in enumerate(order)}
    rows = [[Fraction(0)] * len(order) for _ in order]
    for (u, v), lab in g.edges.items():
        rows[pos[u]][pos[v]] = lab
    return LabeledMatrix(rows)


def from_adjacency(a: LabeledMatrix, names: Iterable[Hashable] | None = None) -> LabeledDigraph:
    names = list(range(a.dim) if names is None else names)
    if len(names) != a.dim or len(set(names)) != a.dim:
        raise GraphError(f"need {a.dim} distinct vertex names")
    edges = {
        (names[i], names[j]): x
        for i, row in enumerate(a.rows)
        for j, x in enumerate(row)
        if x
    }
    return LabeledDigraph(edges, names)


def is_nilpotent(a: LabeledMatrix, cross_check: bool = False) -> bool:
    """Nilpotency of a nonnegative matrix, decided by acyclicity of its support.

    With ``cross_check`` the answer is also computed as ``a**dim == 0`` and a
    disagreement raises :class:`RuntimeError`.
    """
    verdict = is_dag(from_adjacency(a))
    if cross_check:
        by_power = mat_pow(a, a.dim).is_zero()
        if by_power != verdict:
            raise RuntimeError(f"nilpotency tests disagree on {a!r}")
    return verdict
