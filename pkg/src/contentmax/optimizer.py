"""Label-merge improvement of a labeled digraph for a fixed pattern.

If two edges ``e`` and ``f`` lie on no common copy of the pattern, deleting
``f`` and adding its label onto ``e`` changes the copy-content sum by exactly
``label(f) * (sigma(e) - sigma(f))``, where ``sigma(x)`` sums the contents of
the copies through ``x`` with ``x`` itself left out.  Orienting the pair so
that ``sigma(e) >= sigma(f)`` therefore never loses value, keeps the total
weight, and removes one edge.  Iterating until every two distinct edges share
a copy gives :func:`optimize`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Edge, GraphError, LabeledDigraph, weight
from .io import format_rational
from .patterns import CopyIndex, Pattern


class MergeError(ValueError):
    """A merge was requested that the procedure does not allow."""


@dataclass(frozen=True)
class MergeStep:
    survivor: Edge
    removed: Edge
    removed_label: Fraction
    sigma_survivor: Fraction
    sigma_removed: Fraction
    ct_before: Fraction
    ct_after: Fraction

    @property
    def predicted_delta(self) -> Fraction:
        return self.removed_label * (self.sigma_survivor - self.sigma_removed)

    def line(self) -> str:
        (fs, fd), (es, ed) = self.removed, self.survivor
        r = format_rational
        return (
            f"merge {fs} {fd} ({r(self.removed_label)}) -> {es} {ed} | "
            f"{r(self.sigma_survivor)} {r(self.sigma_removed)} | "
            f"{r(self.ct_before)} -> {r(self.ct_after)}"
        )


@dataclass
class MergeTrace:
    steps: list[MergeStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def lines(self) -> list[str]:
        return [s.line() for s in self.steps]


@dataclass(frozen=True)
class OptimizeResult:
    graph: LabeledDigraph
    trace: MergeTrace
    ct_before: Fraction
    ct_after: Fraction
    covered: bool  # inclusive coverage (every edge also on some copy)


def sigma(g: LabeledDigraph, pattern: Pattern, e: Edge) -> Fraction:
    """Sum over copies through ``e`` of their ``e``-exclusive content."""
    if e not in g.edges:
        raise GraphError(f"{e!r} is not an edge")
    return CopyIndex(g, pattern).sigma(e)


def find_uncovered_pair(g: LabeledDigraph, pattern: Pattern) -> tuple[Edge, Edge] | None:
    return CopyIndex(g, pattern).first_uncovered(inclusive=False)


def _merge(g: LabeledDigraph, index: CopyIndex, e: Edge, f: Edge):
    if e == f:
        raise MergeError("cannot merge an edge into itself")
    for x in (e, f):
        if x not in g.edges:
            raise MergeError(f"{x!r} is not an edge")
    if index.share_copy(e, f):
        raise MergeError(f"{e!r} and {f!r} lie on a common copy")
    sigma_e, sigma_f = index.sigma(e), index.sigma(f)
    if sigma_e < sigma_f:
        raise MergeError(f"survivor sigma {sigma_e} is below removed sigma {sigma_f}")

    label_f = g.edges[f]
    merged = g.with_label(e, g.edges[e] + label_f).without_edge(f)
    new_index = CopyIndex(merged, index.pattern)
    step = MergeStep(e, f, label_f, sigma_e, sigma_f, index.ct(), new_index.ct())

    if step.ct_after - step.ct_before != step.predicted_delta:
        raise RuntimeError(f"increment identity failed at {step.line()}")
    if weight(merged) != weight(g):
        raise RuntimeError("merge changed the total weight")
    return merged, new_index, step


def merge_step(g: LabeledDigraph, pattern: Pattern, e: Edge, f: Edge) -> tuple[LabeledDigraph, MergeStep]:
    """Delete ``f`` and add its label onto ``e``.

    The caller orients the pair (``sigma(e) >= sigma(f)``); the pair must not
    share a copy.  The returned step's ``ct_after`` is recomputed from scratch
    and checked against the predicted increment.
    """
    merged, _, step = _merge(g, CopyIndex(g, pattern), e, f)
    return merged, step


def optimize(g: LabeledDigraph, pattern: Pattern) -> OptimizeResult:
    """Merge uncovered pairs until every two distinct edges share a copy.

    Pairs are taken in canonical order; the edge with the larger sigma
    survives and ties keep the earlier edge.
    """
    index = CopyIndex(g, pattern)
    start_ct = index.ct()
    trace = MergeTrace()
    current = g
    while True:
        pair = index.first_uncovered(inclusive=False)
        if pair is None:
            break
        e, f = pair
        if index.sigma(f) > index.sigma(e):
            e, f = f, e
        current, index, step = _merge(current, index, e, f)
        trace.steps.append(step)
    covered = index.first_uncovered(inclusive=True) is None
    return OptimizeResult(current, trace, start_ct, index.ct(), covered)
