"""Closed-form extremal values for path and star patterns.

All values are exact: integers or :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .graph import LabeledDigraph, as_label
from .patterns import ct_E, path_pattern, star_pattern

KINDS = ("path-int", "path-real", "star-int", "star-real")


def _check_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def _check_count(N) -> int:
    if isinstance(N, Fraction):
        if N.denominator != 1:
            raise ValueError(f"N must be an integer here, got {N}")
        N = N.numerator
    if not isinstance(N, int) or N < 0:
        raise ValueError(f"N must be a nonnegative integer, got {N!r}")
    return N


def path_bound_int(N: int, k: int) -> tuple[int, tuple[int, ...]]:
    """Largest product of ``k`` nonnegative integers summing to ``N``.

    With ``N = k*q + r`` the maximum is ``(q+1)**r * q**(k-r)``, attained by
    ``r`` copies of ``q+1`` followed by ``k-r`` copies of ``q``.
    """
    N = _check_count(N)
    _check_positive("k", k)
    q, r = divmod(N, k)
    balanced = (q + 1,) * r + (q,) * (k - r)
    return (q + 1) ** r * q ** (k - r), balanced


def path_bound_real(N, k: int) -> Fraction:
    _check_positive("k", k)
    return (as_label(N) / k) ** k


def balanced_exchange_states(values: Iterable[int]) -> list[tuple[int, ...]]:
    """Every state visited by :func:`balanced_exchange`, start and end included."""
    cur = list(values)
    if any(not isinstance(x, int) or x < 0 for x in cur):
        raise ValueError("entries must be nonnegative integers")
    states = [tuple(cur)]
    while cur:
        hi = cur.index(max(cur))
        lo = cur.index(min(cur))
        if cur[hi] - cur[lo] < 2:
            break
        cur[hi] -= 1
        cur[lo] += 1
        states.append(tuple(cur))
    return states


def balanced_exchange(values: Iterable[int]) -> list[int]:
    """Move one unit from the largest entry to the smallest while they differ by 2 or more."""
    return list(balanced_exchange_states(values)[-1])


def elementary_symmetric(a: int, lambdas: Sequence) -> Fraction:
    """The ``a``-th elementary symmetric sum of ``lambdas`` (0 if ``a > len``)."""
    _check_positive("a", a)
    lams = [as_label(x) for x in lambdas]
    # e[j] after processing a prefix = e_j of that prefix
    e = [Fraction(1)] + [Fraction(0)] * a
    for lam in lams:
        for j in range(a, 0, -1):
            e[j] += lam * e[j - 1]
    return e[a]


def star_bound_int(N: int, a: int) -> int:
    N = _check_count(N)
    _check_positive("a", a)
    return comb(N, a)


def star_finite_value(N, a: int, t: int) -> Fraction:
    """``C(t, a) * (N/t)**a``: all ``t`` arms of a star labeled ``N/t``."""
    _check_positive("a", a)
    _check_positive("t", t)
    if t < a:
        raise ValueError(f"t must be at least a={a}, got {t}")
    return comb(t, a) * (as_label(N) / t) ** a


def star_sup_real(N, a: int, t: int | None = None) -> tuple[Fraction, Fraction | None]:
    """Supremum ``N**a / a!`` and, when ``t`` is given, the ``t``-arm value."""
    _check_positive("a", a)
    sup = as_label(N) ** a / factorial(a)
    return sup, (None if t is None else star_finite_value(N, a, t))


def path_graph(labels: Sequence) -> LabeledDigraph:
    """Directed path ``0 -> 1 -> ... -> len(labels)`` carrying ``labels``."""
    return LabeledDigraph([(i, i + 1, lab) for i, lab in enumerate(labels)], range(len(labels) + 1))


def star_graph(labels: Sequence) -> LabeledDigraph:
    """1-star with arm ``i+1 -> 0`` labeled ``labels[i]``."""
    return LabeledDigraph([(i + 1, 0, lab) for i, lab in enumerate(labels)], range(len(labels) + 1))


@dataclass(frozen=True)
class BoundReport:
    kind: str
    N: Fraction
    order: int  # k for paths, a for stars
    value: Fraction
    attained: bool
    witness: LabeledDigraph | None
    witness_note: str
    t: int | None = None
    finite_value: Fraction | None = None
    labels: tuple | None = None

    @property
    def order_name(self) -> str:
        return "k" if self.kind.startswith("path") else "a"

    def witness_value(self) -> Fraction | None:
        """ct of the witness graph for the matching pattern, recomputed."""
        if self.witness is None:
            return None
        pattern = path_pattern(self.order) if self.kind.startswith("path") else star_pattern(self.order)
        return ct_E(self.witness, pattern)

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "N": str(self.N),
            self.order_name: self.order,
            "value": str(self.value),
            "attained": self.attained,
            "witness": self.witness_note,
        }
        if self.labels is not None:
            out["labels"] = [str(x) for x in self.labels]
        if self.t is not None:
            out["t"] = self.t
            out["finite_value"] = str(self.finite_value)
        return out


def bound_report(kind: str, N, order: int, t: int | None = None) -> BoundReport:
    N = as_label(N)
    if kind == "path-int":
        value, labels = path_bound_int(N, order)
        return BoundReport(kind, N, order, Fraction(value), True, path_graph(labels),
                           f"{order}-path labeled " + ",".join(map(str, labels)), labels=labels)
    if kind == "path-real":
        value = path_bound_real(N, order)
        labels = (N / order,) * order
        return BoundReport(kind, N, order, value, True, path_graph(labels),
                           f"{order}-path with every label {N / order}", labels=labels)
    if kind == "star-int":
        n = _check_count(N)
        return BoundReport(kind, N, order, Fraction(star_bound_int(n, order)), True, star_graph([1] * n),
                           f"{n}-armed 1-star with every label 1")
    if kind == "star-real":
        sup, finite = star_sup_real(N, order, t)
        if order == 1 or N == 0:
            # e_1 is the total weight, so any star of weight N attains it
            return BoundReport(kind, N, order, sup, True, star_graph([N]), f"single edge labeled {N}",
                               t=t, finite_value=finite)
        note = "supremum, not attained; approached by t-armed stars with labels N/t as t grows"
        return BoundReport(kind, N, order, sup, False, None, note, t=t, finite_value=finite)
    raise ValueError(f"unknown bound kind {kind!r}; expected one of {', '.join(KINDS)}")
