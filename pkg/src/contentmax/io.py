"""Edge-list and matrix text formats.

Edge list::

    # comment
    a b 2
    b c 1/3
    vertex z

Matrix: a first line ``n`` followed by ``n`` rows of ``n`` rationals.
Rationals are written ``p``, ``p/q`` or as finite decimals and are always
emitted in lowest terms.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .graph import GraphError, LabeledDigraph, LabeledMatrix, as_label


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_edge_list(text: str) -> LabeledDigraph:
    vertices: list[str] = []
    triples: list[tuple[str, str, Fraction]] = []
    seen: set[tuple[str, str]] = set()
    for lineno, tokens in _content_lines(text):
        if tokens[0] == "vertex" and len(tokens) == 2:
            vertices.append(tokens[1])
            continue
        if len(tokens) != 3:
            raise ParseError(f"expected `SRC DST LABEL`, got {len(tokens)} fields", lineno)
        src, dst, raw = tokens
        try:
            lab = as_label(raw)
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
        if (src, dst) in seen:
            raise ParseError(f"duplicate edge {src} -> {dst}", lineno)
        seen.add((src, dst))
        vertices.extend((src, dst))
        triples.append((src, dst, lab))
    return LabeledDigraph(triples, vertices)


def format_edge_list(g: LabeledDigraph) -> str:
    """Serialize ``g``; isolated vertices are declared with ``vertex`` lines."""
    lines = [f"{u} {v} {format_rational(lab)}" for (u, v), lab in g.edges.items()]
    touched = {x for e in g.edges for x in e}
    lines.extend(f"vertex {v}" for v in g.vertices if v not in touched)
    return "\n".join(lines) + ("\n" if lines else "")


def parse_matrix(text: str) -> LabeledMatrix:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty matrix file")
    lineno, header = rows[0]
    if len(header) != 1 or not header[0].isdigit() or int(header[0]) < 1:
        raise ParseError("first line must be the dimension n >= 1", lineno)
    n = int(header[0])
    body = rows[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} matrix rows, found {len(body)}", body[-1][0] if body else lineno)
    data = []
    for lineno, tokens in body:
        if len(tokens) != n:
            raise ParseError(f"matrix is not square: expected {n} entries, got {len(tokens)}", lineno)
        try:
            data.append([as_label(t) for t in tokens])
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
    return LabeledMatrix(data)


def format_matrix(a: LabeledMatrix) -> str:
    lines = [str(a.dim)]
    lines.extend(" ".join(format_rational(x) for x in row) for row in a.rows)
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> LabeledDigraph:
    return parse_edge_list(Path(path).read_text())


def read_matrix(path: str | Path) -> LabeledMatrix:
    return parse_matrix(Path(path).read_text())
