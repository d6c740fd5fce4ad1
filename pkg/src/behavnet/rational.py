"""Exact linear algebra over the rationals.

Matrices are plain lists of rows of :class:`fractions.Fraction`.  Only the
handful of routines the polynomial layer needs live here: reduced row echelon
form, rank, left null vectors, determinants and linear solves.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

RatMatrix = list[list[Fraction]]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def to_rational(value) -> Fraction:
    """Convert an int, Fraction or ``"num/den"`` string to a Fraction.

    Floats are refused: a rounded coefficient can silently flip a rank or
    degree decision.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match is None:
            raise ValueError(f"not an exact rational: {value!r}")
        num, den = match.groups()
        if den is not None and int(den) == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den is not None else 1)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(value: Fraction) -> str | int:
    """JSON-friendly encoding: ints stay ints, everything else is "num/den"."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def copy_matrix(m: Sequence[Sequence[Fraction]]) -> RatMatrix:
    return [list(row) for row in m]


def rref(m: Sequence[Sequence[Fraction]]) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Pivot columns are found scanning left to right, so they form the
    lexicographically smallest column basis of the column space.
    """
    a = copy_matrix(m)
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(m)[1])


def transpose(m: Sequence[Sequence[Fraction]], n_cols: int | None = None) -> RatMatrix:
    if not m:
        return [[] for _ in range(n_cols or 0)]
    return [list(col) for col in zip(*m)]


def null_space(m: Sequence[Sequence[Fraction]], n_cols: int) -> RatMatrix:
    """Basis of {x : m x = 0}, one vector per free column."""
    reduced, pivots = rref(m) if m else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def left_null_vector(m: Sequence[Sequence[Fraction]]) -> list[Fraction] | None:
    """A nonzero v with v @ m = 0, or None when m has full row rank."""
    if not m:
        return None
    basis = null_space(transpose(m), len(m))
    return basis[0] if basis else None


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = copy_matrix(m)
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def solve(m: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve m x = b for square nonsingular m."""
    n = len(m)
    aug = [list(row) + [b[i]] for i, row in enumerate(m)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [reduced[i][n] for i in range(n)]
