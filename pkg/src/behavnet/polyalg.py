"""Univariate polynomials and polynomial matrices over the rationals.

Everything is exact.  A :class:`Poly` stores its coefficients constant term
first; a :class:`PolyMatrix` stores its entries row-major.  Both are treated
as immutable values.

The structural computations (determinant, normal rank, maximal minor degree,
row-proper reduction) are the building blocks for every invariant computed
by the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import rational
from .rational import to_rational

MINUS_INF = float("-inf")
"""Degree of the zero polynomial; compares below every integer."""

# below this size determinants use cofactor expansion
COFACTOR_LIMIT = 4

_ZERO = Fraction(0)


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit the requested operation."""


class Poly:
    """A polynomial in ``s`` with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _trusted(cls, coeffs: list[Fraction]) -> "Poly":
        # coefficients already Fractions; only trailing zeros need stripping
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (list, tuple)):
            return cls(value)
        return cls.const(value)

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def lc(self) -> Fraction:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly._trusted([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._trusted(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return ZERO
            return Poly._trusted([c * other for c in self.coeffs])
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly._trusted(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Poly":
        """Multiply by ``s**k``."""
        if not self.coeffs:
            return self
        return Poly._trusted([_ZERO] * k + list(self.coeffs))

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = 1 / other.coeffs[-1]
        if len(rem) - 1 < db:
            return ZERO, self
        quo = [_ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lc
            quo[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return Poly._trusted(quo), Poly._trusted(rem[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        quo, rem = divmod(self, other)
        if rem:
            raise ArithmeticError(f"{other} does not divide {self}")
        return quo

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> list:
        return [rational.format_rational(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"Poly({self.to_json()!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "s" if k == 1 else f"s^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.const(value)


ZERO = Poly()
ONE = Poly((1,))
S = Poly((0, 1))


def degree(p: Poly) -> int | float:
    """Degree of ``p``; :data:`MINUS_INF` for the zero polynomial."""
    return p.degree


@dataclass(frozen=True, eq=False)
class PolyMatrix:
    """Dense ``rows x cols`` matrix of :class:`Poly`, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Poly, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "PolyMatrix":
        """Build from nested rows; each entry is a Poly, a scalar or a coefficient list."""
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = []
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
            entries.extend(Poly.coerce(x) for x in r)
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Poly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Poly, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_lists(self) -> list[list[Poly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "PolyMatrix":
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return PolyMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_rows([list(self.col(j)) for j in range(self.cols)], self.rows)

    def vstack(self, *others: "PolyMatrix") -> "PolyMatrix":
        return vstack([self, *others], cols=self.cols)

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return PolyMatrix.from_rows(
            [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
            self.cols + other.cols,
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matmul(self, other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return PolyMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale_rows(self, factors: Sequence) -> "PolyMatrix":
        return PolyMatrix.from_rows(
            [[x * f for x in self.row(i)] for i, f in enumerate(factors)], self.cols
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def row_is_zero(self, i: int) -> bool:
        return not any(self.row(i))

    def row_degree(self, i: int) -> int | float:
        return max((p.degree for p in self.row(i)), default=MINUS_INF)

    def row_degrees(self) -> list[int | float]:
        return [self.row_degree(i) for i in range(self.rows)]

    @property
    def degree(self) -> int | float:
        return max((p.degree for p in self.entries), default=MINUS_INF)

    def to_json(self) -> list[list[list]]:
        return [[p.to_json() for p in self.row(i)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols}, {self.to_json()!r})"

    def __str__(self) -> str:
        cells = [[str(p) for p in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def vstack(blocks: Sequence[PolyMatrix], cols: int | None = None) -> PolyMatrix:
    if cols is None:
        if not blocks:
            raise DimensionError("cannot infer width of an empty stack")
        cols = blocks[0].cols
    entries: list[Poly] = []
    n = 0
    for b in blocks:
        if b.cols != cols:
            raise DimensionError("vstack needs equal column counts")
        entries.extend(b.entries)
        n += b.rows
    return PolyMatrix(n, cols, tuple(entries))


@dataclass(frozen=True)
class UnimodularCert:
    """A unimodular matrix together with its polynomial inverse."""

    u: PolyMatrix
    u_inv: PolyMatrix

    def check(self) -> bool:
        n = self.u.rows
        return (self.u @ self.u_inv) == PolyMatrix.identity(n)


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    b_cols = [b.col(j) for j in range(b.cols)]
    for i in range(a.rows):
        ra = a.row(i)
        for cb in b_cols:
            acc = ZERO
            for x, y in zip(ra, cb):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
    return PolyMatrix(a.rows, b.cols, tuple(out))


def _square_lists(m: PolyMatrix) -> list[list[Poly]]:
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    return m.to_lists()


def _cofactor_det(a: list[list[Poly]]) -> Poly:
    n = len(a)
    if n == 0:
        return ONE
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = ZERO
    for j in range(n):
        if a[0][j]:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            term = a[0][j] * _cofactor_det(minor)
            total = total - term if j % 2 else total + term
    return total


def _bareiss_det(a: list[list[Poly]]) -> Poly:
    n = len(a)
    if n == 0:
        return ONE
    a = [row[:] for row in a]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - aik * a[k][j]).exact_div(prev)
        prev = pivot
    return a[n - 1][n - 1] * sign


def cofactor_determinant(m: PolyMatrix) -> Poly:
    """Determinant by Laplace expansion along the first row."""
    return _cofactor_det(_square_lists(m))


def bareiss_determinant(m: PolyMatrix) -> Poly:
    """Determinant by fraction-free elimination over Q[s]."""
    return _bareiss_det(_square_lists(m))


def determinant(m: PolyMatrix) -> Poly:
    a = _square_lists(m)
    if len(a) < COFACTOR_LIMIT:
        return _cofactor_det(a)
    return _bareiss_det(a)


def normal_rank(m: PolyMatrix) -> int:
    """Rank over Q(s), by fraction-free elimination with full pivoting."""
    a = m.to_lists()
    n_rows, n_cols = m.rows, m.cols
    prev = ONE
    rank = 0
    for k in range(min(n_rows, n_cols)):
        pivot_at = None
        for i in range(k, n_rows):
            for j in range(k, n_cols):
                if a[i][j]:
                    pivot_at = (i, j)
                    break
            if pivot_at:
                break
        if pivot_at is None:
            break
        pi, pj = pivot_at
        a[k], a[pi] = a[pi], a[k]
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
        pivot = a[k][k]
        for i in range(k + 1, n_rows):
            aik = a[i][k]
            for j in range(k + 1, n_cols):
                a[i][j] = (pivot * a[i][j] - aik * a[k][j]).exact_div(prev)
        prev = pivot
        rank += 1
    return rank


def minors(m: PolyMatrix, order: int):
    """Yield ``(row_subset, col_subset, minor)`` for every order x order minor."""
    if not 0 <= order <= min(m.rows, m.cols):
        raise DimensionError(f"minor order {order} out of range for {m.rows}x{m.cols}")
    for rs in combinations(range(m.rows), order):
        for cs in combinations(range(m.cols), order):
            yield rs, cs, determinant(m.submatrix(rs, cs))


def max_minor_degree(m: PolyMatrix, order: int) -> int | float:
    """Largest degree among all ``order x order`` minors (exhaustive)."""
    return max((d.degree for _, _, d in minors(m, order)), default=MINUS_INF)


def leading_row_coeff(m: PolyMatrix) -> list[list[Fraction]]:
    """Coefficient of ``s**d_i`` in row ``i`` where ``d_i`` is that row's degree."""
    out = []
    for i in range(m.rows):
        d = m.row_degree(i)
        if d == MINUS_INF:
            raise ValueError(f"row {i} is zero; leading row coefficients undefined")
        out.append([p.coeff(d) for p in m.row(i)])
    return out


def is_row_proper(m: PolyMatrix) -> bool:
    """True when the nonzero rows have a full-row-rank leading coefficient matrix."""
    nz = [i for i in range(m.rows) if not m.row_is_zero(i)]
    if not nz:
        return True
    lrc = leading_row_coeff(m.submatrix(nz))
    return rational.rank(lrc) == len(nz)


def row_reduce(m: PolyMatrix) -> tuple[PolyMatrix, UnimodularCert]:
    """Bring ``m`` to row-proper form by unimodular row operations.

    Returns ``(reduced, cert)`` with ``reduced == cert.u @ m``.  While the
    leading coefficient matrix of the nonzero rows is rank deficient, a
    rational left null vector is used to cancel the top coefficient of a
    highest-degree participating row; the total row degree drops each pass.
    """
    n = m.rows
    rows = m.to_lists()
    u = PolyMatrix.identity(n).to_lists()
    u_inv = PolyMatrix.identity(n).to_lists()

    def row_deg(r):
        return max((p.degree for p in r), default=MINUS_INF)

    while True:
        nz = [i for i in range(n) if any(rows[i])]
        if not nz:
            break
        degs = {i: row_deg(rows[i]) for i in nz}
        lrc = [[p.coeff(degs[i]) for p in rows[i]] for i in nz]
        v = rational.left_null_vector(lrc)
        if v is None:
            break
        weights = {i: c for i, c in zip(nz, v) if c != 0}
        top = max(degs[i] for i in weights)
        k = min(i for i in weights if degs[i] == top)
        mults = {i: Poly.monomial(top - degs[i], c / weights[k]) for i, c in weights.items() if i != k}
        for i, c in mults.items():
            rows[k] = [x + c * y for x, y in zip(rows[k], rows[i])]
            u[k] = [x + c * y for x, y in zip(u[k], u[i])]
            for row in u_inv:
                row[i] = row[i] - c * row[k]

    reduced = PolyMatrix.from_rows(rows, m.cols)
    cert = UnimodularCert(PolyMatrix.from_rows(u, n), PolyMatrix.from_rows(u_inv, n))
    return reduced, cert


def sparsity(m: PolyMatrix) -> list[list[int]]:
    """Binary pattern: 1 where the entry is a nonzero polynomial."""
    return [[1 if p else 0 for p in m.row(i)] for i in range(m.rows)]


def sum_row_degrees(m: PolyMatrix) -> int:
    """Sum of the degrees of the nonzero rows."""
    return sum(d for d in m.row_degrees() if d != MINUS_INF)

