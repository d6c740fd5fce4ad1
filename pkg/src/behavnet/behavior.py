"""Linear time-invariant systems given by kernel representations.

A system is ``R(sigma) w = 0`` where the signal ``w`` is split into named
blocks.  Structural invariants are read off exactly from ``R``:

* output cardinality ``p`` is the normal rank of ``R``;
* McMillan degree ``n`` is the largest degree of the ``p x p`` minors of a
  minimal (full row rank) representation;
* a block is unconstrained when its columns of ``R`` vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import rational
from .polyalg import (
    MINUS_INF,
    ONE,
    Poly,
    PolyMatrix,
    determinant,
    leading_row_coeff,
    max_minor_degree,
    normal_rank,
    row_reduce,
    sum_row_degrees,
)


class SignalSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class SignalSpace:
    """Ordered named blocks ``(name, dim)``; ``q`` is the total dimension."""

    blocks: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple((str(n), int(d)) for n, d in self.blocks))
        names = [n for n, _ in self.blocks]
        if any(not n for n in names):
            raise SignalSpaceError("block names must be nonempty")
        if len(set(names)) != len(names):
            raise SignalSpaceError(f"duplicate block names in {names}")
        if any(d < 1 for _, d in self.blocks):
            raise SignalSpaceError("block dimensions must be positive")

    @classmethod
    def scalars(cls, names: Sequence[str]) -> "SignalSpace":
        return cls(tuple((n, 1) for n in names))

    @property
    def q(self) -> int:
        return sum(d for _, d in self.blocks)

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.blocks]

    def __len__(self) -> int:
        return len(self.blocks)

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.blocks):
            if n == name:
                return i
        raise KeyError(f"unknown signal block {name!r}")

    def columns(self, name: str) -> range:
        """Column indices belonging to block ``name``."""
        start = 0
        for n, d in self.blocks:
            if n == name:
                return range(start, start + d)
            start += d
        raise KeyError(f"unknown signal block {name!r}")

    def column_names(self) -> list[str]:
        out = []
        for n, d in self.blocks:
            out.extend([n] if d == 1 else [f"{n}_{k + 1}" for k in range(d)])
        return out

    def block_of_column(self, col: int) -> int:
        start = 0
        for b, (_, d) in enumerate(self.blocks):
            if col < start + d:
                return b
            start += d
        raise IndexError(col)


@dataclass(frozen=True)
class KernelRep:
    """The system ``R(sigma) w = 0`` over ``space``."""

    space: SignalSpace
    r: PolyMatrix

    def __post_init__(self):
        if self.r.cols != self.space.q:
            raise SignalSpaceError(
                f"kernel has {self.r.cols} columns but the signal space has q={self.space.q}"
            )

    @classmethod
    def from_rows(cls, space: SignalSpace, rows) -> "KernelRep":
        return cls(space, PolyMatrix.from_rows(rows, space.q))

    def block(self, name: str) -> PolyMatrix:
        return self.r.submatrix(None, list(self.space.columns(name)))


@dataclass(frozen=True)
class IOPartition:
    """``P(sigma) y = Q(sigma) u`` with ``y = w[output_cols]``, ``u = w[input_cols]``."""

    space: SignalSpace
    input_cols: tuple[int, ...]
    output_cols: tuple[int, ...]
    p_part: PolyMatrix
    q_part: PolyMatrix
    proper: bool = field(default=False)

    def kernel(self) -> KernelRep:
        """The partition written back as a kernel ``[P -Q]`` in the original column order."""
        cols: dict[int, tuple[Poly, ...]] = {}
        for k, c in enumerate(self.output_cols):
            cols[c] = self.p_part.col(k)
        for k, c in enumerate(self.input_cols):
            cols[c] = tuple(-x for x in self.q_part.col(k))
        rows = [[cols[c][i] for c in range(self.space.q)] for i in range(self.p_part.rows)]
        return KernelRep(self.space, PolyMatrix.from_rows(rows, self.space.q))


def minimal_kernel(k: KernelRep) -> KernelRep:
    """Row-proper, full-row-rank representation of the same behavior."""
    reduced, _ = row_reduce(k.r)
    keep = [i for i in range(reduced.rows) if not reduced.row_is_zero(i)]
    return KernelRep(k.space, reduced.submatrix(keep))


def output_cardinality(k: KernelRep) -> int:
    return normal_rank(k.r)


def mcmillan_degree(k: KernelRep) -> int:
    """Largest degree of the maximal minors of a minimal representation."""
    mk = minimal_kernel(k)
    if mk.r.rows == 0:
        return 0
    return int(max_minor_degree(mk.r, mk.r.rows))


def mcmillan_degree_fast(k: KernelRep) -> int:
    """Same value as :func:`mcmillan_degree`, via row degrees of the row-proper form."""
    return sum_row_degrees(minimal_kernel(k).r)


def is_unconstrained(k: KernelRep, block: str) -> bool:
    """True when every column of ``block`` is zero in ``k``."""
    cols = k.space.columns(block)
    return not any(k.r[i, j] for i in range(k.r.rows) for j in cols)


def is_proper(p_part: PolyMatrix, q_part: PolyMatrix) -> bool:
    """Decide whether ``P^{-1} Q`` is proper without forming rational functions.

    ``P`` is made row proper by a unimodular ``U`` (applied to ``Q`` as well);
    then properness holds iff every row degree of ``U Q`` is at most the
    matching row degree of ``U P``.
    """
    if p_part.rows != p_part.cols or p_part.rows != q_part.rows:
        raise ValueError("P must be square with as many rows as Q")
    if determinant(p_part).is_zero():
        return False
    p_red, cert = row_reduce(p_part)
    q_red = cert.u @ q_part
    return all(dq <= dp for dq, dp in zip(q_red.row_degrees(), p_red.row_degrees()))


def maximizing_output_sets(k: KernelRep) -> tuple[int | float, list[tuple[int, ...]]]:
    """All ``p``-column subsets maximising ``deg det`` of the minimal kernel.

    Exhaustive over column subsets; returns ``(max_degree, subsets)`` with
    subsets in lexicographic order.  Every subset listed is a valid choice of
    outputs for a proper input-output partition.
    """
    mk = minimal_kernel(k)
    p = mk.r.rows
    best: int | float = MINUS_INF
    found: list[tuple[int, ...]] = []
    for cols in combinations(range(k.space.q), p):
        d = determinant(mk.r.submatrix(None, cols)).degree
        if d > best:
            best, found = d, [cols]
        elif d == best and d != MINUS_INF:
            found.append(cols)
    return best, found


def io_partition(k: KernelRep) -> IOPartition:
    """Proper input-output partition with lexicographically smallest outputs.

    On the row-proper minimal kernel, ``deg det R[:, J]`` reaches the total
    row degree exactly when the leading coefficients restricted to ``J`` are
    nonsingular; the leftmost pivot columns of that matrix are therefore the
    lexicographically first maximiser.
    """
    mk = minimal_kernel(k)
    p = mk.r.rows
    if p == 0:
        raise ValueError("output cardinality is 0: every signal is free, no outputs exist")
    _, outputs = rational.rref(leading_row_coeff(mk.r))
    inputs = [c for c in range(k.space.q) if c not in outputs]
    p_part = mk.r.submatrix(None, outputs)
    q_part = -mk.r.submatrix(None, inputs)
    return IOPartition(
        space=k.space,
        input_cols=tuple(inputs),
        output_cols=tuple(outputs),
        p_part=p_part,
        q_part=q_part,
        proper=is_proper(p_part, q_part),
    )


class _RowSpan:
    """Membership test for the Q[s]-row span of a full-row-rank matrix."""

    def __init__(self, basis: PolyMatrix):
        self.basis = basis
        r = basis.rows
        if r == 0:
            self.cols = []
            return
        reduced, _ = row_reduce(basis)
        _, self.cols = rational.rref(leading_row_coeff(reduced))
        square = basis.submatrix(None, self.cols)
        self.det = determinant(square)
        # adjugate: adj[i][k] = (-1)^(i+k) * minor with row k and column i removed
        self.adj = [[ONE] * r for _ in range(r)]
        for i in range(r):
            for kk in range(r):
                rows = [a for a in range(r) if a != kk]
                cols = [b for b in range(r) if b != i]
                m = determinant(square.submatrix(rows, cols)) if r > 1 else ONE
                self.adj[i][kk] = -m if (i + kk) % 2 else m

    def coefficients(self, row: Sequence[Poly]) -> list[Poly] | None:
        """Polynomial ``v`` with ``v @ basis == row``, or None."""
        r = self.basis.rows
        if r == 0:
            return [] if not any(row) else None
        x = [row[c] for c in self.cols]
        v = []
        for kk in range(r):
            num = Poly()
            for i in range(r):
                num = num + x[i] * self.adj[i][kk]
            quo, rem = divmod(num, self.det)
            if rem:
                return None
            v.append(quo)
        for j in range(self.basis.cols):
            acc = Poly()
            for kk in range(r):
                acc = acc + v[kk] * self.basis[kk, j]
            if acc != row[j]:
                return None
        return v

    def __contains__(self, row) -> bool:
        return self.coefficients(row) is not None


def is_behavior_equal(a: KernelRep, b: KernelRep) -> bool:
    """Decide ``ker R_a == ker R_b`` algebraically (unimodular equivalence)."""
    if a.space != b.space:
        raise SignalSpaceError("behaviors live in different signal spaces")
    ma, mb = minimal_kernel(a), minimal_kernel(b)
    if ma.r.rows != mb.r.rows:
        return False
    span_a, span_b = _RowSpan(ma.r), _RowSpan(mb.r)
    return all(mb.r.row(i) in span_a for i in range(mb.r.rows)) and all(
        ma.r.row(i) in span_b for i in range(ma.r.rows)
    )


def unconstrained_blocks(k: KernelRep) -> list[str]:
    return [n for n in k.space.names if is_unconstrained(k, n)]

