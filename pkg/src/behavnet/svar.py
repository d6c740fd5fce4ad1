"""Structural VAR models ``X(sigma) y = Q(sigma) u`` and their network form.

Row ``i`` of ``X`` has degree ``l_i`` (its lag) and the leading row
coefficient matrix of ``X`` must have unit diagonal and full rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import rational
from .behavior import KernelRep, SignalSpace, minimal_kernel
from .network import Network, regularity
from .polyalg import MINUS_INF, DimensionError, PolyMatrix, leading_row_coeff, sparsity, vstack


class SvarError(ValueError):
    """Base class for SVAR validation and conversion failures."""


class DiagonalLeadingError(SvarError):
    """Own-lag leading coefficient is not 1 (or the row of X is zero)."""


class SingularLeadingError(SvarError):
    """Leading row coefficient matrix of X is singular."""


class InputDegreeError(SvarError):
    """A row of Q has higher degree than the lag of its row of X."""


class HypothesisError(SvarError):
    """A network does not satisfy the hypotheses for SVAR conversion."""


class ComponentCardinalityError(HypothesisError):
    pass


class NotRegularFeedbackError(HypothesisError):
    pass


@dataclass(frozen=True)
class SvarModel:
    x: PolyMatrix
    q: PolyMatrix
    lags: tuple[int, ...]
    output_names: tuple[str, ...]
    input_names: tuple[str, ...]

    @property
    def n_outputs(self) -> int:
        return self.x.rows

    @property
    def n_inputs(self) -> int:
        return self.q.cols

    def kernel_matrix(self) -> PolyMatrix:
        """``[X  -Q]``."""
        return self.x.hstack(-self.q)

    def kernel(self) -> KernelRep:
        space = SignalSpace.scalars(list(self.output_names) + list(self.input_names))
        return KernelRep(space, self.kernel_matrix())

    def sparsity(self) -> list[list[int]]:
        return sparsity(self.kernel_matrix())


def _default_names(prefix: str, n: int) -> tuple[str, ...]:
    if prefix == "u" and n == 1:
        return ("u",)
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def validate(
    x: PolyMatrix,
    q: PolyMatrix,
    output_names: Sequence[str] | None = None,
    input_names: Sequence[str] | None = None,
) -> SvarModel:
    """Check the SVAR assumptions and return the validated model."""
    if x.rows != x.cols:
        raise DimensionError(f"X must be square, got {x.rows}x{x.cols}")
    if q.rows != x.rows:
        raise DimensionError(f"Q has {q.rows} rows, X has {x.rows}")
    n = x.rows
    lags = []
    for i in range(n):
        d = x.row_degree(i)
        if d == MINUS_INF:
            raise DiagonalLeadingError(f"row {i + 1} of X is zero")
        lags.append(int(d))
    lrc = leading_row_coeff(x) if n else []
    for i in range(n):
        if lrc[i][i] != 1:
            raise DiagonalLeadingError(
                f"row {i + 1}: coefficient of s^{lags[i]} in X[{i + 1},{i + 1}] is {lrc[i][i]}, expected 1"
            )
    if rational.rank(lrc) != n:
        raise SingularLeadingError("leading row coefficient matrix of X is singular")
    for i in range(n):
        dq = q.row_degree(i)
        if dq > lags[i]:
            raise InputDegreeError(f"row {i + 1}: Q has degree {dq} above the lag {lags[i]}")
    output_names = tuple(output_names) if output_names is not None else _default_names("y", n)
    input_names = tuple(input_names) if input_names is not None else _default_names("u", q.cols)
    if len(output_names) != n or len(input_names) != q.cols:
        raise ValueError("name counts do not match X and Q")
    return SvarModel(x, q, tuple(lags), output_names, input_names)


def to_network(
    model: SvarModel,
    signal_names: Sequence[str] | None = None,
    split_inputs: bool = False,
) -> Network:
    """One single-row component per equation.

    Outputs become scalar blocks; the inputs form one block of dimension
    ``m`` unless ``split_inputs`` asks for one scalar block per input.
    """
    n, m = model.n_outputs, model.n_inputs
    if split_inputs or m == 1:
        default = list(model.output_names) + list(model.input_names)
        dims = [1] * (n + m)
    else:
        default = list(model.output_names) + (["u"] if m else [])
        dims = [1] * n + ([m] if m else [])
    names = list(signal_names) if signal_names is not None else default
    if len(names) != len(dims):
        raise ValueError(f"expected {len(dims)} signal names, got {len(names)}")
    space = SignalSpace(tuple(zip(names, dims)))
    r = model.kernel_matrix()
    comps = tuple(KernelRep(space, r.submatrix([i])) for i in range(n))
    return Network(space, comps, tuple(f"Sigma{i + 1}" for i in range(n)))


def _perfect_matching(allowed: list[list[int]], n_cols: int) -> list[int]:
    """Row -> column matching on allowed pairs; augmenting paths, lowest index first."""
    owner = [-1] * n_cols

    def augment(row: int, seen: set[int]) -> bool:
        for c in allowed[row]:
            if c in seen:
                continue
            seen.add(c)
            if owner[c] == -1 or augment(owner[c], seen):
                owner[c] = row
                return True
        return False

    for row in range(len(allowed)):
        if not augment(row, set()):
            raise SvarError("no perfect matching on the leading coefficients")
    match = [-1] * len(allowed)
    for c, row in enumerate(owner):
        if row != -1:
            match[row] = c
    return match


def from_network(net: Network) -> tuple[SvarModel, list[int]]:
    """Write a regular feedback network of single-output components as an SVAR.

    Returns ``(model, perm)`` where ``perm[k]`` is the network column placed at
    position ``k`` of ``col(y, u)``; component ``i`` becomes equation ``i`` with
    output ``y_i``.
    """
    report = regularity(net)
    bad = [net.names[i] for i, p in enumerate(report.component_p) if p != 1]
    if bad:
        raise ComponentCardinalityError(
            "components must have output cardinality 1; violated by " + ", ".join(bad)
        )
    if not report.regular_feedback:
        reason = "not a regular interconnection" if not report.regular else "McMillan degrees are not additive"
        raise NotRegularFeedbackError(f"not a regular feedback interconnection ({reason})")

    r = vstack([minimal_kernel(c).r for c in net.components], cols=net.space.q)
    lrc = leading_row_coeff(r)
    _, basis = rational.rref(lrc)
    n = r.rows
    allowed = [[c for c in basis if lrc[i][c] != 0] for i in range(n)]
    outputs = _perfect_matching(allowed, net.space.q)
    inputs = [c for c in range(net.space.q) if c not in outputs]

    scale = [Fraction(1) / lrc[i][outputs[i]] for i in range(n)]
    scaled = r.scale_rows(scale)
    x = scaled.submatrix(None, outputs)
    q = -scaled.submatrix(None, inputs)
    names = net.space.column_names()
    model = validate(x, q, [names[c] for c in outputs], [names[c] for c in inputs])
    return model, list(outputs) + inputs

