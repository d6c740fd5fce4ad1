"""Finite discrete-time trajectories: membership residuals and simulation.

Time runs over ``0..T-1`` and ``sigma`` is the forward shift.  A trajectory
belongs to ``ker R(sigma)`` on the checkable window when every equation,
evaluated at every base time whose shifts stay inside the horizon, is zero.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import rational
from .behavior import IOPartition, KernelRep, SignalSpace
from .polyalg import MINUS_INF, PolyMatrix, leading_row_coeff
from .rational import format_rational, to_rational


class HorizonError(ValueError):
    pass


class InconsistentInitialData(ValueError):
    """Initial output window violates a low-degree equation."""

    def __init__(self, time: int, row: int, value: Fraction):
        self.time, self.row, self.value = time, row, value
        super().__init__(f"initial data violates equation {row + 1} at t={time} (residual {value})")


@dataclass(frozen=True)
class Trajectory:
    space: SignalSpace
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        vals = tuple(tuple(to_rational(x) for x in row) for row in self.values)
        object.__setattr__(self, "values", vals)
        if not vals:
            raise HorizonError("a trajectory needs at least one sample")
        if any(len(r) != self.space.q for r in vals):
            raise ValueError(f"every sample must have q={self.space.q} entries")

    @property
    def horizon(self) -> int:
        return len(self.values)

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.values]

    def drop_first(self, n: int = 1) -> "Trajectory":
        return Trajectory(self.space, self.values[n:])

    def __add__(self, other: "Trajectory") -> "Trajectory":
        return Trajectory(self.space, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.values, other.values)))

    def scaled(self, c) -> "Trajectory":
        c = to_rational(c)
        return Trajectory(self.space, tuple(tuple(c * a for a in r) for r in self.values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.space.column_names())
        for row in self.values:
            writer.writerow([format_rational(x) for x in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, space: SignalSpace, text: str) -> "Trajectory":
        header, rows = read_csv_columns(text)
        expected = space.column_names()
        if header != expected:
            raise ValueError(f"CSV header {header} does not match signal columns {expected}")
        return cls(space, tuple(tuple(r) for r in rows))


def read_csv_columns(text: str) -> tuple[list[str], list[list[Fraction]]]:
    reader = csv.reader(io.StringIO(text))
    lines = [r for r in reader if r and any(c.strip() for c in r)]
    if not lines:
        raise ValueError("empty CSV")
    header = [h.strip() for h in lines[0]]
    rows = []
    for lineno, r in enumerate(lines[1:], start=2):
        if len(r) != len(header):
            raise ValueError(f"CSV line {lineno}: expected {len(header)} fields, got {len(r)}")
        try:
            rows.append([to_rational(c.strip()) for c in r])
        except (ValueError, TypeError) as exc:
            raise ValueError(f"CSV line {lineno}: {exc}") from None
    return header, rows


def residual(k: KernelRep, traj: Trajectory) -> list[list[Fraction]]:
    """``(R(sigma) w)(t)`` for every ``t`` with ``t + deg R < T``.

    Row ``t`` of the result holds the value of every equation at base time
    ``t``.
    """
    if traj.space != k.space:
        raise ValueError("trajectory and kernel live in different signal spaces")
    d = k.r.degree
    d = 0 if d == MINUS_INF else int(d)
    window = traj.horizon - d
    if window <= 0:
        raise HorizonError(f"horizon {traj.horizon} must exceed the kernel degree {d}")
    terms = [
        [(j, l, c) for j in range(k.r.cols) for l, c in enumerate(k.r[i, j].coeffs) if c]
        for i in range(k.r.rows)
    ]
    w = traj.values
    return [[sum((c * w[t + l][j] for j, l, c in row), Fraction(0)) for row in terms] for t in range(window)]


def first_violation(res: Sequence[Sequence[Fraction]]) -> tuple[int, int] | None:
    for t, row in enumerate(res):
        for i, v in enumerate(row):
            if v != 0:
                return t, i
    return None


def is_member(k: KernelRep, traj: Trajectory) -> bool:
    return first_violation(residual(k, traj)) is None


class _Stepper:
    """Shared bookkeeping for the row-by-row recursion of ``P y = Q u``."""

    def __init__(self, part: IOPartition):
        if not part.proper:
            raise ValueError("simulation needs a proper input-output partition")
        p = part.p_part
        self.n_out = p.rows
        self.n_in = len(part.input_cols)
        self.lags = [int(d) for d in p.row_degrees()]
        self.gamma = leading_row_coeff(p)
        if rational.rank(self.gamma) != self.n_out:
            raise ValueError("P is not row proper; row-reduce the partition first")
        if any(dq > dp for dq, dp in zip(part.q_part.row_degrees(), self.lags)):
            raise ValueError("Q row degree exceeds the P row degree")
        self.tau0 = max(self.lags, default=0)
        self.p_terms = self._terms(p)
        self.q_terms = self._terms(part.q_part)

    @staticmethod
    def _terms(m: PolyMatrix):
        return [
            [(j, l, c) for j in range(m.cols) for l, c in enumerate(m[i, j].coeffs) if c]
            for i in range(m.rows)
        ]

    def row_value(self, i: int, base: int, y, u, skip_top: bool) -> Fraction:
        """``(P_i y - Q_i u)(base)``, leaving out the top P coefficients when asked."""
        acc = Fraction(0)
        lag = self.lags[i]
        for j, l, c in self.p_terms[i]:
            if skip_top and l == lag:
                continue
            acc += c * y[base + l][j]
        for j, l, c in self.q_terms[i]:
            acc -= c * u[base + l][j]
        return acc


def _check_inputs(stepper: _Stepper, u_traj, horizon: int | None):
    u = [[to_rational(x) for x in row] for row in u_traj]
    if any(len(r) != stepper.n_in for r in u):
        raise ValueError(f"every input sample needs {stepper.n_in} entries")
    horizon = len(u) if horizon is None else horizon
    if len(u) < horizon:
        raise HorizonError(f"input has {len(u)} samples, {horizon} requested")
    if horizon < stepper.tau0:
        raise HorizonError(f"horizon {horizon} shorter than the initial window {stepper.tau0}")
    if horizon < 1:
        raise HorizonError("horizon must be positive")
    return u, horizon


def _assemble(part: IOPartition, y, u, horizon: int) -> Trajectory:
    q = part.space.q
    rows = []
    for t in range(horizon):
        w = [Fraction(0)] * q
        for k, c in enumerate(part.output_cols):
            w[c] = y[t][k]
        for k, c in enumerate(part.input_cols):
            w[c] = u[t][k]
        rows.append(tuple(w))
    return Trajectory(part.space, tuple(rows))


def simulate(
    part: IOPartition,
    u_traj: Sequence[Sequence],
    initial: Sequence[Sequence],
    horizon: int | None = None,
) -> Trajectory:
    """Run ``P(sigma) y = Q(sigma) u`` forward from an initial output window.

    ``initial`` gives ``y`` on ``0..tau0-1`` where ``tau0`` is the largest row
    degree of ``P``.  Rows of smaller degree already constrain that window;
    they are checked and :class:`InconsistentInitialData` names the first
    violated one.  From ``tau0`` on, ``Gamma y(tau) = b(tau)`` is solved with
    ``Gamma`` the leading row coefficient matrix of ``P``.
    """
    st = _Stepper(part)
    u, horizon = _check_inputs(st, u_traj, horizon)
    init = [[to_rational(x) for x in row] for row in initial]
    if len(init) != st.tau0 or any(len(r) != st.n_out for r in init):
        raise ValueError(f"initial window must be {st.tau0} samples of {st.n_out} outputs")

    y: list[list[Fraction]] = [list(r) for r in init]
    for tau in range(st.tau0):
        for i in range(st.n_out):
            base = tau - st.lags[i]
            if base >= 0:
                v = st.row_value(i, base, y, u, skip_top=False)
                if v != 0:
                    raise InconsistentInitialData(tau, i, v)
    for tau in range(st.tau0, horizon):
        y.append([Fraction(0)] * st.n_out)
        b = [-st.row_value(i, tau - st.lags[i], y, u, skip_top=True) for i in range(st.n_out)]
        y[tau] = rational.solve(st.gamma, b)
    return _assemble(part, y, u, horizon)


def consistent_initial(
    part: IOPartition,
    u_traj: Sequence[Sequence],
    proposal: Sequence[Sequence] | None = None,
) -> list[list[Fraction]]:
    """Adjust a proposed initial window so that :func:`simulate` accepts it.

    At time ``tau`` the rows with lag at most ``tau`` fix some outputs; those
    pivot outputs are solved for and the remaining ones keep the proposed
    value (zero by default).
    """
    st = _Stepper(part)
    u = [[to_rational(x) for x in row] for row in u_traj]
    if len(u) < st.tau0:
        raise HorizonError("input shorter than the initial window")
    proposal = proposal or [[0] * st.n_out for _ in range(st.tau0)]
    y: list[list[Fraction]] = []
    for tau in range(st.tau0):
        y.append([to_rational(x) for x in proposal[tau]])
        active = [i for i in range(st.n_out) if st.lags[i] <= tau]
        if not active:
            continue
        g = [st.gamma[i] for i in active]
        _, pivots = rational.rref(g)
        free = [c for c in range(st.n_out) if c not in pivots]
        # Gamma_A[:, pivots] y_piv = -(rest of each row) - Gamma_A[:, free] y_free
        for c in pivots:
            y[tau][c] = Fraction(0)
        rhs = []
        for i in active:
            rest = st.row_value(i, tau - st.lags[i], y, u, skip_top=True)
            rhs.append(-rest - sum(st.gamma[i][c] * y[tau][c] for c in free))
        sol = rational.solve([[st.gamma[i][c] for c in pivots] for i in active], rhs)
        for c, v in zip(pivots, sol):
            y[tau][c] = v
    return y
