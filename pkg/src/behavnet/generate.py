"""Seeded random instances for property tests and experiment scripts.

Every generator takes a :class:`random.Random` so results are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import rational
from .behavior import KernelRep, SignalSpace
from .network import Network
from .polyalg import Poly, PolyMatrix, UnimodularCert
from .svar import SvarModel, validate

_SMALL = (-3, -2, -1, 1, 2, 3)


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    num = rng.choice(_SMALL) if nonzero else rng.randint(-3, 3)
    return Fraction(num, rng.choice((1, 1, 1, 2, 3)))


def random_poly(rng: random.Random, max_degree: int, density: float = 1.0) -> Poly:
    """Random polynomial of degree at most ``max_degree`` (zero with prob. 1 - density)."""
    if max_degree < 0 or rng.random() > density:
        return Poly()
    deg = rng.randint(0, max_degree)
    return Poly([random_rational(rng) for _ in range(deg)] + [random_rational(rng, nonzero=True)])


def random_poly_matrix(
    rng: random.Random, rows: int, cols: int, max_degree: int = 3, density: float = 0.8
) -> PolyMatrix:
    return PolyMatrix.from_rows(
        [[random_poly(rng, max_degree, density) for _ in range(cols)] for _ in range(rows)], cols
    )


def random_unimodular(rng: random.Random, n: int, max_degree: int = 2, steps: int = 4) -> UnimodularCert:
    """Product of random elementary row operations, with its inverse tracked.

    Operations: swap two rows, scale a row by a nonzero rational, add a
    polynomial multiple of one row to another.
    """
    u = PolyMatrix.identity(n).to_lists()
    u_inv = PolyMatrix.identity(n).to_lists()
    for _ in range(steps):
        kind = rng.choice(("swap", "scale", "add", "add")) if n > 1 else "scale"
        if kind == "swap":
            i, j = rng.sample(range(n), 2)
            u[i], u[j] = u[j], u[i]
            for row in u_inv:
                row[i], row[j] = row[j], row[i]
        elif kind == "scale":
            i = rng.randrange(n)
            c = random_rational(rng, nonzero=True)
            u[i] = [x * c for x in u[i]]
            for row in u_inv:
                row[i] = row[i] * (1 / c)
        else:
            i, j = rng.sample(range(n), 2)
            c = random_poly(rng, max_degree)
            # row i += c * row j; the inverse subtracts c * column i from column j
            u[i] = [x + c * y for x, y in zip(u[i], u[j])]
            for row in u_inv:
                row[j] = row[j] - c * row[i]
    return UnimodularCert(PolyMatrix.from_rows(u, n), PolyMatrix.from_rows(u_inv, n))


def _full_rank_leading(rng: random.Random, rows: int, cols: int, density: float, unit_diag: bool):
    while True:
        g = [
            [
                Fraction(1) if unit_diag and i == j
                else (random_rational(rng, nonzero=True) if rng.random() < density else Fraction(0))
                for j in range(cols)
            ]
            for i in range(rows)
        ]
        if rational.rank(g) == rows:
            return g


def random_svar(
    rng: random.Random,
    max_outputs: int = 4,
    max_inputs: int = 2,
    max_lag: int = 3,
    density: float = 0.35,
) -> SvarModel:
    """Random model satisfying the SVAR assumptions, with sparse off-diagonals."""
    n = rng.randint(1, max_outputs)
    m = rng.randint(0, max_inputs)
    lags = [rng.randint(0, max_lag) for _ in range(n)]
    lead = _full_rank_leading(rng, n, n, density / 2, unit_diag=True)
    x_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                lower = [random_rational(rng) for _ in range(lags[i])]
                row.append(Poly(lower + [1]))
            elif lead[i][j] != 0:
                lower = [random_rational(rng) for _ in range(lags[i])]
                row.append(Poly(lower + [lead[i][j]]))
            else:
                row.append(random_poly(rng, lags[i] - 1, density))
        x_rows.append(row)
    q_rows = [[random_poly(rng, lags[i], density + 0.2) for _ in range(m)] for i in range(n)]
    x = PolyMatrix.from_rows(x_rows, n)
    q = PolyMatrix.from_rows(q_rows, m) if n else PolyMatrix.zeros(0, m)
    return validate(x, q)


def random_row_proper(
    rng: random.Random, rows: int, cols: int, max_degree: int = 2, density: float = 0.7
) -> PolyMatrix:
    """Full row rank, row-proper matrix with random row degrees."""
    lead = _full_rank_leading(rng, rows, cols, density, unit_diag=False)
    degs = [rng.randint(0, max_degree) for _ in range(rows)]
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            lower = random_poly(rng, degs[i] - 1, density)
            row.append(lower + Poly.monomial(degs[i], lead[i][j]) if lead[i][j] else lower)
        out.append(row)
    return PolyMatrix.from_rows(out, cols)


def random_regular_feedback_network(
    rng: random.Random,
    max_signals: int = 5,
    max_components: int = 4,
    max_degree: int = 2,
    scramble_degree: int = 1,
) -> Network:
    """Split a random row-proper matrix into components, then disguise each one.

    Subsets of rows of a row-proper matrix are row proper, so McMillan degrees
    add up and the interconnection is regular feedback.  Each component is then
    left-multiplied by its own random unimodular matrix, which changes the
    representation but not the behavior.
    """
    q = rng.randint(2, max_signals)
    p = rng.randint(1, min(q, max_components + 1))
    r = random_row_proper(rng, p, q, max_degree)
    n_comp = rng.randint(1, min(p, max_components))
    cuts = sorted(rng.sample(range(1, p), n_comp - 1))
    bounds = [0, *cuts, p]
    space = SignalSpace.scalars([f"w{j + 1}" for j in range(q)])
    comps = []
    for a, b in zip(bounds, bounds[1:]):
        block = r.submatrix(list(range(a, b)))
        cert = random_unimodular(rng, b - a, max_degree=scramble_degree, steps=2)
        comps.append(KernelRep(space, cert.u @ block))
    return Network(space, tuple(comps))
