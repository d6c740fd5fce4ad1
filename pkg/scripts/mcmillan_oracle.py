"""Compare exhaustive max-minor degree with row-proper degree sums on random matrices.

Disagreements are split by whether the matrix has full row rank.  Without
full row rank the two numbers legitimately differ: row reduction keeps
only the gcd structure, e.g. [[1], [s]] reduces to [[1], [0]].
"""

import argparse
import random
from dataclasses import dataclass

from behavnet.generate import random_poly_matrix
from behavnet.polyalg import max_minor_degree, normal_rank, row_reduce, sum_row_degrees


@dataclass
class Config:
    samples: int = 500
    max_size: int = 4
    max_degree: int = 3
    seed: int = 5


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    full = deficient = full_bad = deficient_bad = 0
    for _ in range(cfg.samples):
        rows, cols = rng.randint(1, cfg.max_size), rng.randint(1, cfg.max_size)
        m = random_poly_matrix(rng, rows, cols, cfg.max_degree, density=0.8)
        r = normal_rank(m)
        bad = sum_row_degrees(row_reduce(m)[0]) != (max_minor_degree(m, r) if r else 0)
        if r == rows:
            full += 1
            full_bad += bad
        else:
            deficient += 1
            deficient_bad += bad
    print(f"full row rank:      {full_bad} disagreements out of {full}")
    print(f"row rank deficient: {deficient_bad} disagreements out of {deficient}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    main(Config(**vars(p.parse_args())))
