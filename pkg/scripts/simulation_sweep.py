"""Simulate random regular feedback networks and count nonzero residual entries."""

import argparse
import random
from dataclasses import dataclass

from behavnet.behavior import io_partition
from behavnet.generate import random_regular_feedback_network
from behavnet.network import interconnect
from behavnet.sim import consistent_initial, residual, simulate


@dataclass
class Config:
    samples: int = 50
    horizon: int = 20
    seed: int = 3


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    nonzero = 0
    for _ in range(cfg.samples):
        kernel = interconnect(random_regular_feedback_network(rng))
        part = io_partition(kernel)
        u = [[rng.randint(-5, 5) for _ in part.input_cols] for _ in range(cfg.horizon)]
        traj = simulate(part, u, consistent_initial(part, u), cfg.horizon)
        for k in (part.kernel(), kernel):
            nonzero += sum(1 for row in residual(k, traj) for v in row if v)
    print(f"{cfg.samples} networks, horizon {cfg.horizon}, {nonzero} nonzero residual entries")
    return nonzero


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        p.add_argument(f"--{name}", type=int, default=default)
    raise SystemExit(1 if main(Config(**vars(p.parse_args()))) else 0)
