"""Random SVAR models are regular feedback interconnections with p = N and n = sum of lags."""

import argparse
import random
import time
from dataclasses import dataclass

from behavnet.generate import random_svar
from behavnet.network import regularity
from behavnet.svar import to_network


@dataclass
class Config:
    samples: int = 200
    seed: int = 1
    max_outputs: int = 4
    max_inputs: int = 2
    max_lag: int = 3


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    failures = 0
    t0 = time.perf_counter()
    for _ in range(cfg.samples):
        model = random_svar(rng, cfg.max_outputs, cfg.max_inputs, cfg.max_lag)
        rep = regularity(to_network(model))
        if not (rep.regular_feedback and rep.p == model.n_outputs and rep.n == sum(model.lags)):
            failures += 1
    print(f"{cfg.samples} models, {failures} failures, {time.perf_counter() - t0:.2f} s")
    return failures


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    raise SystemExit(1 if main(Config(**vars(p.parse_args()))) else 0)
