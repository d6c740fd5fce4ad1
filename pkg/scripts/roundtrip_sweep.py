"""SVAR -> network -> SVAR with shuffled signal order; checks sparsity and behavior."""

import argparse
import random
from dataclasses import dataclass

from behavnet.behavior import KernelRep, SignalSpace, is_behavior_equal
from behavnet.generate import random_svar
from behavnet.network import Network, column_incidence, interconnect
from behavnet.polyalg import PolyMatrix, sparsity
from behavnet.svar import from_network, to_network


@dataclass
class Config:
    samples: int = 100
    seed: int = 2


def shuffle(rng: random.Random, net: Network) -> Network:
    order = list(range(net.space.q))
    rng.shuffle(order)
    names = net.space.column_names()
    space = SignalSpace.scalars([names[c] for c in order])
    return Network(space, tuple(KernelRep(space, c.r.submatrix(None, order)) for c in net.components))


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    failures = 0
    for _ in range(cfg.samples):
        net = shuffle(rng, to_network(random_svar(rng), split_inputs=True))
        model, perm = from_network(net)
        k = model.kernel_matrix()
        back = [[None] * net.space.q for _ in range(k.rows)]
        for pos, col in enumerate(perm):
            for i in range(k.rows):
                back[i][col] = k[i, pos]
        same_pattern = sparsity(k) == [[row[c] for c in perm] for row in column_incidence(net)]
        same_behavior = is_behavior_equal(KernelRep(net.space, PolyMatrix.from_rows(back, net.space.q)), interconnect(net))
        failures += not (same_pattern and same_behavior)
    print(f"{cfg.samples} round trips, {failures} failures")
    return failures


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    raise SystemExit(1 if main(Config(**vars(p.parse_args()))) else 0)
