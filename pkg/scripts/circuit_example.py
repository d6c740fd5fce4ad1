"""Walk through the RLC circuit: invariants, merge search, and a simulation cross-check."""

import argparse
import random
from dataclasses import dataclass
from pathlib import Path

from behavnet import modelfile
from behavnet.behavior import io_partition
from behavnet.network import interconnect, merge, regularity, regularizing_partition
from behavnet.sim import consistent_initial, is_member, simulate

DATA = Path(__file__).resolve().parent.parent / "data"


@dataclass
class Config:
    model: Path = DATA / "circuit.json"
    horizon: int = 12
    seed: int = 0


def main(cfg: Config) -> None:
    net = modelfile.load(str(cfg.model)).network
    rep = regularity(net)
    print(f"components p={rep.component_p} n={rep.component_n}")
    print(f"interconnection p={rep.p} n={rep.n} regular={rep.regular} regular_feedback={rep.regular_feedback}")

    found = regularizing_partition(net)
    merged = merge(net, found.partition)
    mrep = regularity(merged)
    print(f"merge {found.partition}: p={mrep.component_p} n={mrep.component_n} regular_feedback={mrep.regular_feedback}")

    part = io_partition(interconnect(merged))
    names = net.space.column_names()
    print("outputs", [names[c] for c in part.output_cols], "inputs", [names[c] for c in part.input_cols])
    rng = random.Random(cfg.seed)
    u = [[rng.randint(-3, 3)] for _ in range(cfg.horizon)]
    traj = simulate(part, u, consistent_initial(part, u))
    print(f"simulated {cfg.horizon} samples; member of the unmerged kernel: {is_member(interconnect(net), traj)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--model", type=Path, default=Config.model)
    p.add_argument("--horizon", type=int, default=Config.horizon)
    p.add_argument("--seed", type=int, default=Config.seed)
    main(Config(**vars(p.parse_args())))
