"""Exhaustive distance-two sweep on truncated Cantor complexes."""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass, field

from cutcomplex.acceptance import _infinite_diameter_sweep


@dataclass
class Config:
    depths: list[int] = field(default_factory=lambda: [2, 3, 4])
    seed: int = 0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depths", type=int, nargs="+", default=Config().depths)
    ap.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    for d in cfg.depths:
        print(d, _infinite_diameter_sweep(d, rng))


if __name__ == "__main__":
    main()
