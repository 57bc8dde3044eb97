"""Compare |Aut(C_s)| with the homeomorphism group of small Stone space pairs.

Enumeration only; the comparison is reported, not asserted.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from cutcomplex.cuts import CutError
from cutcomplex.systems import StoneSpaceSystem, pair_experiment


@dataclass
class Config:
    n_max: int = 7


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    cfg = Config(**vars(ap.parse_args()))
    print("n\t|E_2|\tvertices\t|Aut(C_s)|\t|Homeo|")
    for n in range(4, cfg.n_max + 1):
        for k in range(1, n):
            try:
                r = pair_experiment(StoneSpaceSystem.of(n, range(k)))
            except CutError:
                continue
            print(f"{n}\t{k}\t{r['strong_vertices']}\t{r['strong_aut_order']}\t{r['system_homeo_order']}")


if __name__ == "__main__":
    main()
