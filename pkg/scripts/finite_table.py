"""Invariants of the finite cut complexes: size, diameter, automorphisms, pants."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from cutcomplex.cuts import complex_graph, diameter
from cutcomplex.pants import enumerate_pants_finite
from cutcomplex.reconstruction import automorphisms, kernel_of_action
from cutcomplex.space import Finite


@dataclass
class Config:
    n_min: int = 4
    n_max: int = 8


def row(n: int) -> dict:
    t = time.perf_counter()
    g = complex_graph(Finite(n))
    out = {
        "n": n,
        "vertices": len(g),
        "edges": g.edge_count(),
        "diameter": diameter(g),
        "aut": automorphisms(g).order,
        "kernel": len(kernel_of_action(Finite(n))),
        "pants": len(enumerate_pants_finite(n)) if 5 <= n <= 8 else None,
    }
    out["seconds"] = round(time.perf_counter() - t, 2)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=Config.n_min)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    cfg = Config(**vars(ap.parse_args()))
    cols = ["n", "vertices", "edges", "diameter", "aut", "kernel", "pants", "seconds"]
    print("\t".join(cols))
    for n in range(cfg.n_min, cfg.n_max + 1):
        r = row(n)
        print("\t".join(str(r[c]) for c in cols))


if __name__ == "__main__":
    main()
