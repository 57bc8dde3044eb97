"""Build principal spherical exhaustions and print their levels and certificates."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from cutcomplex.serialize import space_from_json
from cutcomplex.spheres import build_exhaustion, check_exhaustion, inverse_limit_check, quotient_space


@dataclass
class Config:
    space: str = '{"type":"cantor"}'
    depth: int = 5


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--space", default=Config.space)
    ap.add_argument("--depth", type=int, default=Config.depth)
    cfg = Config(**vars(ap.parse_args()))
    spec = space_from_json(cfg.space)
    ex = build_exhaustion(spec, cfg.depth)
    for d, s in zip(ex.depths, ex.spheres):
        print(f"depth {d}: n={s.n} k={s.k} quotient size {len(quotient_space(s).pieces)}")
    print(check_exhaustion(ex, cfg.depth).to_dict())
    print(inverse_limit_check(ex, cfg.depth))


if __name__ == "__main__":
    main()
