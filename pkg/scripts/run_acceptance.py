"""Run the acceptance criteria and write a JSON report."""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from cutcomplex.acceptance import run_all


@dataclass
class Config:
    seed: int = 0
    jobs: int = 1
    out: Path = Path("results/acceptance.json")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    ap.add_argument("--out", type=Path, default=Config.out)
    cfg = Config(**vars(ap.parse_args()))
    results = run_all(seed=cfg.seed, jobs=cfg.jobs)
    for r in results:
        print(r.line())
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True, default=str) + "\n")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
