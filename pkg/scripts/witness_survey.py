"""Compare the numerical criterion with the orbit decision on random P^3 classes.

Draws non-negative classes with the invariants of a given level and tallies
(verdict, witness found) pairs; discrepancy candidates are printed.
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from weyl_lines.chow import CurveClass, SpaceParams
from weyl_lines.classify import equivalence_report


@dataclass
class Config:
    s: int = 9
    i: int = -1
    samples: int = 20_000
    d_max: int = 15
    depth_cap: int = 3
    breadth_cap: int = 64
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, value in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=value)
    cfg = Config(**vars(ap.parse_args()))

    rng = random.Random(cfg.seed)
    space = SpaceParams(3, cfg.s)
    tally = Counter()
    for _ in range(cfg.samples):
        d = rng.randint(2, cfg.d_max)
        target = 2 * d - cfg.i - 1
        m = [0] * cfg.s
        for _ in range(target):
            m[rng.randrange(cfg.s)] += 1
        c = CurveClass(space, d, m)
        if d * d - 2 * sum(x * x for x in m) != 2 * cfg.i - 1:
            continue
        rep = equivalence_report(c, cfg.i, cfg.depth_cap, cfg.breadth_cap)
        tally[(rep["verdict"], rep["spi_witness"] is not None)] += 1
        if rep["consistency"] != "consistent":
            print("candidate", c, rep["reason"])
    for (verdict, found), n in sorted(tally.items()):
        print(f"verdict={verdict:<3} witness={'yes' if found else 'no':<3} {n}")


if __name__ == "__main__":
    main()
