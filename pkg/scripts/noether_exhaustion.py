"""Exhaustive check of the Noether inequality for curves in P^3 at desk scale.

Counts, per level i, the sorted classes meeting the hypotheses and the
smallest slack m1+m2+m3+m4 - d observed.
"""
import argparse
import time
from dataclasses import dataclass

from weyl_lines.classify import noether_candidates, noether_check


@dataclass
class Config:
    d_max: int = 30
    points: int = 14


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=Config.d_max)
    ap.add_argument("--points", type=int, default=Config.points)
    args = ap.parse_args()
    cfg = Config(args.d_max, args.points)

    start = time.perf_counter()
    for i in (-1, 0, 1):
        count, slack, tight = 0, None, None
        for d in range(2, cfg.d_max + 1):
            for c in noether_candidates(d, i, cfg.points):
                noether_check(c, i)
                gap = sum(c.m[:4]) - d
                count += 1
                if slack is None or gap < slack:
                    slack, tight = gap, c
        print(f"i={i:>2}  classes={count:>8}  min slack={slack}  attained at {tight}")
    print(f"# {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
