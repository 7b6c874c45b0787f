"""Sizes of the Weyl orbits of the three line classes for finite Weyl groups."""
import argparse
import time
from dataclasses import dataclass

from weyl_lines.chow import SpaceParams
from weyl_lines.classify import target_line
from weyl_lines.coxeter import weyl_finite
from weyl_lines.reduction import orbit_enumerate


@dataclass
class Config:
    r_max: int = 5
    jobs: int = 1
    cap: int = 200_000


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=Config.r_max)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    ap.add_argument("--cap", type=int, default=Config.cap)
    args = ap.parse_args()
    cfg = Config(args.r_max, args.jobs, args.cap)

    print(f"{'r':>2} {'s':>3} {'i=-1':>8} {'i=0':>8} {'i=1':>8}  seconds")
    for r in range(2, cfg.r_max + 1):
        for s in range(r + 1, 3 * r + 4):
            space = SpaceParams(r, s)
            if not weyl_finite(space):
                break
            start = time.perf_counter()
            sizes = []
            for i in (-1, 0, 1):
                orbit = orbit_enumerate(target_line(space, i), cap=cfg.cap, jobs=cfg.jobs)
                sizes.append(str(orbit.size) if orbit.complete else f">{orbit.size}")
            print(f"{r:>2} {s:>3} {sizes[0]:>8} {sizes[1]:>8} {sizes[2]:>8}  {time.perf_counter() - start:.2f}")


if __name__ == "__main__":
    main()
