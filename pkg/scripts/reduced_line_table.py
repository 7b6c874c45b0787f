"""Reduce h - e_1 - e_2 for every (r, s) in a range and print the outcome.

Finite cases are compared with the closed-form table; infinite ones report
the divergence certificate (or the cap, for r = 2 with s >= 9).
"""
import argparse
import time
from dataclasses import dataclass

from weyl_lines.chow import SpaceParams, line, mod_f_equal
from weyl_lines.coxeter import chamber_face, weyl_finite
from weyl_lines.reduction import NotInTitsCone, Reduced, cremona_reduce, r_table, r_table_row_label


@dataclass
class Config:
    r_max: int = 6
    s_max: int = 12


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-max", type=int, default=Config.r_max)
    ap.add_argument("--s-max", type=int, default=Config.s_max)
    cfg = Config(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})

    start = time.perf_counter()
    mismatches = 0
    for r in range(2, cfg.r_max + 1):
        for s in range(r + 1, cfg.s_max + 1):
            space = SpaceParams(r, s)
            out = cremona_reduce(line(space, [1, 2]))
            if isinstance(out, Reduced):
                face = sorted(chamber_face(out.final))
                note = ""
                if weyl_finite(space):
                    ok = mod_f_equal(out.final, r_table(space, validate=False))
                    mismatches += not ok
                    note = f"{r_table_row_label(space):<14} {'match' if ok else 'MISMATCH'}"
                print(f"r={r} s={s:<3} reduced  {str(out.final):<34} steps={out.steps:<3} face={face} {note}")
            elif isinstance(out, NotInTitsCone):
                print(f"r={r} s={s:<3} diverges lemma {out.certificate.lemma} after {out.steps} steps")
            else:
                print(f"r={r} s={s:<3} cap exceeded after {out.steps} steps")
    print(f"# {mismatches} mismatches, {time.perf_counter() - start:.3f}s")


if __name__ == "__main__":
    main()
