"""Cremona reduction of curve classes modulo F.

The loop sorts the multiplicities, stops once the class is Cremona reduced,
and otherwise applies phi at the r+1 largest multiplicities. Divergence is
certified in the ranges where a persistent set of inequalities is known;
anything else that runs past the step cap is reported as such.
"""
from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple, Union

from .chow import CurveClass, SpaceParams, line, mod_f_equal, sort_desc, sorted_desc
from .coxeter import chamber_face
from .cremona import is_cremona_reduced, phi_top

DEFAULT_STEP_CAP = 10_000
DEFAULT_ORBIT_CAP = 200_000

# lemma tags recorded in certificates
LEMMA_WIDE = "r>=3,s>=r+5"
LEMMA_NARROW = "r>=5,s=r+4"


def default_step_cap() -> int:
    value = os.environ.get("WEYL_LINES_STEP_CAP")
    return int(value) if value else DEFAULT_STEP_CAP


@dataclass(frozen=True)
class TraceStep:
    """One pass of the loop: the class after sorting, and whether phi followed."""

    cls: CurveClass
    phi_applied: bool

    def to_dict(self) -> dict:
        return {"class": self.cls.to_dict(), "phi": self.phi_applied}

    @classmethod
    def from_dict(cls, data: dict) -> "TraceStep":
        return cls(CurveClass.from_dict(data["class"]), bool(data["phi"]))


@dataclass(frozen=True)
class CertificateData:
    """Hypotheses of a non-termination lemma, verified at ``cls`` (sorted)."""

    lemma: str
    cls: CurveClass
    M1: int
    M_last: int  # M_{s-r}, the sum of the last r+1 multiplicities
    t: int
    N1: Optional[int] = None

    def verify(self) -> bool:
        return certificate_hypotheses(self.cls) == self

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "class": self.cls.to_dict(),
            "M1": self.M1,
            "M_s_minus_r": self.M_last,
            "t": self.t,
            "N1": self.N1,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CertificateData":
        return cls(data["lemma"], CurveClass.from_dict(data["class"]), data["M1"], data["M_s_minus_r"], data["t"], data["N1"])


def _window_sum(m, k: int, r: int) -> int:
    """M_k = m_k + ... + m_{k+r}, 1-based."""
    return sum(m[k - 1 : k + r])


def certificate_hypotheses(c: CurveClass) -> Optional[CertificateData]:
    """Check the persistent divergence inequalities on the sorted class."""
    r, s = c.space.r, c.space.s
    c = sorted_desc(c)
    d, m = c.d, c.m
    if r >= 3 and s >= r + 5:
        lemma = LEMMA_WIDE
    elif r >= 5 and s == r + 4:
        lemma = LEMMA_NARROW
    else:
        return None
    M1 = _window_sum(m, 1, r)
    M_last = _window_sum(m, s - r, r)
    t = d - M1
    if not (d < M1 and m[s - 1] >= m[0] + t and 2 * d <= M1 + M_last):
        return None
    if lemma == LEMMA_WIDE:
        return CertificateData(lemma, c, M1, M_last, t)
    N1 = m[0] + m[1] + m[2] + sum(m[6 : r + 4])
    if d > N1:
        return None
    return CertificateData(lemma, c, M1, M_last, t, N1)


def nontermination_certificate(c: CurveClass) -> Optional[CertificateData]:
    return certificate_hypotheses(c)


# ---- outcomes ---------------------------------------------------------------

@dataclass(frozen=True)
class Reduced:
    final: CurveClass
    trace: Tuple[TraceStep, ...]
    kind = "reduced"

    @property
    def steps(self) -> int:
        return sum(st.phi_applied for st in self.trace)

    def to_dict(self) -> dict:
        return {"outcome": self.kind, "final": self.final.to_dict(), "steps": self.steps,
                "trace": [st.to_dict() for st in self.trace]}


@dataclass(frozen=True)
class NotInTitsCone:
    certificate: CertificateData
    trace: Tuple[TraceStep, ...]
    kind = "not_in_tits_cone"

    @property
    def steps(self) -> int:
        return sum(st.phi_applied for st in self.trace)

    def to_dict(self) -> dict:
        return {"outcome": self.kind, "certificate": self.certificate.to_dict(), "steps": self.steps,
                "trace": [st.to_dict() for st in self.trace]}


@dataclass(frozen=True)
class CapExceeded:
    last: CurveClass
    steps: int
    trace: Tuple[TraceStep, ...] = ()
    kind = "cap_exceeded"

    def to_dict(self) -> dict:
        return {"outcome": self.kind, "last": self.last.to_dict(), "steps": self.steps,
                "trace": [st.to_dict() for st in self.trace]}


ReductionOutcome = Union[Reduced, NotInTitsCone, CapExceeded]


def outcome_from_dict(data: dict) -> ReductionOutcome:
    trace = tuple(TraceStep.from_dict(x) for x in data.get("trace", []))
    kind = data["outcome"]
    if kind == Reduced.kind:
        return Reduced(CurveClass.from_dict(data["final"]), trace)
    if kind == NotInTitsCone.kind:
        return NotInTitsCone(CertificateData.from_dict(data["certificate"]), trace)
    if kind == CapExceeded.kind:
        return CapExceeded(CurveClass.from_dict(data["last"]), data["steps"], trace)
    raise ValueError(f"unknown outcome {kind!r}")


def cremona_reduce(c: CurveClass, step_cap: Optional[int] = None) -> ReductionOutcome:
    if step_cap is None:
        step_cap = default_step_cap()
    if step_cap < 0:
        raise ValueError("step_cap must be non-negative")
    trace: List[TraceStep] = []
    steps = 0
    current = c
    while True:
        current, _ = sort_desc(current)
        if is_cremona_reduced(current):
            trace.append(TraceStep(current, False))
            return Reduced(current, tuple(trace))
        cert = certificate_hypotheses(current)
        if cert is not None:
            trace.append(TraceStep(current, False))
            return NotInTitsCone(cert, tuple(trace))
        if steps >= step_cap:
            trace.append(TraceStep(current, False))
            return CapExceeded(current, steps, tuple(trace))
        trace.append(TraceStep(current, True))
        nxt = phi_top(current)
        assert nxt.d < current.d, "phi on a non-reduced class must lower the degree"
        current = nxt
        steps += 1


def same_orbit_mod_f(c1: CurveClass, c2: CurveClass, step_cap: Optional[int] = None) -> Optional[bool]:
    """Decide Weyl-equivalence mod F when both classes reach the chamber.

    Returns None when either reduction does not terminate.
    """
    a = cremona_reduce(c1, step_cap)
    b = cremona_reduce(c2, step_cap)
    if not (isinstance(a, Reduced) and isinstance(b, Reduced)):
        return None
    if chamber_face(a.final) != chamber_face(b.final):
        return False
    return mod_f_equal(a.final, b.final)


# ---- the table of reduced line classes --------------------------------------

def _r_table_row(r: int, s: int) -> Tuple[str, int, List[int]]:
    if r == 2:
        if s == 3:
            return "r=2,s=3", 0, [0, 0, -1]
        return "r=2,s>=4", 0, [0] * (s - 1) + [-1]
    if s == r + 1:
        return "r>=3,s=r+1", 2 - r, [0, 0] + [-1] * (r - 1)
    if s == r + 2:
        return "r>=3,s=r+2", 2 - r, [0, 0, 0] + [-1] * (r - 1)
    if s == r + 3:
        if r % 2 == 0:
            k = r // 2
            return "r=2k,s=r+3", (2 * k + 1) * (1 - k), [1 - k] * (r + 2) + [-k]
        k = (r - 1) // 2
        return "r=2k+1,s=r+3", -2 * k * k - 2 * k + 1, [-k] * (r + 3)
    if (r, s) == (3, 7):
        return "r=3,s=7", -3, [0] + [-1] * 6
    if (r, s) == (4, 8):
        return "r=4,s=8", -14, [-2] + [-3] * 7
    raise ValueError(f"no table entry for r={r}, s={s} (Weyl group infinite)")


def r_table_row_label(space: SpaceParams) -> str:
    return _r_table_row(space.r, space.s)[0]


def r_table(space: SpaceParams, validate: bool = True) -> CurveClass:
    """Cremona-reduced representative mod F of the orbit of h - e_1 - e_2."""
    _, d, m = _r_table_row(space.r, space.s)
    entry = CurveClass(space, d, m)
    if validate:
        out = cremona_reduce(line(space, [1, 2]))
        if not (isinstance(out, Reduced) and mod_f_equal(out.final, entry)):
            raise RuntimeError(f"table entry {entry} disagrees with reduction outcome {out}")
    return entry


# ---- orbit enumeration ------------------------------------------------------

def _key(c: CurveClass) -> Tuple:
    return (c.d,) + c.m


def _canonical_neighbours(key: Tuple, r: int, s: int) -> List[Tuple]:
    """All sorted images of a sorted class under the phi_I (I up to value multiset)."""
    d, m = key[0], key[1:]
    out = []
    seen = set()
    for I in itertools.combinations(range(s), r + 1):
        chosen = tuple(m[i] for i in I)
        if chosen in seen:
            continue
        seen.add(chosen)
        t = d - sum(chosen)
        mm = list(m)
        for i in I:
            mm[i] += t
        mm.sort(reverse=True)
        out.append((d + (r - 1) * t,) + tuple(mm))
    return out


def _expand(args):
    keys, r, s = args
    return [_canonical_neighbours(k, r, s) for k in keys]


def permutation_count(m) -> int:
    """Number of distinct rearrangements of a multiplicity vector."""
    total = math.factorial(len(m))
    for n in Counter(m).values():
        total //= math.factorial(n)
    return total


@dataclass(frozen=True)
class Orbit:
    """Orbit of a class under all phi_I and all permutations.

    ``canonical`` holds the sorted representatives; ``size`` counts raw
    classes, i.e. every index assignment.
    """

    space: SpaceParams
    canonical: FrozenSet[CurveClass]
    complete: bool
    cap: int

    @property
    def size(self) -> int:
        return sum(permutation_count(c.m) for c in self.canonical)

    def raw_classes(self):
        """Yield every class of the orbit (all permutations), in a fixed order."""
        for c in sorted(self.canonical, key=_key):
            for m in sorted(set(itertools.permutations(c.m)), reverse=True):
                yield CurveClass(self.space, c.d, m)

    def __contains__(self, c: CurveClass) -> bool:
        return sorted_desc(c) in self.canonical

    def summary(self) -> dict:
        return {"size": self.size, "complete": self.complete}


def orbit_enumerate(c: CurveClass, cap: int = DEFAULT_ORBIT_CAP, jobs: int = 1) -> Orbit:
    """Breadth-first closure of c; stops once more than ``cap`` sorted classes are found."""
    r, s = c.space.r, c.space.s
    start = _key(sorted_desc(c))
    seen = {start}
    frontier = [start]
    complete = True
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while frontier:
            if pool is None:
                expanded = [_canonical_neighbours(k, r, s) for k in frontier]
            else:
                size = max(1, len(frontier) // (4 * jobs))
                chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
                expanded = [n for part in pool.map(_expand, [(ch, r, s) for ch in chunks]) for n in part]
            nxt = []
            for nbrs in expanded:
                for k in nbrs:
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
            if len(seen) > cap:
                complete = False
                break
            frontier = sorted(nxt)
    finally:
        if pool is not None:
            pool.shutdown()
    classes = frozenset(CurveClass(c.space, k[0], k[1:]) for k in seen)
    return Orbit(c.space, classes, complete, cap)

