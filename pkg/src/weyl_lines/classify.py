"""Decision procedures for (i)-Weyl line classes."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .chow import CurveClass, SpaceParams, anticanonical_curve, bilinear_curve, line, q_curve, sort_desc
from .coxeter import apply_letter
from .cremona import is_cremona_reduced, phi_curve, phi_top
from .reduction import TraceStep

LEVELS = (-1, 0, 1)

NO_LINEAR = "wrong-linear-invariant"
NO_QUADRATIC = "wrong-quadratic-invariant"
NO_REDUCED = "cremona-reduced-at-degree>1"
NO_LOW_DEGREE = "reached-degree<=1-wrong-class"
NO_NONPOSITIVE = "degree-nonpositive"

DEFAULT_DEPTH_CAP = 3
DEFAULT_BREADTH_CAP = 64


def _check_level(i: int):
    if i not in LEVELS:
        raise ValueError(f"i must be one of -1, 0, 1; got {i}")


def target_line(space, i: int) -> CurveClass:
    """The sorted line through 1-i points."""
    _check_level(i)
    return line(space, range(1, 2 - i))


def expected_linear(r: int, i: int) -> int:
    return 2 + i * (r - 1)


def expected_quadratic(r: int, i: int) -> int:
    return 1 + (i - 1) * (r - 1)


@dataclass(frozen=True)
class WeylLineVerdict:
    is_line: bool
    reason: Optional[str]
    trace: Tuple[TraceStep, ...]
    i: int

    def __bool__(self):
        return self.is_line

    def to_dict(self) -> dict:
        return {
            "verdict": "yes" if self.is_line else "no",
            "reason": self.reason,
            "i": self.i,
            "trace": [st.to_dict() for st in self.trace],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WeylLineVerdict":
        trace = tuple(TraceStep.from_dict(x) for x in data["trace"])
        return cls(data["verdict"] == "yes", data["reason"], trace, data["i"])


def is_weyl_line(c: CurveClass, i: int) -> WeylLineVerdict:
    """Decide whether c lies in the Weyl orbit of the line through 1-i points.

    Requires positive degree and non-negative multiplicities.
    """
    _check_level(i)
    if c.d < 1 or any(x < 0 for x in c.m):
        raise ValueError(f"need d >= 1 and non-negative multiplicities, got {c}")
    r = c.space.r
    F = anticanonical_curve(c.space)
    if bilinear_curve(F, c) != expected_linear(r, i):
        return WeylLineVerdict(False, NO_LINEAR, (), i)
    if q_curve(c) != expected_quadratic(r, i):
        return WeylLineVerdict(False, NO_QUADRATIC, (), i)
    target = target_line(c.space, i)
    trace: List[TraceStep] = []
    current = c
    while True:
        current, _ = sort_desc(current)
        if current == target:
            trace.append(TraceStep(current, False))
            return WeylLineVerdict(True, None, tuple(trace), i)
        reason = None
        if current.d <= 0:
            reason = NO_NONPOSITIVE
        elif current.d <= 1:
            reason = NO_LOW_DEGREE
        elif is_cremona_reduced(current):
            reason = NO_REDUCED
        if reason is not None:
            trace.append(TraceStep(current, False))
            return WeylLineVerdict(False, reason, tuple(trace), i)
        trace.append(TraceStep(current, True))
        current = phi_top(current)


# ---- Noether inequality in P^3 ----------------------------------------------

@dataclass(frozen=True)
class NoetherResult:
    applicable: bool
    conclusion: bool


def noether_hypotheses(c: CurveClass, i: int) -> bool:
    F = anticanonical_curve(c.space)
    return (
        bilinear_curve(c, F) == 2 * i + 2
        and q_curve(c) <= 2 * i - 1
        and all(2 * x <= c.d - 1 for x in c.m)
    )


def noether_check(c: CurveClass, i: int) -> NoetherResult:
    """For curves in P^3: under the hypotheses the four largest multiplicities exceed d."""
    _check_level(i)
    if c.space.r != 3:
        raise ValueError("the Noether check is for r = 3")
    if c.d <= 1:
        raise ValueError("the Noether check needs d > 1")
    if any(x < 0 for x in c.m):
        raise ValueError("the Noether check needs non-negative multiplicities")
    applicable = noether_hypotheses(c, i)
    conclusion = sum(sorted(c.m, reverse=True)[:4]) > c.d
    assert not applicable or conclusion, f"Noether inequality violated by {c}"
    return NoetherResult(applicable, conclusion)


def _partitions(total: int, largest: int, slots: int):
    if total == 0:
        yield ()
        return
    for p in range(min(total, largest), 0, -1):
        if p * slots < total:
            break
        for rest in _partitions(total - p, p, slots - 1):
            yield (p,) + rest


def noether_candidates(d: int, i: int, max_points: int = 14):
    """Sorted non-negative classes in P^3 blown up at ``max_points`` points meeting the Noether hypotheses.

    Multiplicities sum to 2d - i - 1 (the linear condition), each is at most
    (d-1)/2, and the quadratic bound holds. Shorter vectors are padded with zeros.
    """
    _check_level(i)
    space = SpaceParams(3, max_points)
    total = 2 * d - i - 1
    for m in _partitions(total, (d - 1) // 2, max_points):
        if d * d - 2 * sum(x * x for x in m) <= 2 * i - 1:
            yield CurveClass(space, d, m + (0,) * (max_points - len(m)))


# ---- strong projection inequality ------------------------------------------

@dataclass(frozen=True)
class SpiWitness:
    """A Weyl element w and index k with <c, w(h - e_k)> < 1 while deg(w^-1 c) > 1.

    ``word`` lists geometric letters in the order they are applied when
    computing w(x).
    """

    word: Tuple[tuple, ...]
    k: int
    value: int
    degree_check: int

    @property
    def depth(self) -> int:
        return len(self.word)

    def to_dict(self) -> dict:
        return {
            "word": [_letter_to_json(x) for x in self.word],
            "k": self.k,
            "value": self.value,
            "degree_check": self.degree_check,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpiWitness":
        return cls(tuple(_letter_from_json(x) for x in data["word"]), data["k"], data["value"], data["degree_check"])


def _letter_to_json(letter):
    kind, arg = letter
    return {kind: list(arg) if isinstance(arg, tuple) else arg}


def _letter_from_json(obj):
    (kind, arg), = obj.items()
    return (kind, tuple(arg) if isinstance(arg, list) else arg)


def apply_word(x, word):
    for letter in word:
        x = apply_letter(x, letter)
    return x


def _index_sets(u: CurveClass, breadth_cap: int):
    """Top r+1 positions first, then the rest in lexicographic order."""
    r, s = u.space.r, u.space.s
    _, perm = sort_desc(u)
    top = tuple(sorted(i + 1 for i in range(s) if perm[i] <= r))
    yield top
    count = 1
    for I in itertools.combinations(range(1, s + 1), r + 1):
        if count >= breadth_cap:
            return
        if I != top:
            count += 1
            yield I


def _first_violation(u: CurveClass) -> Optional[int]:
    if u.d <= 1:
        return None
    r = u.space.r
    for k, mk in enumerate(u.m, start=1):
        if u.d - (r - 1) * mk < 1:
            return k
    return None


def spi_witness_search(
    c: CurveClass,
    i: Optional[int] = None,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    breadth_cap: int = DEFAULT_BREADTH_CAP,
) -> Optional[SpiWitness]:
    """Bounded breadth-first search for a violation of the strong projection inequality.

    Nodes are the classes u = w^-1(c); <c, w(h - e_k)> = <u, h - e_k> by
    invariance of the form. A returned witness is a proof; None only means
    nothing was found within the caps.
    """
    if i is not None:
        _check_level(i)
    if depth_cap < 0 or breadth_cap < 1:
        raise ValueError("caps must be non-negative (breadth at least 1)")
    r = c.space.r
    seen = {sort_desc(c)[0]}
    queue = deque([(c, ())])
    while queue:
        u, path = queue.popleft()
        k = _first_violation(u)
        if k is not None:
            w = tuple(reversed(path))
            value = bilinear_curve(c, apply_word(line(c.space, [k]), w))
            assert value == u.d - (r - 1) * u.m[k - 1]
            return SpiWitness(w, k, value, u.d)
        if len(path) >= depth_cap:
            continue
        for I in _index_sets(u, breadth_cap):
            v = phi_curve(u, I)
            key = sort_desc(v)[0]
            if key in seen:
                continue
            seen.add(key)
            queue.append((v, path + (("phi", I),)))
    return None


# ---- the P^3 criterion report -----------------------------------------------

def equivalence_report(
    c: CurveClass,
    i: int,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    breadth_cap: int = DEFAULT_BREADTH_CAP,
) -> dict:
    """Compare the numerical criterion for (i)-Weyl lines in P^3 with the orbit decision."""
    _check_level(i)
    if c.space.r != 3:
        raise ValueError("the criterion report is for r = 3")
    if c.d <= 1:
        raise ValueError("the criterion report needs d > 1")
    F = anticanonical_curve(c.space)
    linear = bilinear_curve(c, F)
    quadratic = q_curve(c)
    witness = spi_witness_search(c, i, depth_cap, breadth_cap)
    verdict = is_weyl_line(c, i)
    invariants_hold = linear == 2 * i + 2 and quadratic == 2 * i - 1
    if witness is not None and verdict.is_line:
        raise AssertionError(f"witness {witness} contradicts a Yes verdict for {c}")
    notes = []
    if invariants_hold and witness is None and not verdict.is_line:
        consistency = "discrepancy-candidate"
        notes.append("no witness within the search caps; the strong projection inequality is unfalsified, not verified")
    else:
        consistency = "consistent"
    if c.d == 2:
        notes.append("no curve of degree d=2 satisfies the linear, quadratic and strong projection conditions")
    return {
        "class": c.to_dict(),
        "i": i,
        "invariant_linear": {"value": linear, "expected": 2 * i + 2, "holds": linear == 2 * i + 2},
        "invariant_quadratic": {"value": quadratic, "expected": 2 * i - 1, "holds": quadratic == 2 * i - 1},
        "spi_witness": None if witness is None else witness.to_dict(),
        "verdict": "yes" if verdict.is_line else "no",
        "reason": verdict.reason,
        "trace": [st.to_dict() for st in verdict.trace],
        "consistency": consistency,
        "notes": notes,
        "caps": {"depth_cap": depth_cap, "breadth_cap": breadth_cap},
    }
