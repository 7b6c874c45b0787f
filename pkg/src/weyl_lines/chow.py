"""Curve and divisor classes on the blowup of P^r at s general points.

Classes are stored by their numerical characters ``(d; m_1, ..., m_s)``,
meaning ``d h - sum m_i e_i`` for curves and ``d H - sum m_i E_i`` for
divisors. Multiplicities are stored exactly as written in that expression,
so the exceptional divisor ``E_1`` is ``(0; -1, 0, ...)``.

All arithmetic is exact: Python ints for the integral pairings and
:class:`fractions.Fraction` wherever half-integers appear.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

Number = Union[int, Fraction]


@dataclass(frozen=True)
class SpaceParams:
    """The pair ``(r, s)`` fixing the ambient blowup."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"r must be at least 2, got {self.r}")
        if self.s < self.r + 1:
            raise ValueError(f"s must be at least r+1={self.r + 1}, got {self.s}")

    def __str__(self):
        return f"Y^{self.r}_{self.s}"


class _Class:
    """Shared behaviour of curve and divisor classes."""

    __slots__ = ("space", "d", "m")

    def __init__(self, space: SpaceParams, d: Number, m: Sequence[Number]):
        m = tuple(m)
        if len(m) != space.s:
            raise ValueError(f"expected {space.s} multiplicities, got {len(m)}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and self.space == other.space
            and self.d == other.d
            and self.m == other.m
        )

    def __hash__(self):
        return hash((type(self).__name__, self.space, self.d, self.m))

    def __repr__(self):
        return f"{type(self).__name__}({self.space.r}, {self.space.s}, {self})"

    def __str__(self):
        return "(" + str(self.d) + ";" + ",".join(str(x) for x in self.m) + ")"

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.space != self.space:
            raise ValueError(f"mismatched spaces {self.space} and {other.space}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.space, self.d + other.d, [a + b for a, b in zip(self.m, other.m)])

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.space, self.d - other.d, [a - b for a, b in zip(self.m, other.m)])

    def __neg__(self):
        return type(self)(self.space, -self.d, [-a for a in self.m])

    def __mul__(self, k):
        return type(self)(self.space, k * self.d, [k * a for a in self.m])

    __rmul__ = __mul__

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in (self.d, *self.m))

    def permuted(self, order: Sequence[int]) -> "_Class":
        """Class whose ``k``-th multiplicity is ``m[order[k]]`` (0-based)."""
        return type(self)(self.space, self.d, [self.m[k] for k in order])

    def to_text(self) -> str:
        return f"{self.d}; " + ",".join(str(x) for x in self.m)

    def to_dict(self) -> dict:
        return {"r": self.space.r, "s": self.space.s, "d": _jsonable(self.d), "m": [_jsonable(x) for x in self.m]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict):
        space = SpaceParams(int(data["r"]), int(data["s"]))
        return cls(space, _from_jsonable(data["d"]), [_from_jsonable(x) for x in data["m"]])

    @classmethod
    def from_json(cls, text: str):
        return cls.from_dict(json.loads(text))

    @classmethod
    def parse(cls, space: SpaceParams, text: str):
        """Parse the text form ``"d; m1,m2,...,ms"`` or the JSON form."""
        text = text.strip()
        if text.startswith("{"):
            try:
                obj = cls.from_json(text)
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed class record: missing or bad field {exc}") from None
            if obj.space != space:
                raise ValueError(f"class is on {obj.space}, expected {space}")
            return obj
        text = text.strip("()")
        if ";" not in text:
            raise ValueError(f"malformed class {text!r}: expected 'd; m1,...,ms'")
        head, tail = text.split(";", 1)
        try:
            d = int(head)
            m = [int(x) for x in tail.split(",")] if tail.strip() else []
        except ValueError as exc:
            raise ValueError(f"malformed class {text!r}: {exc}") from None
        return cls(space, d, m)


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _from_jsonable(x):
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return x
    raise ValueError(f"not an exact number: {x!r}")


class CurveClass(_Class):
    """Element ``d h - sum m_i e_i`` of A^{r-1}."""

    __slots__ = ()


class DivisorClass(_Class):
    """Element ``d H - sum m_i E_i`` of A^1."""

    __slots__ = ()


# ---- distinguished elements -------------------------------------------------

def line(space: SpaceParams, through: Sequence[int] = ()) -> CurveClass:
    """Class of a line through the given points (1-based indices)."""
    m = [0] * space.s
    for i in through:
        m[i - 1] = 1
    return CurveClass(space, 1, m)


def exceptional_curve(space: SpaceParams, i: int) -> CurveClass:
    m = [0] * space.s
    m[i - 1] = -1
    return CurveClass(space, 0, m)


def hyperplane(space: SpaceParams) -> DivisorClass:
    return DivisorClass(space, 1, [0] * space.s)


def exceptional_divisor(space: SpaceParams, i: int) -> DivisorClass:
    m = [0] * space.s
    m[i - 1] = -1
    return DivisorClass(space, 0, m)


def special_classes(space: SpaceParams) -> Tuple[DivisorClass, CurveClass]:
    """Canonical divisor K and anticanonical curve class F."""
    r, s = space.r, space.s
    K = DivisorClass(space, -(r + 1), [-(r - 1)] * s)
    F = CurveClass(space, r + 1, [1] * s)
    return K, F


def canonical_class(space: SpaceParams) -> DivisorClass:
    return special_classes(space)[0]


def anticanonical_curve(space: SpaceParams) -> CurveClass:
    return special_classes(space)[1]


# ---- pairings and forms -----------------------------------------------------

def _same_space(a: _Class, b: _Class):
    if a.space != b.space:
        raise ValueError(f"mismatched spaces {a.space} and {b.space}")


def pair(D: DivisorClass, c: CurveClass) -> Number:
    """Intersection number (D . c), the coefficient of the point class."""
    _same_space(D, c)
    return D.d * c.d - sum(a * b for a, b in zip(D.m, c.m))


def bilinear_curve(c1: CurveClass, c2: CurveClass) -> Number:
    """The invariant form <c1, c2> = d1 d2 - (r-1) sum m1_i m2_i on curves."""
    _same_space(c1, c2)
    return c1.d * c2.d - (c1.space.r - 1) * sum(a * b for a, b in zip(c1.m, c2.m))


def q_curve(c: CurveClass) -> Number:
    return c.d * c.d - (c.space.r - 1) * sum(a * a for a in c.m)


def q_div(D: DivisorClass) -> Number:
    return (D.space.r - 1) * D.d * D.d - sum(a * a for a in D.m)


def bilinear_div(D1: DivisorClass, D2: DivisorClass) -> Fraction:
    """B_1 on divisors, normalised so that B_1(x, x) = -q_1(x)/2."""
    _same_space(D1, D2)
    r = D1.space.r
    total = (1 - r) * D1.d * D2.d + sum(a * b for a, b in zip(D1.m, D2.m))
    return Fraction(total) / 2


def vdim(c: CurveClass) -> Number:
    """Euler characteristic of the normal bundle predicted by the class."""
    r = c.space.r
    return (r + 1) * (c.d + 1) - (r - 1) * sum(c.m) - 4


def anticanonical_degree(c: CurveClass) -> Number:
    return (c.space.r + 1) * c.d - (c.space.r - 1) * sum(c.m)


def numerical_i_level(c: CurveClass):
    """The integer i with <F, c> = 2 + i(r-1), or None if there is none."""
    value = anticanonical_degree(c) - 2
    q, rem = divmod(value, c.space.r - 1)
    if rem != 0:
        return None
    return int(q)


def mod_f_equal(c1: CurveClass, c2: CurveClass) -> bool:
    """True iff c2 - c1 is an integer multiple of F."""
    _same_space(c1, c2)
    diffs = [b - a for a, b in zip(c1.m, c2.m)]
    k = diffs[0]
    if any(x != k for x in diffs):
        return False
    return c2.d - c1.d == (c1.space.r + 1) * k


def sort_desc(c: _Class):
    """Sort multiplicities into non-increasing order (stable).

    Returns ``(sorted_class, perm)`` where ``perm[i]`` is the output position
    of input index ``i`` (both 0-based).
    """
    order = sorted(range(len(c.m)), key=lambda i: -c.m[i])
    perm = [0] * len(order)
    for pos, i in enumerate(order):
        perm[i] = pos
    return c.permuted(order), tuple(perm)


def sorted_desc(c: _Class):
    """Just the sorted class."""
    return type(c)(c.space, c.d, sorted(c.m, reverse=True))


# ---- Chow ring monomials ----------------------------------------------------

KINDS = ("zero", "identity", "h", "e", "point")


@dataclass(frozen=True)
class ChowMonomial:
    """A basis monomial of the Chow ring: h_j, e_{i,j}, [p], [Y] or 0.

    Use :func:`h_mono` and :func:`e_mono` to build normalised monomials.
    """

    space: SpaceParams
    kind: str
    codim: int = 0
    index: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown monomial kind {self.kind!r}")
        if not 0 <= self.codim <= self.space.r:
            raise ValueError(f"codimension {self.codim} out of range")

    def __str__(self):
        if self.kind == "h":
            return f"h_{self.codim}"
        if self.kind == "e":
            return f"e_{self.index},{self.codim}"
        return {"zero": "0", "identity": "[Y]", "point": "[p]"}[self.kind]


def zero_mono(space: SpaceParams) -> ChowMonomial:
    return ChowMonomial(space, "zero")


def h_mono(space: SpaceParams, j: int) -> ChowMonomial:
    if j < 0:
        raise ValueError("negative codimension")
    if j == 0:
        return ChowMonomial(space, "identity", 0)
    if j == space.r:
        return ChowMonomial(space, "point", space.r)
    if j > space.r:
        return zero_mono(space)
    return ChowMonomial(space, "h", j)


def e_mono(space: SpaceParams, i: int, j: int) -> ChowMonomial:
    if not 1 <= i <= space.s:
        raise ValueError(f"point index {i} out of range")
    if j < 1:
        raise ValueError("exceptional classes have codimension at least 1")
    if j == space.r:
        return ChowMonomial(space, "point", space.r)
    if j > space.r:
        return zero_mono(space)
    return ChowMonomial(space, "e", j, i)


def chow_product(a: ChowMonomial, b: ChowMonomial) -> Tuple[int, ChowMonomial]:
    """Product of two monomials as ``(sign, monomial)``; sign is 0 for zero."""
    if a.space != b.space:
        raise ValueError("mismatched spaces")
    space = a.space
    zero = (0, zero_mono(space))
    if a.kind == "zero" or b.kind == "zero":
        return zero
    if a.kind == "identity":
        return 1, b
    if b.kind == "identity":
        return 1, a
    codim = a.codim + b.codim
    if codim > space.r:
        return zero
    # here both factors have codimension in 1..r-1
    if a.kind == "h" and b.kind == "h":
        return 1, h_mono(space, codim)
    if a.kind == "e" and b.kind == "e":
        if a.index != b.index:
            return zero
        return -1, e_mono(space, a.index, codim)
    return zero
