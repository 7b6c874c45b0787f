"""The Coxeter system of the graph T_{2,r+1,s-r-1} and its link to classes.

Vertices are labelled 0..s-1: a chain 1 - 2 - ... - (s-1), plus vertex 0
attached to vertex r+1. Generator 0 corresponds to the Cremona
transformation at the first r+1 points, generator i >= 1 to the
transposition of points i and i+1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .chow import CurveClass, DivisorClass, SpaceParams, bilinear_div, q_curve, q_div
from .cremona import phi_curve, phi_div, standard_index_set, transpose

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CoxGraph:
    """The graph T_{2, r+1, s-r-1}; needs s >= r+2 so that vertex r+1 exists."""

    r: int
    s: int
    edges: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if self.s < self.r + 2:
            raise ValueError(
                f"T_(2,r+1,s-r-1) needs s >= r+2 (got r={self.r}, s={self.s}); "
                "use the cremona module directly for s = r+1"
            )
        edges = {frozenset((i, i + 1)) for i in range(1, self.s - 1)}
        edges.add(frozenset((0, self.r + 1)))
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def of(cls, space: SpaceParams) -> "CoxGraph":
        return cls(space.r, space.s)

    @property
    def space(self) -> SpaceParams:
        return SpaceParams(self.r, self.s)

    @property
    def chains(self) -> Tuple[int, int, int]:
        return 2, self.r + 1, self.s - self.r - 1

    @property
    def n(self) -> int:
        return self.s

    def adjacent(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def neighbours(self, i: int) -> List[int]:
        return [j for j in range(self.s) if j != i and self.adjacent(i, j)]

    def degree(self, i: int) -> int:
        return len(self.neighbours(i))


def _check_index(graph: CoxGraph, i: int):
    if not 0 <= i < graph.s:
        raise IndexError(f"generator index {i} out of range 0..{graph.s - 1}")


def b_form(graph: CoxGraph, i: int, j: int) -> Fraction:
    _check_index(graph, i)
    _check_index(graph, j)
    if i == j:
        return Fraction(1)
    if graph.adjacent(i, j):
        return -HALF
    return Fraction(0)


def gram_matrix(graph: CoxGraph) -> List[List[Fraction]]:
    return [[b_form(graph, i, j) for j in range(graph.s)] for i in range(graph.s)]


def b_pair(graph: CoxGraph, u: Sequence, v: Sequence) -> Fraction:
    """B(u, v) for coordinate vectors over the basis x_i."""
    total = Fraction(0)
    for i, ui in enumerate(u):
        if not ui:
            continue
        total += ui * v[i]
        for j in graph.neighbours(i):
            total -= HALF * ui * v[j]
    return total


# ---- vectors and reflections ------------------------------------------------

@dataclass(frozen=True)
class CoxVector:
    """Element of E, coordinates over the basis x_0..x_{s-1}."""

    coords: Tuple[Fraction, ...]

    @classmethod
    def basis(cls, graph: CoxGraph, i: int) -> "CoxVector":
        return cls(tuple(Fraction(int(k == i)) for k in range(graph.s)))

    def __add__(self, other):
        return CoxVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CoxVector(tuple(-a for a in self.coords))

    def __mul__(self, k):
        return CoxVector(tuple(k * a for a in self.coords))

    __rmul__ = __mul__


@dataclass(frozen=True)
class CoxFunctional:
    """Element f of E*, stored as its values f(x_i)."""

    values: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __call__(self, v: CoxVector) -> Fraction:
        return sum((a * b for a, b in zip(self.values, v.coords)), Fraction(0))


def reflect(graph: CoxGraph, v: CoxVector, i: int) -> CoxVector:
    """sigma_i(v) = v - 2 B(v, x_i) x_i."""
    _check_index(graph, i)
    coef = 2 * b_pair(graph, v.coords, CoxVector.basis(graph, i).coords)
    coords = list(v.coords)
    coords[i] -= coef
    return CoxVector(tuple(coords))


def reflection_matrix(graph: CoxGraph, i: int) -> List[List[int]]:
    """Matrix of sigma_i; column j holds sigma_i(x_j). Entries are integers."""
    n = graph.s
    cols = []
    for j in range(n):
        col = [0] * n
        col[j] = 1
        col[i] -= int(2 * b_form(graph, j, i))
        cols.append(col)
    return [[cols[j][k] for j in range(n)] for k in range(n)]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def identity(n: int):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def check_generator_relations(graph: CoxGraph) -> List[str]:
    """Verify the Coxeter relations as matrix identities; return the failures."""
    n = graph.s
    mats = [reflection_matrix(graph, i) for i in range(n)]
    eye = identity(n)
    failures = []
    for i in range(n):
        if matmul(mats[i], mats[i]) != eye:
            failures.append(f"sigma_{i}^2 != 1")
        for j in range(i + 1, n):
            st = matmul(mats[i], mats[j])
            if graph.adjacent(i, j):
                if matmul(mats[i], matmul(mats[j], mats[i])) != matmul(mats[j], matmul(mats[i], mats[j])):
                    failures.append(f"braid relation fails for ({i},{j})")
            elif matmul(st, st) != eye:
                failures.append(f"(sigma_{i} sigma_{j})^2 != 1")
    return failures


def b_positive_definite(graph: CoxGraph) -> bool:
    """Exact test via Gaussian elimination: all pivots of B positive."""
    a = gram_matrix(graph)
    n = len(a)
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


def weyl_finite(space: SpaceParams) -> bool:
    """Whether the Weyl group acting on classes is finite."""
    r, s = space.r, space.s
    return (r + 1) ** 2 > s * (r - 1)


def finite_case_list(space: SpaceParams) -> bool:
    """The finite cases written out: r=2,s<=8; r=3,s<=7; r=4,s<=8; r>=5,s<=r+3."""
    r, s = space.r, space.s
    if r == 2:
        return s <= 8
    if r == 3:
        return s <= 7
    if r == 4:
        return s <= 8
    return s <= r + 3


# ---- link with divisor classes ---------------------------------------------

def beta_basis(graph: CoxGraph, i: int) -> DivisorClass:
    """X_0 = H - E_1 - ... - E_{r+1}; X_i = E_i - E_{i+1}."""
    space = graph.space
    m = [0] * space.s
    if i == 0:
        for k in range(space.r + 1):
            m[k] = 1
        return DivisorClass(space, 1, m)
    m[i - 1] = -1
    m[i] = 1
    return DivisorClass(space, 0, m)


def beta(graph: CoxGraph, v: CoxVector) -> DivisorClass:
    """Linear isomorphism E -> V^1 sending x_i to X_i."""
    space = graph.space
    d = Fraction(0)
    m = [Fraction(0)] * space.s
    for i, a in enumerate(v.coords):
        if not a:
            continue
        X = beta_basis(graph, i)
        d += a * X.d
        for k in range(space.s):
            m[k] += a * X.m[k]
    return DivisorClass(space, d, m)


def bilinear_div_matches_b(graph: CoxGraph) -> List[str]:
    """B_1(X_i, X_j) == B(x_i, x_j) on all basis pairs; return the mismatches."""
    failures = []
    for i in range(graph.s):
        for j in range(graph.s):
            lhs = bilinear_div(beta_basis(graph, i), beta_basis(graph, j))
            if lhs != b_form(graph, i, j):
                failures.append(f"B_1(X_{i}, X_{j}) = {lhs} != B = {b_form(graph, i, j)}")
    return failures


def alpha_letter(graph: CoxGraph, i: int):
    """The geometric generator for sigma_i: ('phi', I) or ('tau', i)."""
    _check_index(graph, i)
    if i == 0:
        return ("phi", standard_index_set(graph.space))
    return ("tau", i)


def apply_letter(x, letter):
    """Apply a geometric letter to a curve or divisor class."""
    kind, arg = letter
    if kind == "tau":
        return transpose(x, arg)
    if kind == "phi":
        if isinstance(x, CurveClass):
            return phi_curve(x, arg)
        return phi_div(x, arg)
    if kind == "perm":
        return x.permuted(arg)
    raise ValueError(f"unknown letter {letter!r}")


def geometric_action(graph: CoxGraph, i: int, x):
    return apply_letter(x, alpha_letter(graph, i))


def commuting_square_failures(graph: CoxGraph) -> List[str]:
    """beta(sigma_i(x_j)) == alpha(sigma_i)(beta(x_j)) for all generators and basis vectors."""
    failures = []
    for i in range(graph.s):
        for j in range(graph.s):
            x = CoxVector.basis(graph, j)
            left = beta(graph, reflect(graph, x, i))
            right = geometric_action(graph, i, beta(graph, x))
            if left != right:
                failures.append(f"square fails at (sigma_{i}, x_{j}): {left} != {right}")
    return failures


# ---- dual action on functionals --------------------------------------------

def chamber_pairings(c: CurveClass) -> Tuple:
    """The values (c . X_i): d - m_1 - ... - m_{r+1}, then m_i - m_{i+1}."""
    r = c.space.r
    first = c.d - sum(c.m[: r + 1])
    return (first,) + tuple(c.m[i] - c.m[i + 1] for i in range(c.space.s - 1))


def functional_of(c: CurveClass) -> CoxFunctional:
    return CoxFunctional(chamber_pairings(c))


def chamber_face(c: CurveClass):
    """Zero set X of the pairings if c lies in the closed chamber, else None."""
    p = chamber_pairings(c)
    if any(v < 0 for v in p):
        return None
    return frozenset(i for i, v in enumerate(p) if v == 0)


def reflect_functional(graph: CoxGraph, f: CoxFunctional, k: int) -> CoxFunctional:
    """(sigma_k f)(x_j) = f(sigma_k x_j) = f(x_j) - 2 B(x_j, x_k) f(x_k)."""
    _check_index(graph, k)
    fk = f.values[k]
    vals = list(f.values)
    vals[k] = -fk
    for j in graph.neighbours(k):
        vals[j] += fk
    return CoxFunctional(tuple(vals))


@dataclass(frozen=True)
class WeylWord:
    """Sequence of generator indices in application order.

    The first letter is applied first, so the word [i_1, ..., i_K] is the
    group element sigma_{i_K} ... sigma_{i_1}.
    """

    letters: Tuple[int, ...] = ()

    def __len__(self):
        return len(self.letters)

    def to_list(self) -> list:
        return list(self.letters)


def apply_word_functional(graph: CoxGraph, f: CoxFunctional, word: WeylWord) -> CoxFunctional:
    for k in word.letters:
        f = reflect_functional(graph, f, k)
    return f


@dataclass(frozen=True)
class TitsReduced:
    word: WeylWord
    g: CoxFunctional
    reduced = True


@dataclass(frozen=True)
class TitsCapExceeded:
    word: WeylWord
    g: CoxFunctional
    steps: int
    reduced = False


def tits_reduce(graph: CoxGraph, f: CoxFunctional, step_cap: int = 10_000) -> Union[TitsReduced, TitsCapExceeded]:
    """Move f into the closed fundamental chamber by simple reflections.

    Always reflects in the smallest generator on which the current
    functional is negative.
    """
    if step_cap < 0:
        raise ValueError("step_cap must be non-negative")
    letters: List[int] = []
    g = f
    while True:
        neg = next((k for k, v in enumerate(g.values) if v < 0), None)
        if neg is None:
            return TitsReduced(WeylWord(tuple(letters)), g)
        if len(letters) >= step_cap:
            return TitsCapExceeded(WeylWord(tuple(letters)), g, len(letters))
        g = reflect_functional(graph, g, neg)
        letters.append(neg)


# ---- the map Psi: A^1 -> A^{r-1} over the rationals ------------------------

def psi(D: DivisorClass) -> CurveClass:
    """H -> h, E_i -> e_i / (r-1); returns a class with rational coordinates."""
    r = D.space.r
    return CurveClass(D.space, Fraction(D.d), [Fraction(x, r - 1) for x in D.m])


def psi_scales_forms(D: DivisorClass) -> bool:
    return q_curve(psi(D)) == Fraction(q_div(D), D.space.r - 1)
