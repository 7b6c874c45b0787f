"""Standard Cremona transformations, projections and the related inequalities."""
from __future__ import annotations

from typing import Iterable, Sequence, Tuple, Union

from .chow import CurveClass, DivisorClass, SpaceParams, bilinear_curve, line, pair


def index_set(space: SpaceParams, indices: Iterable[int]) -> Tuple[int, ...]:
    """Validate and normalise a set of r+1 distinct 1-based point indices."""
    I = tuple(sorted(indices))
    if len(I) != space.r + 1:
        raise ValueError(f"index set must have r+1={space.r + 1} elements, got {len(I)}")
    if len(set(I)) != len(I):
        raise ValueError(f"repeated index in {I}")
    if I[0] < 1 or I[-1] > space.s:
        raise ValueError(f"indices {I} out of range 1..{space.s}")
    return I


def standard_index_set(space: SpaceParams) -> Tuple[int, ...]:
    return tuple(range(1, space.r + 2))


def phi_div(D: DivisorClass, I: Sequence[int]) -> DivisorClass:
    """Cremona transformation centred at the points I, acting on A^1."""
    I = index_set(D.space, I)
    t = (D.space.r - 1) * D.d - sum(D.m[i - 1] for i in I)
    m = list(D.m)
    for i in I:
        m[i - 1] += t
    return DivisorClass(D.space, D.d + t, m)


def phi_curve(c: CurveClass, I: Sequence[int]) -> CurveClass:
    """Cremona transformation centred at the points I, acting on A^{r-1}."""
    I = index_set(c.space, I)
    t = c.d - sum(c.m[i - 1] for i in I)
    m = list(c.m)
    for i in I:
        m[i - 1] += t
    return CurveClass(c.space, c.d + (c.space.r - 1) * t, m)


def phi_top(c: CurveClass) -> CurveClass:
    """phi applied at the first r+1 positions, the standard step of reduction."""
    r = c.space.r
    t = c.d - sum(c.m[: r + 1])
    m = [x + t for x in c.m[: r + 1]] + list(c.m[r + 1:])
    return CurveClass(c.space, c.d + (r - 1) * t, m)


def transpose(x, i: int):
    """Swap the multiplicities at 1-based positions i and i+1."""
    m = list(x.m)
    m[i - 1], m[i] = m[i], m[i - 1]
    return type(x)(x.space, x.d, m)


def pairing_invariance_check(D: DivisorClass, c: CurveClass, I: Sequence[int]) -> bool:
    return pair(D, c) == pair(phi_div(D, I), phi_curve(c, I))


def is_cremona_reduced(x: Union[CurveClass, DivisorClass]) -> bool:
    """No phi_I can lower the degree of x."""
    r = x.space.r
    top = sum(sorted(x.m, reverse=True)[: r + 1])
    if isinstance(x, CurveClass):
        return x.d >= top
    return (r - 1) * x.d >= top


def satisfies_nondegenerate_bound(c: CurveClass) -> bool:
    """d >= sum of m_i over every J with 1 <= |J| <= r.

    Irreducible non-degenerate curves always satisfy this.
    """
    top = sorted(c.m, reverse=True)[: c.space.r]
    return c.d >= max(sum(top[:k]) for k in range(1, len(top) + 1))


def project(c: CurveClass, i: int) -> CurveClass:
    """Formal projection from the i-th point (1-based) onto Y^{r-1}_{s-1}."""
    r, s = c.space.r, c.space.s
    if r < 3:
        raise ValueError("projection needs r >= 3")
    target = SpaceParams(r - 1, s - 1)
    m = c.m[: i - 1] + c.m[i:]
    return CurveClass(target, c.d - c.m[i - 1], m)


def projection_inequality(c: CurveClass, i: int) -> bool:
    """d + m_j <= sum_{k != j} m_k + i for every j."""
    total = sum(c.m)
    return all(c.d + mj <= total - mj + i for mj in c.m)


def projection_inequality_shortcut(c: CurveClass) -> bool:
    """d - (r-1) max(m) >= 1; equivalent to the full check on numerical (i)-classes."""
    return c.d - (c.space.r - 1) * max(c.m) >= 1


def projection_inequality_bilinear(c: CurveClass) -> bool:
    """<c, h - e_j> >= 1 for every j."""
    return all(bilinear_curve(c, line(c.space, [j])) >= 1 for j in range(1, c.space.s + 1))


def projection_commutes_check(c: CurveClass, I: Sequence[int], i: int) -> bool:
    """pi_i(phi_I(c)) == phi_{I - {i}}(pi_i(c))."""
    I = index_set(c.space, I)
    if i not in I:
        raise ValueError(f"{i} is not in {I}")
    left = project(phi_curve(c, I), i)
    reduced = [j if j < i else j - 1 for j in I if j != i]
    right = phi_curve(project(c, i), reduced)
    return left == right
