import random
from itertools import combinations_with_replacement, permutations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import raw_orbit
from weyl_lines.chow import CurveClass, SpaceParams, anticanonical_curve, bilinear_curve, line, q_curve
from weyl_lines.classify import (
    NO_LINEAR,
    NO_QUADRATIC,
    NO_REDUCED,
    SpiWitness,
    WeylLineVerdict,
    apply_word,
    equivalence_report,
    expected_linear,
    expected_quadratic,
    is_weyl_line,
    noether_check,
    spi_witness_search,
    target_line,
)
from weyl_lines.cremona import phi_curve, projection_inequality

P3 = SpaceParams(3, 11)
G = CurveClass(P3, 7, [4] + [1] * 10)
J = CurveClass(P3, 13, [4] * 5 + [1] * 6)


def cubic(s=6, through=6):
    return CurveClass(SpaceParams(3, s), 3, [1] * through + [0] * (s - through))


def test_targets():
    assert target_line(P3, -1) == line(P3, [1, 2])
    assert target_line(P3, 0) == line(P3, [1])
    assert target_line(P3, 1) == line(P3)
    with pytest.raises(ValueError):
        target_line(P3, 2)


def test_example_g():
    v = is_weyl_line(G, -1)
    assert not v and v.reason == NO_REDUCED
    assert len(v.trace) == 1


def test_example_j():
    v = is_weyl_line(J, -1)
    assert not v and v.reason == NO_REDUCED
    assert [st_.cls for st_ in v.trace] == [J, G]
    assert v.trace[0].phi_applied and not v.trace[1].phi_applied


def test_twisted_cubic_through_six():
    v = is_weyl_line(cubic(), -1)
    assert v
    assert v.trace[-1].cls == line(SpaceParams(3, 6), [1, 2])
    assert [st_.cls.d for st_ in v.trace] == [3, 1]


def test_twisted_cubic_through_five():
    c = cubic(7, 5)
    assert phi_curve(c, [1, 2, 3, 4]) == CurveClass(c.space, 1, [0, 0, 0, 0, 1, 0, 0])
    v = is_weyl_line(c, 0)
    assert v
    assert v.trace[-1].cls == line(c.space, [1])


def test_invariant_prefilter():
    assert is_weyl_line(cubic(), 0).reason == NO_LINEAR
    # right linear invariant, wrong quadratic: (5; 2,2,2,2,1,1) has <F,c> = 0, <c,c> = -11
    c = CurveClass(SpaceParams(3, 6), 5, [2, 2, 2, 2, 1, 1])
    assert bilinear_curve(anticanonical_curve(c.space), c) == 0
    assert is_weyl_line(c, -1).reason == NO_QUADRATIC


def test_degree_one_inputs():
    space = SpaceParams(3, 6)
    assert is_weyl_line(line(space, [3, 5]), -1)
    assert is_weyl_line(line(space), 1)
    with pytest.raises(ValueError):
        is_weyl_line(CurveClass(space, 0, [0] * 6), 1)
    with pytest.raises(ValueError):
        is_weyl_line(CurveClass(space, 2, [-1, 0, 0, 0, 0, 0]), 1)
    with pytest.raises(ValueError):
        is_weyl_line(line(space), 3)


@pytest.mark.parametrize("r,s,dmax", [(2, 9, 9), (3, 9, 9), (4, 10, 8)])
def test_low_degree_exits_unused(r, s, dmax):
    """On non-negative classes with the right invariants, No always comes from a reduced class."""
    space = SpaceParams(r, s)
    reasons = set()
    for i in (-1, 0, 1):
        for d in range(1, dmax + 1):
            for m in combinations_with_replacement(range(d, -1, -1), s):
                c = CurveClass(space, d, m)
                v = is_weyl_line(c, i)
                if v.reason not in (NO_LINEAR, NO_QUADRATIC):
                    reasons.add(v.reason)
    assert reasons == {None, NO_REDUCED}


def test_verdict_round_trip():
    v = is_weyl_line(J, -1)
    assert WeylLineVerdict.from_dict(v.to_dict()) == v


# ---- oracle equivalence -----------------------------------------------------

def _nonneg_classes(space, dmax, i):
    r, s = space.r, space.s
    lin, quad = expected_linear(r, i), expected_quadratic(r, i)
    for d in range(1, dmax + 1):
        for sorted_m in combinations_with_replacement(range(d, -1, -1), s):
            c = CurveClass(space, d, sorted_m)
            if bilinear_curve(anticanonical_curve(space), c) == lin and q_curve(c) == quad:
                for m in set(permutations(sorted_m)):
                    yield CurveClass(space, d, m)


@pytest.mark.parametrize("r,s", [(2, 5), (2, 6), (3, 6), (3, 7), (4, 7), (5, 8)])
@pytest.mark.parametrize("i", [-1, 0, 1])
def test_agrees_with_orbit_oracle(r, s, i):
    space = SpaceParams(r, s)
    target = target_line(space, i)
    orbit = raw_orbit((target.d,) + target.m, r)
    count = 0
    for c in _nonneg_classes(space, 5, i):
        count += 1
        assert bool(is_weyl_line(c, i)) == (((c.d,) + c.m) in orbit), c
    assert count > 0


# ---- Yes traces ------------------------------------------------------------------

def _random_translate(rng, space, i, length):
    c = target_line(space, i)
    for _ in range(length):
        I = rng.sample(range(1, space.s + 1), space.r + 1)
        nxt = phi_curve(c, I)
        if nxt.d >= 1 and min(nxt.m) >= 0:
            c = nxt
    return c


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([(3, 6), (3, 7), (3, 9), (4, 9), (5, 10)]),
    st.sampled_from([-1, 0, 1]),
    st.integers(0, 8),
    st.randoms(use_true_random=False),
)
def test_yes_trace_properties(rs, i, length, rng):
    space = SpaceParams(*rs)
    c = _random_translate(rng, space, i, length)
    v = is_weyl_line(c, i)
    assert v
    degrees = [st_.cls.d for st_ in v.trace]
    assert all(a > b for a, b in zip(degrees, degrees[1:]))
    for st_ in v.trace:
        assert st_.cls.d > 0 and min(st_.cls.m) >= 0
        if st_.cls.d > 1:
            assert projection_inequality(st_.cls, i)
    assert spi_witness_search(c, i, depth_cap=2, breadth_cap=8) is None


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=8, max_size=8), st.integers(1, 14), st.sampled_from([-1, 0, 1]))
def test_witness_implies_no(m, d, i):
    c = CurveClass(SpaceParams(3, 8), d, m)
    w = spi_witness_search(c, i, depth_cap=1, breadth_cap=8)
    if w is not None:
        assert w.value < 1 and w.degree_check > 1
        assert not is_weyl_line(c, i)


# ---- strong projection inequality -----------------------------------------------

def test_witness_for_g():
    w = spi_witness_search(G, -1)
    assert (w.depth, w.k, w.value, w.degree_check) == (0, 1, -1, 7)


def test_witness_for_j():
    w = spi_witness_search(J, -1)
    assert w.depth == 1 and w.word == (("phi", (1, 2, 3, 4)),)
    assert (w.k, w.value, w.degree_check) == (5, -1, 7)
    # value recomputed through the action on h - e_5
    assert bilinear_curve(J, apply_word(line(P3, [5]), w.word)) == -1
    assert SpiWitness.from_dict(w.to_dict()) == w


@pytest.mark.parametrize("depth,breadth", [(0, 1), (2, 4), (3, 64)])
def test_no_witness_for_cubic(depth, breadth):
    assert spi_witness_search(cubic(), -1, depth, breadth) is None


def test_witness_caps_validated():
    with pytest.raises(ValueError):
        spi_witness_search(G, -1, depth_cap=-1)
    with pytest.raises(ValueError):
        spi_witness_search(G, -1, breadth_cap=0)


# ---- Noether -----------------------------------------------------------------------

def test_noether_examples():
    res = noether_check(J, -1)
    assert res.applicable and res.conclusion
    res = noether_check(G, -1)
    assert not res.applicable
    res = noether_check(cubic(), -1)
    assert res.applicable and res.conclusion


def test_noether_errors():
    with pytest.raises(ValueError):
        noether_check(line(SpaceParams(4, 6), [1, 2]), -1)
    with pytest.raises(ValueError):
        noether_check(line(P3, [1, 2]), -1)


# ---- report ----------------------------------------------------------------------------

def test_report_j():
    rep = equivalence_report(J, -1)
    assert rep["invariant_linear"]["holds"] and rep["invariant_quadratic"]["holds"]
    assert rep["spi_witness"] is not None
    assert rep["verdict"] == "no" and rep["consistency"] == "consistent"


def test_report_cubic():
    rep = equivalence_report(cubic(), -1)
    assert rep["spi_witness"] is None and rep["verdict"] == "yes"
    assert rep["consistency"] == "consistent"


@pytest.mark.parametrize("i", [-1, 0, 1])
def test_report_degree_two(i):
    rng = random.Random(i)
    for _ in range(10):
        c = CurveClass(SpaceParams(3, 7), 2, [rng.randint(0, 2) for _ in range(7)])
        rep = equivalence_report(c, i)
        assert rep["verdict"] == "no"
        assert any("d=2" in n for n in rep["notes"])


def test_report_errors():
    with pytest.raises(ValueError):
        equivalence_report(line(SpaceParams(4, 7), [1, 2]), -1)
