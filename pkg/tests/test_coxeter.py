from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import curve_classes, divisor_classes, spaces
from weyl_lines.chow import CurveClass, DivisorClass, SpaceParams, bilinear_div, line, pair, q_curve, q_div, special_classes
from weyl_lines.coxeter import (
    CoxFunctional,
    CoxGraph,
    CoxVector,
    WeylWord,
    alpha_letter,
    apply_word_functional,
    b_form,
    b_pair,
    b_positive_definite,
    beta,
    beta_basis,
    bilinear_div_matches_b,
    chamber_face,
    chamber_pairings,
    check_generator_relations,
    commuting_square_failures,
    finite_case_list,
    functional_of,
    geometric_action,
    psi,
    psi_scales_forms,
    reflect,
    reflect_functional,
    reflection_matrix,
    tits_reduce,
    weyl_finite,
)
from weyl_lines.reduction import r_table

GRAPHS = [(2, 4), (2, 8), (3, 5), (3, 7), (3, 9), (4, 8), (5, 9), (6, 12)]


def test_graph_shape():
    g = CoxGraph(3, 7)
    assert g.chains == (2, 4, 3)
    assert g.neighbours(0) == [4]
    assert g.degree(4) == 3
    assert len(g.edges) == 6
    with pytest.raises(ValueError):
        CoxGraph(3, 4)


@pytest.mark.parametrize("r,s", GRAPHS)
def test_generator_relations(r, s):
    assert check_generator_relations(CoxGraph(r, s)) == []


@pytest.mark.parametrize("r,s", GRAPHS)
def test_form_transport(r, s):
    assert bilinear_div_matches_b(CoxGraph(r, s)) == []


@pytest.mark.parametrize("r,s", GRAPHS)
def test_commuting_square(r, s):
    assert commuting_square_failures(CoxGraph(r, s)) == []


@pytest.mark.parametrize("r,s", [(3, 7), (3, 9), (4, 8), (5, 10)])
def test_phi_on_beta_basis(r, s):
    g = CoxGraph(r, s)
    X0, Xr1 = beta_basis(g, 0), beta_basis(g, r + 1)
    assert geometric_action(g, 0, Xr1) == Xr1 + X0
    assert geometric_action(g, 0, X0) == -X0
    for j in range(1, s):
        if j != r + 1:
            assert geometric_action(g, 0, beta_basis(g, j)) == beta_basis(g, j)


def test_alpha_letters():
    g = CoxGraph(3, 7)
    assert alpha_letter(g, 0) == ("phi", (1, 2, 3, 4))
    assert alpha_letter(g, 5) == ("tau", 5)


@pytest.mark.parametrize("r,s", GRAPHS)
def test_reflection_matrix_matches_reflect(r, s):
    g = CoxGraph(r, s)
    for i in range(s):
        mat = reflection_matrix(g, i)
        assert all(isinstance(x, int) for row in mat for x in row)
        for j in range(s):
            col = reflect(g, CoxVector.basis(g, j), i).coords
            assert [mat[k][j] for k in range(s)] == list(col)


@given(st.sampled_from(GRAPHS), st.data())
def test_reflections_preserve_b(rs, data):
    g = CoxGraph(*rs)
    coords = st.lists(st.integers(-5, 5), min_size=g.s, max_size=g.s)
    u = CoxVector(tuple(Fraction(x) for x in data.draw(coords)))
    v = CoxVector(tuple(Fraction(x) for x in data.draw(coords)))
    i = data.draw(st.integers(0, g.s - 1))
    assert b_pair(g, reflect(g, u, i).coords, reflect(g, v, i).coords) == b_pair(g, u.coords, v.coords)
    assert bilinear_div(beta(g, u), beta(g, v)) == b_pair(g, u.coords, v.coords)


def test_b_form_values():
    g = CoxGraph(3, 7)
    assert b_form(g, 0, 0) == 1
    assert b_form(g, 0, 4) == Fraction(-1, 2)
    assert b_form(g, 0, 1) == 0


@pytest.mark.parametrize("r", range(2, 9))
def test_finiteness_three_ways(r):
    for s in range(r + 2, r + 11):
        space = SpaceParams(r, s)
        expected = weyl_finite(space)
        assert finite_case_list(space) == expected
        assert b_positive_definite(CoxGraph(r, s)) == expected, (r, s)


def test_known_finite_types():
    # E6, E7, E8 appear for r = 2, s = 6, 7, 8
    assert all(weyl_finite(SpaceParams(2, s)) for s in (6, 7, 8))
    assert not weyl_finite(SpaceParams(2, 9))
    assert weyl_finite(SpaceParams(4, 8)) and not weyl_finite(SpaceParams(4, 9))


# ---- dual action ---------------------------------------------------------------

@given(st.sampled_from(GRAPHS), st.data())
def test_dual_action_matches_geometry(rs, data):
    g = CoxGraph(*rs)
    c = data.draw(curve_classes(g.space))
    k = data.draw(st.integers(0, g.s - 1))
    assert functional_of(geometric_action(g, k, c)) == reflect_functional(g, functional_of(c), k)


@given(st.sampled_from(GRAPHS), st.data())
def test_pairings_are_pairings_with_beta(rs, data):
    g = CoxGraph(*rs)
    c = data.draw(curve_classes(g.space))
    assert chamber_pairings(c) == tuple(pair(beta_basis(g, i), c) for i in range(g.s))


def test_faces_of_reduced_lines():
    cases = {
        (2, 3): {1},
        (3, 4): {1, 3},
        (3, 5): {0, 1, 2, 4},
        (3, 6): {1, 2, 3, 4, 5},
        (3, 7): {0, 2, 3, 4, 5, 6},
        (4, 8): {0, 2, 3, 4, 5, 6, 7},
    }
    for (r, s), face in cases.items():
        assert chamber_face(r_table(SpaceParams(r, s))) == frozenset(face)


def test_face_none_outside_chamber():
    assert chamber_face(line(SpaceParams(3, 7), [1, 2])) is None


def test_tits_reduce_hand_example():
    g = CoxGraph(3, 7)
    f = functional_of(line(g.space, [1, 2]))
    assert f.values == (-1, 0, 1, 0, 0, 0, 0)
    out = tits_reduce(g, f)
    assert out.reduced
    assert out.g.values == (0, 1, 0, 0, 0, 0, 0)
    assert out.word.letters.count(0) == 2
    assert apply_word_functional(g, f, out.word) == out.g


@pytest.mark.parametrize("r,s", [(2, 5), (2, 8), (3, 6), (3, 7), (4, 7), (4, 8), (5, 8), (6, 9)])
def test_tits_reduce_agrees_with_table(r, s):
    g = CoxGraph(r, s)
    out = tits_reduce(g, functional_of(line(g.space, [1, 2])))
    assert out.reduced
    assert out.g.values == chamber_pairings(r_table(g.space))


def test_tits_reduce_cap():
    g = CoxGraph(3, 9)
    out = tits_reduce(g, functional_of(line(g.space, [1, 2])), step_cap=50)
    assert not out.reduced and out.steps == 50


def test_word_is_application_order():
    g = CoxGraph(3, 7)
    f = CoxFunctional((1, 2, 3, 4, 5, 6, 7))
    w = WeylWord((0, 4))
    assert apply_word_functional(g, f, w) == reflect_functional(g, reflect_functional(g, f, 0), 4)


# ---- Psi ---------------------------------------------------------------------------

@pytest.mark.parametrize("r,s", [(2, 5), (3, 7), (4, 9)])
def test_psi_on_canonical(r, s):
    K, F = special_classes(SpaceParams(r, s))
    assert psi(K) == -F


@given(spaces(), st.data())
def test_psi_scales_forms(space, data):
    D = data.draw(divisor_classes(space))
    assert psi_scales_forms(D)
    assert q_curve(psi(D)) * (space.r - 1) == q_div(D)
