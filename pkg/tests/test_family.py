from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from stringpoly.family import (
    BoxEquationViolated, ZeroCoordinate, box_equations, build_family, evaluate_member,
    redundant_inequalities, sample_param,
)
from stringpoly.polytope import dual_polytope, face_fan_ranks, interior_point, string_polytope
from stringpoly.weyl import enumerate_words, parse_word, standard_word

W3 = enumerate_words(3)
SPACES = {w: box_equations(w) for w in enumerate_words(2) + W3}


def test_rank_one_family():
    fam = build_family(parse_word("1"))
    assert str(fam.f) == "1 - a[L1]*t1 - a[S1.1]*t1^-1"
    space = box_equations(fam)
    assert space.equations == [] and space.dim == 2


def test_n2_family_and_equation():
    fam = build_family(parse_word("1 2 1"))
    assert str(fam.f) == ("1 - a[L1]*t1*t2^-1*t3^2 - a[L2]*t2*t3^-1 - a[L3]*t3"
                          " - a[S2.1]*t3^-1 - a[S1.2]*t2^-1*t3 - a[S1.1]*t1^-1")
    space = SPACES[parse_word("1 2 1")]
    assert [e.text() for e in space.equations] == ["a[S1.1]*a[L1] = a[S1.2]*a[L3]"]
    assert space.dim == 5
    assert [e.text() for e in SPACES[parse_word("2 1 2")].equations] == ["a[S2.1]*a[L1] = a[S2.2]*a[L3]"]


def test_lambda2_monomial_of_example():
    fam = build_family(parse_word("3 1 2 1 3 2"))
    assert fam.exponent("L2") == (0, 1, -1, 2, 0, -1)


def test_known_dimensions():
    std = SPACES[standard_word(3)]
    assert (std.r, std.dim) == (12, 9)
    ex = box_equations(parse_word("3 1 2 1 3 2"))
    assert (ex.r, ex.dim) == (13, 9)


def test_dimension_invariant_over_orbit():
    assert {SPACES[w].dim for w in W3} == {9}
    assert all(SPACES[w].saturation == 1 for w in W3)


@pytest.mark.parametrize("word", [parse_word("1 2 1"), standard_word(3)], ids=str)
def test_dimension_identity(word):
    poly = string_polytope(word)
    dual = dual_polytope(poly, interior_point(word, poly))
    _, pic = face_fan_ranks(dual)
    assert SPACES[word].dim == pic + word.N


def test_non_standard_word_breaks_dimension_identity():
    # Picard rank 2 there, but dim P stays 9
    w = parse_word("3 1 2 1 3 2")
    poly = string_polytope(w)
    _, pic = face_fan_ranks(dual_polytope(poly, interior_point(w, poly)))
    assert box_equations(w).dim == 9 != pic + w.N


def test_evaluate_member():
    fam = build_family(parse_word("1"))
    assert evaluate_member(fam, [1, 1], [1]) == -1
    assert evaluate_member(fam, [Fraction(1, 4), 1], [2]) == 0
    with pytest.raises(ZeroCoordinate):
        evaluate_member(fam, [1, 1], [0])
    with pytest.raises(ZeroCoordinate):
        evaluate_member(fam, [0, 1], [1])


def test_box_equation_violation_is_reported():
    w = parse_word("1 2 1")
    fam = build_family(w)
    a = dict.fromkeys(fam.symbols, Fraction(1))
    assert evaluate_member(fam, a, [1, 1, 1], SPACES[w]) == -5
    a["S1.1"] = Fraction(2)
    with pytest.raises(BoxEquationViolated):
        evaluate_member(fam, a, [1, 1, 1], SPACES[w])


@pytest.mark.parametrize("word", list(SPACES), ids=str)
def test_all_ones_lies_on_parameter_space(word):
    space = SPACES[word]
    assert space.satisfied_by(dict.fromkeys(space.symbols, 1)) is None


@given(st.sampled_from(W3), st.integers(0, 10**6))
def test_sample_param_satisfies_equations(word, seed):
    space = SPACES[word]
    a = sample_param(space, seed)
    assert space.satisfied_by(a) is None
    assert all(v > 0 for v in a.values())
    assert a == sample_param(space, seed)


@pytest.mark.parametrize("word", W3, ids=str)
def test_equations_have_binomial_shape(word):
    for eq in SPACES[word].equations:
        assert sorted(eq.exponent) == [-1, -1] + [0] * (len(eq.exponent) - 4) + [1, 1]
        assert eq.lam_top == f"L{eq.box.top}" and eq.lam_bot == f"L{eq.box.bot}"


def test_every_inequality_is_a_facet_at_small_rank():
    for w in enumerate_words(2) + W3[::4]:
        assert redundant_inequalities(build_family(w)) == []


def test_family_json_shape():
    j = build_family(parse_word("1 2 1")).to_json()
    assert set(j) == {"word", "monomials", "f"}
    assert j["monomials"]["L1"] == [1, -1, 2]
