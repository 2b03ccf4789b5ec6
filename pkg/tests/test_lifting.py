import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import sympy_lift
from stringpoly.family import box_equations, build_family, evaluate_member, sample_param
from stringpoly.lifting import (
    PULLBACK_TABLE, ChainVerificationFailed, LiftMap, PLMap, check_pullback_table, chain_verify,
    classify_pieces, lift_pullback, pl_apply, pl_verify_polytope, pullback, table_pullback,
    tropical_lift, two_move_transport, verify_box_preservation, verify_roundtrip,
)
from stringpoly.weyl import BraidMove, MoveNotApplicable, applicable_moves, enumerate_words, parse_word, standard_word

W3 = enumerate_words(3)
THREE = [(w, m) for w in enumerate_words(2) + W3 for m in applicable_moves(w) if m.kind == "Three"]
TWO = [(w, m) for w in W3 for m in applicable_moves(w) if m.kind == "Two"]
MOVE_IDS = [f"{w}@{m}" for w, m in THREE]
R121 = BraidMove("Three", 1)
points = st.lists(st.integers(-6, 6), min_size=3, max_size=3)


def test_pl_examples():
    pl = PLMap(R121)
    assert pl_apply(pl, (0, 3, 1)) == (3, 1, 0)
    assert pl((2, 4, 2)) == (2, 4, 2)
    assert pl((1, 2, 1)) == (1, 2, 1)


@given(points)
def test_pl_map_is_involution(x):
    pl = PLMap(R121)
    assert pl(pl(x)) == tuple(map(Fraction, x))


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_branches_agree_on_wall(xi, xk):
    pl = PLMap(R121)
    x = (xi, xi + xk, xk)
    assert pl.branch(1, x) == pl.branch(2, x) == pl(x)


@given(points)
def test_tropicalization_of_lift_is_pl_map(x):
    assert tropical_lift(R121, x) == PLMap(R121)(x)


@pytest.mark.parametrize("word,move", THREE, ids=MOVE_IDS)
def test_pl_map_carries_lattice_points(word, move):
    assert pl_verify_polytope(word, move).ok


@pytest.mark.parametrize("word,move", THREE, ids=MOVE_IDS)
def test_classification(word, move):
    assert classify_pieces(word, move).ok


def test_pullback_table_entries():
    assert all(ok for _, ok in check_pullback_table())
    assert len(PULLBACK_TABLE) == 15


@pytest.mark.parametrize("entry", range(len(PULLBACK_TABLE)))
def test_pullback_table_against_sympy(entry):
    C = sympy.Symbol("C")
    sources, images = PULLBACK_TABLE[entry]
    got, want = 0, 0
    for exps, alpha in sources:
        expr, u = sympy_lift((1, 2, 3), exps, C)
        got += C ** alpha * expr
    for exps, beta in images:
        want += C ** beta * u[0] ** exps[0] * u[1] ** exps[1] * u[2] ** exps[2]
    assert sympy.simplify(got - want) == 0


def _same_mod(g, ident, want):
    row = g.row(ident)
    diff = [x - want.get(s, 0) for s, x in zip(g.source, row)]
    return not any(diff) or g.lattice.contains(diff)


def test_n2_coefficient_map():
    _, g = lift_pullback(build_family(parse_word("1 2 1")), R121)
    table = {
        "L1": {"L1": 2, "L2": 1, "L3": -2},
        "L2": {"L1": -1, "L3": 2},
        "L3": {"L1": 1, "L2": 1, "L3": -1},
        "S1.1": {"S1.1": 1},
        "S2.1": {"S2.1": 1},
        "S2.2": {"S2.1": 1, "L1": 1, "L3": -1},
    }
    assert g.target == tuple(table)
    for ident, want in table.items():
        assert _same_mod(g, ident, want), ident


@pytest.mark.parametrize("word,move", THREE, ids=MOVE_IDS)
def test_pullback_lands_in_target_family(word, move):
    src = build_family(word)
    dst, g = lift_pullback(src, move)
    src_space, dst_space = box_equations(src), box_equations(dst)
    ok, witness = verify_box_preservation(src_space, dst_space, g)
    assert ok, witness
    # C = a[L_k]/a[L_i] is preserved
    i, k = move.pos, move.pos + 2
    row = [x - y for x, y in zip(g.row(f"L{k}"), g.row(f"L{i}"))]
    want = [int(s == f"L{k}") - int(s == f"L{i}") for s in g.source]
    assert src_space.lattice.contains([x - y for x, y in zip(row, want)])


@pytest.mark.parametrize("word,move", THREE[::3], ids=MOVE_IDS[::3])
def test_pullback_matches_numeric_substitution(word, move):
    src = build_family(word)
    dst, g = lift_pullback(src, move)
    a = sample_param(box_equations(src), 7)
    b = g.apply(a)
    rng = random.Random(3)
    for _ in range(3):
        t = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(word.N)]
        lifted = LiftMap((move.pos, move.pos + 1, move.pos + 2)).apply(t, a)
        assert evaluate_member(src, a, lifted) == evaluate_member(dst, b, t)


@pytest.mark.parametrize("word,move", THREE, ids=MOVE_IDS)
def test_table_pullback_equals_substitution(word, move):
    src = build_family(word)
    space = box_equations(src).coeff_space()
    direct = pullback(src.f.with_space(space), LiftMap((move.pos, move.pos + 1, move.pos + 2)), space)
    assert table_pullback(src, move) == direct


def test_corrupted_coefficient_map_is_caught():
    w = parse_word("1 2 1")
    src = build_family(w)
    dst, g = lift_pullback(src, R121)
    g.G[g.target.index("S2.2")] = [0] * len(g.source)
    ok, witness = verify_box_preservation(box_equations(src), box_equations(dst), g)
    assert not ok and witness


@pytest.mark.parametrize("word,move", THREE, ids=MOVE_IDS)
def test_roundtrip(word, move):
    r = verify_roundtrip(word, move)
    assert r.ok, r.details


def test_roundtrip_numeric_spot_check():
    a = {"L1": Fraction(1), "L3": Fraction(1)}
    lift = LiftMap((1, 2, 3))
    there = lift.apply((1, 1, 1), a)
    assert there == (2, 1, Fraction(1, 2))
    assert lift.apply(there, a) == (1, 1, 1)


@given(st.tuples(*[st.fractions(min_value=Fraction(1, 9), max_value=9)] * 3),
       st.fractions(min_value=Fraction(1, 9), max_value=9))
def test_lift_is_involution(t, c):
    a = {"L1": Fraction(1), "L3": c}
    lift = LiftMap((1, 2, 3))
    assert lift.apply(lift.apply(t, a), a) == t


@pytest.mark.parametrize("word,move", TWO, ids=[f"{w}@{m}" for w, m in TWO])
def test_two_move_transport(word, move):
    tr = two_move_transport(build_family(word), move)
    a = sample_param(box_equations(word), 1)
    t = tuple(Fraction(p, p + 1) for p in range(1, word.N + 1))
    assert evaluate_member(tr.source, a, t) == evaluate_member(tr.target, tr.apply_coeffs(a), tr.apply_point(t))


def test_wrong_move_kind_rejected():
    with pytest.raises(MoveNotApplicable):
        lift_pullback(build_family(parse_word("1 2 1")), BraidMove("Two", 1))


PAIRS = random.Random(2024).sample([(a, b) for a in W3 for b in W3 if a != b], 6)


@pytest.mark.parametrize("a,b", PAIRS, ids=[f"{a}->{b}" for a, b in PAIRS])
def test_chain(a, b):
    r = chain_verify(a, b, seed=11)
    assert r.ok and set(r.details["values"]) == {"0"}


def test_chain_trivial_and_example():
    w = standard_word(3)
    assert chain_verify(w, w).ok
    r = chain_verify(w, parse_word("3 1 2 1 3 2"), seed=5)
    assert r.ok and r.details["moves"]


def test_chain_rejects_mixed_rank():
    with pytest.raises(ValueError):
        chain_verify(parse_word("1 2 1"), standard_word(3))


def test_chain_failure_type():
    assert issubclass(ChainVerificationFailed, AssertionError)


@pytest.mark.parametrize("word,move", THREE[::4], ids=MOVE_IDS[::4])
def test_coefficient_maps_compose(word, move):
    src = build_family(word)
    mid, g1 = lift_pullback(src, move)
    _, g2 = lift_pullback(mid, move)
    both = g2.compose(g1)
    a = sample_param(box_equations(src), 2)
    assert both.apply(a) == g2.apply(g1.apply(a))
    assert both.is_identity()
    assert both.apply(a) == a
