import pytest
from hypothesis import given, strategies as st

from oracles import all_reduced_words
from stringpoly.weyl import (
    BraidMove, MoveNotApplicable, NotReduced, RankTooLarge, apply_move, applicable_moves,
    enumerate_words, find_move_sequence, parse_word, standard_word, validate_reduced,
)

WORDS = {n: enumerate_words(n) for n in (1, 2, 3)}


def test_validate_examples():
    assert validate_reduced(3, [3, 1, 2, 1, 3, 2]).letters == (3, 1, 2, 1, 3, 2)
    assert validate_reduced(1, [1]).N == 1
    with pytest.raises(NotReduced):
        validate_reduced(2, [1, 1, 2])


def test_validate_rejects_wrong_length_and_letters():
    with pytest.raises(NotReduced):
        validate_reduced(2, [1, 2])
    with pytest.raises(NotReduced):
        validate_reduced(2, [1, 2, 1, 2])
    with pytest.raises((NotReduced, ValueError)):
        validate_reduced(2, [1, 3, 1])


def test_parse_word():
    assert parse_word("3 1 2 1 3 2") == parse_word("3,1,2,1,3,2")
    assert parse_word("1 2 1").n == 2
    with pytest.raises(NotReduced):
        parse_word("1 x 2")


def test_apply_move_examples():
    w = parse_word("1 2 1")
    assert apply_move(w, BraidMove("Three", 1)).letters == (2, 1, 2)
    assert apply_move(parse_word("3 1 2 1 3 2"), BraidMove("Two", 1)).letters == (1, 3, 2, 1, 3, 2)
    with pytest.raises(MoveNotApplicable):
        apply_move(w, BraidMove("Two", 1))


def test_word_counts():
    assert [len(WORDS[n]) for n in (1, 2, 3)] == [1, 2, 16]
    assert [w.letters for w in WORDS[2]] == [(1, 2, 1), (2, 1, 2)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(n):
    assert [w.letters for w in WORDS[n]] == all_reduced_words(n)


def test_rank_cap():
    with pytest.raises(RankTooLarge):
        enumerate_words(5)


def test_standard_word():
    assert standard_word(3).letters == (1, 2, 1, 3, 2, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_move_sequences_replay(n):
    for a in WORDS[n]:
        for b in WORDS[n]:
            w = a
            for m in find_move_sequence(a, b):
                w = apply_move(w, m)
            assert w == b


def test_move_sequence_small_cases():
    w = parse_word("1 2 1")
    assert find_move_sequence(w, w) == []
    assert find_move_sequence(w, parse_word("2 1 2")) == [BraidMove("Three", 1)]


@given(st.sampled_from(WORDS[3]), st.data())
def test_moves_are_involutions(w, data):
    moves = applicable_moves(w)
    m = data.draw(st.sampled_from(moves))
    back = apply_move(apply_move(w, m), m)
    assert back == w


def test_graph_is_connected_with_short_paths():
    a = standard_word(3)
    lengths = [len(find_move_sequence(a, b)) for b in WORDS[3]]
    assert max(lengths) >= 1 and lengths.count(0) == 1
