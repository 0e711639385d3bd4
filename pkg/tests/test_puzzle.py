import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdp.algebra import Word, field_make
from fdp.codes import monomial_truth_table, reed_muller
from fdp.core import covering_radius, distance_to_code, leader_weights
from fdp.errors import (DimensionTooLarge, InvalidFace, LengthNotPowerOfTwo,
                        ParameterOutOfRange)
from fdp.puzzle import (SIMPLIFIED, WITH_P, LampState, PuzzleGoal, anf_coefficients,
                        min_moves, push, puzzle_radius, realize, solve_table)


def poly_table(monomials, m):
    bits = 0
    for mono in monomials:
        bits ^= monomial_truth_table(mono, m)
    return Word.from_bits(1 << m, bits)


def test_parse_and_print():
    s = LampState.parse("{13,24}", 4, include_P=False)
    assert s.lit == {frozenset({1, 3}), frozenset({2, 4})}
    assert str(s) == "{13,24}"
    t = LampState.parse("{P, 234, 1}", 4)
    assert str(t) == "{P,1,234}"
    with pytest.raises(InvalidFace):
        LampState.parse("{P}", 3, include_P=False)
    with pytest.raises(InvalidFace):
        LampState.parse("{15}", 4)
    with pytest.raises(InvalidFace):
        LampState.parse("{1x}", 4)


def test_realize_examples():
    # x1 x3 + x2 x4 lights the complements <24> and <13>
    f = poly_table([(1, 3), (2, 4)], 4)
    assert str(realize(f, include_P=False)) == "{13,24}"
    assert str(realize(f)) == "{13,24}"
    # the constant 1 (empty monomial) lights the whole simplex <1234>
    assert str(realize(poly_table([()], 4))) == "{1234}"
    # the top monomial lights P only in the variant that has P
    top = poly_table([(1, 2, 3)], 3)
    assert str(realize(top)) == "{P}"
    assert str(realize(top, include_P=False)) == "{}"
    with pytest.raises(LengthNotPowerOfTwo):
        realize(Word(field_make(2, 1), [0, 1, 1]))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.data())
def test_anf_roundtrip(m, data):
    bits = data.draw(st.integers(0, (1 << (1 << m)) - 1))
    f = Word.from_bits(1 << m, bits)
    coeffs = anf_coefficients(f)
    rebuilt = 0
    for subset, c in enumerate(coeffs):
        if c:
            mono = tuple(i + 1 for i in range(m) if subset >> i & 1)
            rebuilt ^= monomial_truth_table(mono, m)
    assert rebuilt == bits


def test_push_examples():
    full = push(LampState(4, 0), {1, 2, 3, 4})
    assert len(full.lit) == 16  # 15 faces and P
    s = push(LampState(3, 0, include_P=False), {1, 2})
    assert s.lit == {frozenset({1}), frozenset({2}), frozenset({1, 2})}
    with pytest.raises(InvalidFace):
        push(LampState(3, 0, include_P=False), set())
    assert push(push(full, {2, 3}), {2, 3}) == full


@settings(max_examples=100, deadline=None)
@given(st.integers(0, (1 << 16) - 1), st.integers(0, 15))
def test_push_is_point_flip(bits, face):
    # pushing face F equals flipping f at the point whose support is [m] minus F
    f = Word.from_bits(16, bits)
    pushed = push(realize(f), {i + 1 for i in range(4) if face >> i & 1})
    point = 15 ^ face
    assert pushed == realize(Word.from_bits(16, bits ^ (1 << point)))


def test_goal():
    goal = PuzzleGoal(1)
    # m = 4, k = 1: faces with at most 2 vertices, and P
    mask = goal.relevant_mask(4)
    assert bin(mask).count("1") == 1 + 4 + 6
    assert goal.solved(LampState.parse("{123,1234}", 4))
    assert not goal.solved(LampState.parse("{12}", 4))
    with pytest.raises(ParameterOutOfRange):
        PuzzleGoal(5).relevant_mask(4)


def test_example_moves():
    s = LampState.parse("{13,24}", 4, include_P=False)
    assert min_moves(s, PuzzleGoal(1)) == 5
    assert puzzle_radius(4, 1, SIMPLIFIED) == 5
    assert puzzle_radius(4, 1, WITH_P) == 6


def test_example_is_witness_for_rm14():
    f = poly_table([(1, 3), (2, 4)], 4)
    assert distance_to_code(f, reed_muller(1, 4)) == 6
    assert min_moves(realize(f), PuzzleGoal(1)) == 6


def test_min_moves_matches_table():
    table = solve_table(4, 2, WITH_P)
    rng = np.random.default_rng(1)
    for mask in rng.integers(0, 1 << 16, size=40):
        s = LampState(4, int(mask))
        assert min_moves(s, PuzzleGoal(2)) == table[int(mask)]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_bridge_with_p(m):
    for k in range(m + 1):
        table = solve_table(m, k, WITH_P)
        code = reed_muller(k, m)
        for bits in range(1 << (1 << m)) if m < 4 else range(0, 1 << 16, 97):
            f = Word.from_bits(1 << m, bits)
            assert table[realize(f).mask] == distance_to_code(f, code)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_radius_offset(m):
    # dropping P saves exactly one move on the hardest state when k < m
    for k in range(m + 1):
        r = covering_radius(reed_muller(k, m))
        assert puzzle_radius(m, k, WITH_P) == r
        assert puzzle_radius(m, k, SIMPLIFIED) == (r - 1 if k < m else 0)


def test_simplified_table_marks_unused_states():
    table = solve_table(3, 1, SIMPLIFIED)
    assert (table[1::2] == -1).all()
    assert (table[0::2] >= 0).all()


def test_limits():
    with pytest.raises(DimensionTooLarge):
        solve_table(5, 1)
    with pytest.raises(DimensionTooLarge):
        LampState(6, 0)
    with pytest.raises(ParameterOutOfRange):
        solve_table(3, 1, "other")
    # bridge-only mode at m = 5 still realizes states
    f = Word.from_bits(32, 0xDEADBEEF)
    assert realize(f).m == 5
