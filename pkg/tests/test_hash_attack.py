from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdp.errors import InstanceTooLarge, NoCollisionPairs, ParameterOutOfRange
from fdp.hash_attack import (HashInstance, alpha0, count_profiles, exact_success_probability,
                             lemma1_bound, lemma1_terms, monotonicity_violations,
                             phi_min_oracle, phi_minimizers, random_approximation, random_hash,
                             ratio_lemma_check, sample_collision_pairs, simulate_attack)


def brute_phi_min(x, n, d):
    """Minimum of phi2/phi1 over every (a, b), written independently of the package."""
    best = None
    for a in product(range(x + 1), repeat=n):
        if sum(a) != x:
            continue
        phi1 = sum(v * (v - 1) for v in a)
        if phi1 == 0:
            continue
        for b in product(*(range(v + 1) for v in a)):
            if sum(b) != d:
                continue
            phi2 = sum((v - w) * (v - w - 1) for v, w in zip(a, b))
            val = Fraction(phi2, phi1)
            if best is None or val < best:
                best = val
    return best


def test_bound_examples():
    assert lemma1_bound(8, 2, 1) == Fraction(9, 16)
    assert alpha0(8, 2, 1) == 3
    assert lemma1_terms(8, 2, 1) == (18, 32)
    assert lemma1_bound(10, 3, 9) == 0
    assert lemma1_bound(16, 2, 1) > lemma1_bound(16, 2, 2)


def test_bound_errors():
    for args in [(8, 1, 1), (8, 2, 0), (8, 2, 8)]:
        with pytest.raises(ParameterOutOfRange):
            lemma1_bound(*args)


def test_oracle_small_cases():
    assert phi_min_oracle(4, 2, 1, method="enumerate") == brute_phi_min(4, 2, 1)
    assert lemma1_bound(4, 2, 1) <= phi_min_oracle(4, 2, 1)
    # the minimum at (8, 2, 1) is 11/16, strictly above the closed form 9/16
    val, argmin = phi_minimizers(8, 2, 1)
    assert val == Fraction(11, 16) == brute_phi_min(8, 2, 1)
    assert lemma1_bound(8, 2, 1) < val
    # minimisers put the single changed point in one bucket
    assert all(sum(1 for v in b if v) == 1 for a, b in argmin)
    assert phi_min_oracle(10, 2, 9) >= 0 == lemma1_bound(10, 2, 9)


@pytest.mark.parametrize("x,n,d", [(5, 2, 2), (6, 3, 2), (7, 2, 3), (6, 4, 1), (9, 3, 4)])
def test_dp_oracle_matches_enumeration(x, n, d):
    ref = brute_phi_min(x, n, d)
    assert phi_min_oracle(x, n, d, method="dp") == ref
    assert phi_min_oracle(x, n, d, method="enumerate") == ref


def test_oracle_limits():
    assert count_profiles(6, 2, 1) == sum(
        1 for a in product(range(7), repeat=2) if sum(a) == 6
        for b in product(*(range(v + 1) for v in a)) if sum(b) == 1)
    with pytest.raises(InstanceTooLarge):
        phi_min_oracle(200, 4, 50, method="enumerate")
    with pytest.raises(NoCollisionPairs):
        phi_min_oracle(1, 2, 0)  # one point: no profile has a collision pair


def test_lower_bound_validity_small_grid():
    for n in (2, 3):
        for x in range(n + 1, 13):
            for d in range(1, x):
                assert lemma1_bound(x, n, d) <= phi_min_oracle(x, n, d)


def test_monotonicity():
    # strict decrease holds except on the degenerate line n = 2, d = |X| - 1,
    # where both values are 0
    bad = monotonicity_violations(30, [2, 3, 4])
    assert all(n == 2 and d == x - 1 for x, n, d in bad)
    assert all(lemma1_bound(x, n, d - 1) == lemma1_bound(x, n, d) == 0 for x, n, d in bad)
    for x in range(3, 31):
        for n in (2, 3, 4):
            for d in range(2, x):
                if x >= d + (n - 1) ** 2:
                    assert lemma1_bound(x, n, d - 1) >= lemma1_bound(x, n, d)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10 ** 6), st.integers(0, 10 ** 6), st.integers(1, 10 ** 6))
def test_ratio_lemma(p, q, r):
    if p <= q:
        p, q = q + 1, min(p, q)
    assert ratio_lemma_check(p, q, r)
    assert Fraction(q, p) < Fraction(q + r, p + r)


def test_ratio_lemma_examples():
    assert ratio_lemma_check(2, 1, 1)
    assert ratio_lemma_check(10, 0, 5)
    with pytest.raises(ParameterOutOfRange):
        ratio_lemma_check(1, 2, 1)


def test_instance_bookkeeping():
    H = random_hash(40, 3, 1)
    inst = random_approximation(H, 3, 7, 2)
    assert inst.d == sum(1 for a, b in zip(inst.H, inst.H_prime) if a != b) == 7
    assert sum(inst.a) == 40 and sum(inst.b) == 7
    assert all(0 <= b <= a for a, b in zip(inst.a, inst.b))
    assert random_approximation(H, 3, 7, 2) == inst
    with pytest.raises(ParameterOutOfRange):
        HashInstance(3, 2, (0, 1, 1), (0, 1, 0), 2)


def test_random_approximation_is_uniform():
    H = (0, 1, 0, 1, 1, 0, 0, 1)
    trials = 10_000
    counts = Counter()
    for s in range(trials):
        inst = random_approximation(H, 2, 1, s)
        counts[next(i for i in range(8) if inst.H[i] != inst.H_prime[i])] += 1
    sigma = (trials * (1 / 8) * (7 / 8)) ** 0.5
    assert all(abs(counts[i] - trials / 8) <= 3 * sigma for i in range(8))


def test_exact_probability_by_pair_count():
    H = (0, 0, 1, 1, 1, 0)
    Hp = (0, 0, 1, 1, 0, 0)
    inst = HashInstance.from_maps(H, Hp, 2)
    good = total = 0
    for x1 in range(6):
        for x2 in range(6):
            if x1 != x2 and Hp[x1] == Hp[x2]:
                total += 1
                good += H[x1] == H[x2]
    assert exact_success_probability(inst) == Fraction(good, total)
    same = HashInstance.from_maps(H, H, 2)
    assert exact_success_probability(same) == 1
    with pytest.raises(NoCollisionPairs):
        exact_success_probability(HashInstance.from_maps((0, 1), (0, 1), 2))


def test_exact_probability_dominates_bounds():
    rng = np.random.default_rng(77)
    for i in range(500):
        x = int(rng.integers(6, 40))
        n = int(rng.integers(2, 5))
        d = int(rng.integers(1, x))
        inst = random_approximation(random_hash(x, n, 2 * i), n, d, 2 * i + 1)
        exact = exact_success_probability(inst)
        phi1, phi2 = inst.phi()
        assert exact >= Fraction(phi2, phi1)
        assert exact >= lemma1_bound(x, n, d)


def test_collision_pair_sampler_is_uniform():
    inst = HashInstance.from_maps((0, 0, 0, 1, 1, 2), (0, 0, 0, 1, 1, 2), 3)
    x1, x2 = sample_collision_pairs(inst, 80_000, np.random.default_rng(3))
    pairs = Counter(zip(x1.tolist(), x2.tolist()))
    # 6 ordered pairs in bucket 0, 2 in bucket 1
    assert set(pairs) == {(a, b) for a in range(3) for b in range(3) if a != b} | {(3, 4), (4, 3)}
    expected = 80_000 / 8
    sigma = (80_000 * (1 / 8) * (7 / 8)) ** 0.5
    assert all(abs(c - expected) <= 4 * sigma for c in pairs.values())


def test_simulator_identity_mode():
    H = random_hash(32, 4, 5)
    inst = HashInstance.from_maps(H, H, 4)
    rep = simulate_attack(inst, 1000, 1)
    assert rep.empirical_success == 1
    assert rep.analytic_bound is None
    assert rep.iterations_histogram == {1: 1000}


def test_simulator_examples():
    inst = HashInstance.from_maps((0, 0, 0, 0, 1, 1, 1, 1), (0, 0, 0, 0, 1, 1, 1, 0), 2)
    trials = 100_000
    rep = simulate_attack(inst, trials, 9)
    p = lemma1_bound(8, 2, 1)
    sigma = (float(p) * (1 - float(p)) / trials) ** 0.5
    assert float(rep.empirical_success) >= float(p) - 3 * sigma
    inst = random_approximation(random_hash(64, 4, 12), 4, 2, 13)
    rep = simulate_attack(inst, trials, 14)
    p = lemma1_bound(64, 4, 2)
    sigma = (float(p) * (1 - float(p)) / trials) ** 0.5
    assert float(rep.empirical_success) >= float(p) - 3 * sigma
    exact = float(exact_success_probability(inst))
    sigma = (exact * (1 - exact) / trials) ** 0.5
    assert abs(float(rep.empirical_success) - exact) <= 3 * sigma


def test_simulator_is_deterministic():
    inst = random_approximation(random_hash(20, 2, 1), 2, 3, 2)
    a, b = simulate_attack(inst, 5000, 3), simulate_attack(inst, 5000, 3)
    assert a == b
    assert sum(k * v for k, v in a.iterations_histogram.items()) <= 5000
    rec = a.as_record()
    assert rec["bound"] == "{}/{}".format(a.analytic_bound.numerator, a.analytic_bound.denominator)
    assert set(rec) == {"x_size", "n", "d", "alpha0", "bound", "empirical", "trials", "seed"}
