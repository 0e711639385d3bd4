"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line
with its measurements and runtime."""

import json
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

from fdp.algebra import Word, field_of_order
from fdp.codes import (BINARY, golay23, golay24, hamming_code, random_code,
                       reed_muller, reed_solomon, roots_product)
from fdp.core import (boolean_bounds, coset_profile, covering_radius, distance_to_code,
                      lower_bound_ell)
from fdp.hash_attack import (exact_success_probability, lemma1_bound, phi_min_oracle,
                             random_approximation, random_hash, simulate_attack)
from fdp.nbprg import (FiniteDistribution, nb_advantage, random_prg_instance,
                       stat_distance_max, stat_distance_sum, subset_advantage,
                       theorem1_empirical_check)
from fdp.puzzle import (SIMPLIFIED, WITH_P, LampState, PuzzleGoal, min_moves, puzzle_radius,
                        realize, solve_table)

from conftest import ACCEPTANCE_LINES

GOLDEN = Path(__file__).parent / "golden"
TABLE2_PAIRS = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)]


@contextmanager
def criterion(number, title, limit):
    """Time the block; record and print a PASS/FAIL line. ``state`` collects
    the verdict and detail text from the body."""
    state = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        in_time = limit is None or elapsed < limit
        verdict = "PASS" if state["ok"] and in_time else "FAIL"
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        timing = f"{elapsed:.2f} s{budget}" + ("" if in_time else " TOO SLOW")
        line = f"{verdict} criterion {number}: {title} -- {state['detail']} [{timing}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert in_time, f"criterion {number} exceeded {limit} s ({elapsed:.2f} s)"


def test_criterion_1_table1():
    golden = json.loads((GOLDEN / "table1.json").read_text())["ell"]
    with criterion(1, "Table 1 values of l_{n,k}", 1.0) as st:
        mismatches, total = [], 0
        for m, row in golden.items():
            m = int(m)
            for gap, expected in enumerate(row, start=1):
                total += 1
                got = boolean_bounds(m, m - gap).lower_ell
                if got != expected:
                    mismatches.append((m, gap, got, expected))
        st["ok"] = total == 35 and not mismatches
        st["detail"] = f"{total - len(mismatches)}/{total} cells match"
    assert st["ok"], mismatches


def test_criterion_2_table2():
    golden = json.loads((GOLDEN / "table2.json").read_text())
    with criterion(2, "Table 2 radii and coset profiles", 10.0) as st:
        bad = []
        for row in golden:
            prof = coset_profile(reed_muller(row["k"], row["n"]))
            if prof.r != row["r"] or list(prof.h) != row["h"]:
                bad.append((row["n"], row["k"], prof.r, prof.h))
        st["ok"] = not bad and [(r["n"], r["k"]) for r in golden] == TABLE2_PAIRS
        st["detail"] = f"{len(golden) - len(bad)}/6 rows match, incl. (4,1) -> r=6"
    assert st["ok"], bad


def test_criterion_3_perfect_codes():
    with criterion(3, "Hamming/Golay covering radii and sphere-packing equality", 60.0) as st:
        h7, g23, g24 = hamming_code(3), golay23(), golay24()
        radii = (covering_radius(h7), covering_radius(g23), covering_radius(g24))
        eq = []
        for code in [hamming_code(r) for r in (2, 3, 4, 5)] + [g23]:
            t = (code.min_distance() - 1) // 2
            eq.append(2 ** code.k_dim * sum(comb(code.n, i) for i in range(t + 1)) == 2 ** code.n)
        st["ok"] = radii == (1, 3, 4) and all(eq)
        st["detail"] = f"r(H7,G23,G24) = {radii}; perfect equality {sum(eq)}/{len(eq)}"
    assert st["ok"]


def test_criterion_4_reed_solomon():
    with criterion(4, "Reed-Solomon r = n-k with explicit witness", 60.0) as st:
        bad, count = [], 0
        for q in (4, 5, 7, 8):
            f = field_of_order(q)
            for n in range(2, q):
                for k in range(1, n):
                    count += 1
                    code = reed_solomon(f, n, k)
                    r = covering_radius(code)
                    wpoly = roots_product(f, n - k - 1)
                    w = Word(f, wpoly + [0] * (n - len(wpoly)))
                    dw = distance_to_code(w, code)
                    if r != n - k or dw < n - k:
                        bad.append((q, n, k, r, dw))
        st["ok"] = not bad
        st["detail"] = f"{count - len(bad)}/{count} triples (q in 4,5,7,8)"
    assert st["ok"], bad


def test_criterion_5_lemma1():
    with criterion(5, "closed-form bound <= exhaustive minimum; monotone in d", 300.0) as st:
        cases = equal = 0
        violations, gaps = [], []
        for n in (2, 3, 4):
            for x in range(2, 25):
                for d in range(1, x):
                    cases += 1
                    bound = lemma1_bound(x, n, d)
                    best = phi_min_oracle(x, n, d)
                    if bound > best:
                        violations.append((x, n, d, bound, best))
                    elif bound == best:
                        equal += 1
                    else:
                        gaps.append(best - bound)
        mono_checked, mono_bad, ties = 0, [], 0
        for n in (2, 3, 4):
            for x in range(3, 25):
                for d in range(2, x):
                    if x < d + (n - 1) ** 2:
                        continue
                    mono_checked += 1
                    prev, cur = lemma1_bound(x, n, d - 1), lemma1_bound(x, n, d)
                    if prev > cur:
                        continue
                    if prev == cur == 0:
                        ties += 1  # alpha0 = 0 at both d-1 and d: the bound is identically 0
                    else:
                        mono_bad.append((x, n, d, prev, cur))
        st["ok"] = not violations and not mono_bad
        st["detail"] = (f"{cases} cases, {len(violations)} violations, {equal} equalities, "
                        f"max gap {max(gaps, default=0)}; monotonicity {mono_checked} pairs, "
                        f"{len(mono_bad)} failures, {ties} ties at bound 0")
    assert st["ok"], (violations[:5], mono_bad[:5])


def attack_grid():
    cells = [(x, n, d) for x in (16, 64) for n in (2, 4) for d in (1, 2, 4)]
    return [cells[i % len(cells)] + (i,) for i in range(50)]


def test_criterion_6_attack_simulator():
    trials = 100_000
    with criterion(6, "attack simulator vs exact probability and bound", 120.0) as st:
        below_bound, outside, worst = [], [], 0.0
        for x, n, d, i in attack_grid():
            seed = 60_000 + i
            inst = random_approximation(random_hash(x, n, seed), n, d, seed + 1000)
            exact = exact_success_probability(inst)
            if exact < lemma1_bound(x, n, d):
                below_bound.append((x, n, d, i))
            rep = simulate_attack(inst, trials, seed + 2000)
            p = float(exact)
            sigma = (p * (1 - p) / trials) ** 0.5
            dev = abs(float(rep.empirical_success) - p)
            z = dev / sigma if sigma else (0.0 if dev == 0 else float("inf"))
            worst = max(worst, z)
            if z > 3:
                outside.append((x, n, d, i, z))
        st["ok"] = not below_bound and not outside
        st["detail"] = (f"50 instances x 1e5 trials: {len(below_bound)} below bound, "
                        f"{len(outside)} outside 3 sigma, max |z| = {worst:.2f}")
    assert st["ok"], (below_bound, outside)


def test_criterion_7_puzzle_bridge():
    with criterion(7, "lamp puzzle moves = distance to RM(k,4)", 120.0) as st:
        states = np.empty(1 << 16, dtype=np.int64)
        for bits in range(1 << 16):
            states[bits] = realize(Word.from_bits(16, bits)).mask
        mismatches = 0
        for k in (1, 2, 3):
            table = solve_table(4, k, WITH_P)
            code = reed_muller(k, 4)
            for bits in range(1 << 16):
                if table[states[bits]] != distance_to_code(Word.from_bits(16, bits), code):
                    mismatches += 1
        # the table is a multi-source BFS; cross-check it against the forward
        # single-state search on a seeded sample
        rng = np.random.default_rng(7)
        sample = rng.integers(0, 1 << 16, size=60)
        forward_bad = sum(
            min_moves(LampState(4, int(states[b])), PuzzleGoal(k)) != solve_table(4, k)[states[b]]
            for b in sample for k in (1, 2, 3))
        example = min_moves(LampState.parse("{13,24}", 4, include_P=False), PuzzleGoal(1))
        r_simpl, r_full = puzzle_radius(4, 1, SIMPLIFIED), covering_radius(reed_muller(1, 4))
        st["ok"] = mismatches == 0 and forward_bad == 0 and example == 5 and r_simpl == 5 \
            and r_full == 6 and puzzle_radius(4, 1, WITH_P) == 6
        st["detail"] = (f"{3 * 65536 - mismatches}/{3 * 65536} states agree; forward-BFS "
                        f"sample disagreements {forward_bad}; {{13,24}} -> {example} moves; "
                        f"r'_(4,1) = {r_simpl}, r = {r_full}")
    assert st["ok"]


def test_criterion_8_nbprg():
    with criterion(8, "statistical distance identities and family bound", 120.0) as st:
        rng = np.random.default_rng(8)
        eq_bad = 0
        for _ in range(1000):
            size = int(rng.integers(1, 11))
            w1, w2 = rng.integers(0, 50, size=size), rng.integers(0, 50, size=size)
            w1[0] += 1
            w2[-1] += 1
            p1 = FiniteDistribution({i: Fraction(int(v), int(w1.sum())) for i, v in enumerate(w1)})
            p2 = FiniteDistribution({i: Fraction(int(v), int(w2.sum())) for i, v in enumerate(w2)})
            if stat_distance_sum(p1, p2) != stat_distance_max(p1, p2, "subsets"):
                eq_bad += 1
        decomp_bad = thm_bad = 0
        for seed in range(500):
            inst = random_prg_instance(32, 64, 8, 4, seed=80_000 + seed)
            half = sum(subset_advantage(inst, 1 << y) for y in range(inst.n)) / 2
            if nb_advantage(inst) != half:
                decomp_bad += 1
            try:
                rep = theorem1_empirical_check(inst)
                thm_bad += not rep.holds
            except AssertionError:
                thm_bad += 1
        st["ok"] = eq_bad == 0 and decomp_bad == 0 and thm_bad == 0
        st["detail"] = (f"sum=max failures {eq_bad}/1000; decomposition failures "
                        f"{decomp_bad}/500; family-bound violations {thm_bad}/500")
    assert st["ok"]


def sandwich_corpus():
    codes = [reed_muller(k, m) for m, k in TABLE2_PAIRS]
    codes += [hamming_code(r) for r in (2, 3, 4)] + [golay23(), golay24()]
    for q in (5, 7, 8):
        f = field_of_order(q)
        codes += [reed_solomon(f, n, k) for n in range(2, q) for k in range(1, n)]
    rng = np.random.default_rng(9)
    for i in range(50):
        n = int(rng.integers(2, 21))
        k = int(rng.integers(1, n))
        codes.append(random_code(BINARY, n, k, seed=90_000 + i))
    return codes


def test_criterion_9_sandwich():
    with criterion(9, "l <= r <= codim on the code corpus", None) as st:
        corpus = sandwich_corpus()
        bad = []
        for code in corpus:
            ell = lower_bound_ell(code.n, code.codim, code.q)
            r = covering_radius(code)
            if not ell <= r <= code.codim:
                bad.append((code.label, ell, r, code.codim))
        st["ok"] = not bad
        st["detail"] = f"{len(corpus)} codes, {len(bad)} violations"
    assert st["ok"], bad
