"""Collision search through a close approximation H' of a hash H : X -> Y.

The attack repeatedly draws a uniform ordered collision pair of H' and checks
whether it also collides under H.  With a_i = |H'^{-1}(y_i)| and b_i the
number of points in that bucket where H and H' disagree, the success
probability is at least phi2/phi1 with

    phi1 = sum_i a_i (a_i - 1),   phi2 = sum_i (a_i - b_i)(a_i - b_i - 1),

and :func:`lemma1_bound` is the closed-form minimum of that ratio over all
bucket profiles at Hamming distance d.  Ordered pairs are used throughout.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .errors import InstanceTooLarge, NoCollisionPairs, ParameterOutOfRange

ORACLE_ENUM_LIMIT = 10 ** 7
_CHUNK = 1 << 16


def _pairs(m: int) -> int:
    return m * (m - 1)


@dataclass(frozen=True)
class HashInstance:
    x_size: int
    n: int
    H: tuple[int, ...]
    H_prime: tuple[int, ...]
    d: int

    def __post_init__(self):
        if len(self.H) != self.x_size or len(self.H_prime) != self.x_size:
            raise ParameterOutOfRange("maps must be defined on all of X")
        if any(not 0 <= y < self.n for y in self.H + self.H_prime):
            raise ParameterOutOfRange("values must lie in Y = {0..n-1}")
        actual = sum(1 for a, b in zip(self.H, self.H_prime) if a != b)
        if actual != self.d:
            raise ParameterOutOfRange(f"stored d={self.d} but maps differ in {actual} points")

    @classmethod
    def from_maps(cls, H: Sequence[int], H_prime: Sequence[int], n: int) -> "HashInstance":
        H, Hp = tuple(int(v) for v in H), tuple(int(v) for v in H_prime)
        return cls(len(H), n, H, Hp, sum(1 for a, b in zip(H, Hp) if a != b))

    @property
    def a(self) -> tuple[int, ...]:
        counts = [0] * self.n
        for y in self.H_prime:
            counts[y] += 1
        return tuple(counts)

    @property
    def b(self) -> tuple[int, ...]:
        counts = [0] * self.n
        for h, hp in zip(self.H, self.H_prime):
            if h != hp:
                counts[hp] += 1
        return tuple(counts)

    def phi(self) -> tuple[int, int]:
        """(phi1, phi2) for this instance's bucket statistics."""
        a, b = self.a, self.b
        return sum(_pairs(x) for x in a), sum(_pairs(x - y) for x, y in zip(a, b))


@dataclass
class AttackReport:
    x_size: int
    n: int
    d: int
    analytic_bound: Optional[Fraction]
    alpha0: Optional[int]
    empirical_success: Fraction
    trials: int
    seed: int
    iterations_histogram: dict[int, int] = field(default_factory=dict)

    def as_record(self) -> dict:
        return {
            "x_size": self.x_size, "n": self.n, "d": self.d, "alpha0": self.alpha0,
            "bound": None if self.analytic_bound is None else
            f"{self.analytic_bound.numerator}/{self.analytic_bound.denominator}",
            "empirical": float(self.empirical_success), "trials": self.trials, "seed": self.seed,
        }


def _check_params(x_size: int, n: int, d: int) -> None:
    if n < 2 or not 0 < d < x_size:
        raise ParameterOutOfRange(f"need n >= 2 and 0 < d < |X| (|X|={x_size}, n={n}, d={d})")


def alpha0(x_size: int, n: int, d: int) -> int:
    _check_params(x_size, n, d)
    return (x_size - d - 1) // n


def lemma1_terms(x_size: int, n: int, d: int) -> tuple[int, int]:
    """(numerator, denominator) of the closed-form bound, unreduced."""
    a0 = alpha0(x_size, n, d)
    num = 2 * a0 * x_size - n * (a0 + 1) * a0 - 2 * d * a0
    den = num + 2 * d * x_size - d * d - d
    return num, den


def lemma1_bound(x_size: int, n: int, d: int) -> Fraction:
    """Lower bound on the probability that a uniform H'-collision pair is an
    H-collision pair, for |Y| = n and d_H(H, H') = d."""
    num, den = lemma1_terms(x_size, n, d)
    if den <= 0 or num < 0:
        raise AssertionError(f"degenerate bound terms {num}/{den}")
    value = Fraction(num, den)
    assert value <= 1
    return value


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _bounded_compositions(total: int, caps: Sequence[int]):
    if len(caps) == 1:
        if total <= caps[0]:
            yield (total,)
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _bounded_compositions(total - first, caps[1:]):
            yield (first,) + rest


def count_profiles(x_size: int, n: int, d: int) -> int:
    """Number of feasible (a, b) pairs: sum a = |X|, sum b = d, 0 <= b_i <= a_i.

    Each bucket contributes the series sum_{a >= b >= 0} s^a t^b =
    1/((1 - s)(1 - st)), i.e. a prefix sum along a and one along the diagonal.
    """
    ways = np.zeros((x_size + 1, d + 1), dtype=object)
    ways[0, 0] = 1
    for _ in range(n):
        ways = np.cumsum(ways, axis=0)
        for i in range(1, x_size + 1):
            ways[i, 1:] += ways[i - 1, :-1]
    return int(ways[x_size, d])


def phi_minimizers(x_size: int, n: int, d: int) -> tuple[Fraction, list[tuple[tuple, tuple]]]:
    """Literal enumeration of every feasible (a, b); returns the minimum of
    phi2/phi1 over points with phi1 > 0 and all points attaining it."""
    if n < 2 or not 0 <= d <= x_size:
        raise ParameterOutOfRange("need n >= 2 and 0 <= d <= |X|")
    if count_profiles(x_size, n, d) > ORACLE_ENUM_LIMIT:
        raise InstanceTooLarge("more than 10^7 feasible profiles")
    best: Optional[Fraction] = None
    argmin: list = []
    for a in _compositions(x_size, n):
        p1 = sum(_pairs(x) for x in a)
        if p1 == 0:
            continue
        for b in _bounded_compositions(d, a):
            val = Fraction(sum(_pairs(x - y) for x, y in zip(a, b)), p1)
            if best is None or val < best:
                best, argmin = val, [(a, b)]
            elif val == best:
                argmin.append((a, b))
    if best is None:
        raise NoCollisionPairs("no feasible profile has a collision pair")
    return best, argmin


def phi_min_oracle(x_size: int, n: int, d: int, method: str = "dp") -> Fraction:
    """Exact min of phi2/phi1 over all feasible bucket profiles.

    ``method="enumerate"`` walks every (a, b) explicitly.  ``method="dp"``
    scans the same set bucket by bucket, keeping for each reachable
    (sum a, sum b, phi1) the least phi2; it is exhaustive because phi1 and
    phi2 are sums of per-bucket terms.
    """
    if method == "enumerate":
        return phi_minimizers(x_size, n, d)[0]
    if method != "dp":
        raise ValueError(f"unknown method {method!r}")
    if n < 2 or not 0 <= d <= x_size:
        raise ParameterOutOfRange("need n >= 2 and 0 <= d <= |X|")
    states = {(0, 0, 0): 0}
    for _ in range(n):
        nxt: dict[tuple[int, int, int], int] = {}
        for (sa, sb, p1), p2 in states.items():
            for a in range(x_size - sa + 1):
                pa = p1 + _pairs(a)
                for b in range(min(a, d - sb) + 1):
                    key = (sa + a, sb + b, pa)
                    val = p2 + _pairs(a - b)
                    old = nxt.get(key)
                    if old is None or val < old:
                        nxt[key] = val
        states = nxt
    candidates = [Fraction(p2, p1) for (sa, sb, p1), p2 in states.items()
                  if sa == x_size and sb == d and p1 > 0]
    if not candidates:
        raise NoCollisionPairs("no feasible profile has a collision pair")
    return min(candidates)


def ratio_lemma_check(p: int, q: int, r: int) -> bool:
    """q/p < (q+r)/(p+r) for p > q >= 0, r > 0 (cross-multiplied)."""
    if not (p > q >= 0 and r > 0):
        raise ParameterOutOfRange("need p > q >= 0 and r > 0")
    return q * (p + r) < (q + r) * p


def random_hash(x_size: int, n: int, rng_seed: int) -> tuple[int, ...]:
    rng = np.random.default_rng(rng_seed)
    return tuple(int(v) for v in rng.integers(0, n, size=x_size))


def random_approximation(H: Sequence[int], n: int, d: int, rng_seed: int) -> HashInstance:
    """H' equal to H except at d uniform points, each moved to a uniform other value."""
    x_size = len(H)
    _check_params(x_size, n, d)
    rng = np.random.default_rng(rng_seed)
    Hp = np.array(H, dtype=np.int64)
    pts = rng.choice(x_size, size=d, replace=False)
    Hp[pts] = (Hp[pts] + rng.integers(1, n, size=d)) % n
    return HashInstance(x_size, n, tuple(int(v) for v in H), tuple(int(v) for v in Hp), d)


def exact_success_probability(inst: HashInstance) -> Fraction:
    """P[uniform ordered H'-collision pair is an H-collision pair], by counting
    pairs per joint (H', H) value class."""
    joint = Counter(zip(inst.H_prime, inst.H))
    good = sum(_pairs(c) for c in joint.values())
    total = sum(_pairs(c) for c in inst.a)
    if total == 0:
        raise NoCollisionPairs("H' has no collision pair")
    return Fraction(good, total)


def sample_collision_pairs(inst: HashInstance, count: int, rng: np.random.Generator):
    """Draw ``count`` uniform ordered collision pairs of H' (bucket first, then a
    pair of distinct members)."""
    a = np.array(inst.a, dtype=np.int64)
    weights = a * (a - 1)
    if weights.sum() == 0:
        raise NoCollisionPairs("H' has no collision pair")
    members = [np.flatnonzero(np.array(inst.H_prime) == y) for y in range(inst.n)]
    buckets = rng.choice(inst.n, size=count, p=weights / weights.sum())
    x1 = np.empty(count, dtype=np.int64)
    x2 = np.empty(count, dtype=np.int64)
    for y in np.unique(buckets):
        sel = np.flatnonzero(buckets == y)
        size = a[y]
        i = rng.integers(0, size, size=sel.size)
        j = rng.integers(0, size - 1, size=sel.size)
        j = j + (j >= i)
        x1[sel] = members[y][i]
        x2[sel] = members[y][j]
    return x1, x2


def simulate_attack(inst: HashInstance, trials: int, rng_seed: int) -> AttackReport:
    """Monte-Carlo estimate of the per-draw success probability.

    The draws are also read as one long run of the retry loop: the
    histogram counts how many draws each completed search needed.
    Chunks use independent generators spawned from ``rng_seed``.
    """
    if trials < 1:
        raise ParameterOutOfRange("need at least one trial")
    H = np.array(inst.H, dtype=np.int64)
    chunks = [_CHUNK] * (trials // _CHUNK) + ([trials % _CHUNK] if trials % _CHUNK else [])
    streams = np.random.SeedSequence(rng_seed).spawn(len(chunks))
    outcomes = []
    for size, ss in zip(chunks, streams):
        x1, x2 = sample_collision_pairs(inst, size, np.random.default_rng(ss))
        outcomes.append(H[x1] == H[x2])
    hits = np.concatenate(outcomes)
    successes = int(hits.sum())
    hist: Counter = Counter()
    run = 0
    for hit in hits.tolist():
        run += 1
        if hit:
            hist[run] += 1
            run = 0
    valid = 0 < inst.d < inst.x_size
    return AttackReport(
        x_size=inst.x_size, n=inst.n, d=inst.d,
        analytic_bound=lemma1_bound(inst.x_size, inst.n, inst.d) if valid else None,
        alpha0=alpha0(inst.x_size, inst.n, inst.d) if valid else None,
        empirical_success=Fraction(successes, trials), trials=trials, seed=rng_seed,
        iterations_histogram=dict(sorted(hist.items())),
    )


def monotonicity_violations(x_max: int, ns: Sequence[int]) -> list[tuple[int, int, int]]:
    """(|X|, n, d) with |X| >= d + (n-1)^2, d >= 2 where bound(d-1) > bound(d) fails."""
    out = []
    for n, x in product(ns, range(2, x_max + 1)):
        for d in range(2, x):
            if x >= d + (n - 1) ** 2 and not lemma1_bound(x, n, d - 1) > lemma1_bound(x, n, d):
                out.append((x, n, d))
    return out
