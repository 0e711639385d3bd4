"""Statistical distance, distinguisher advantages and PRG -> nb-PRG parameter
conversions, with an exact checker on explicit finite generators.

Generators G : S -> X and distinguishers D : X -> Y = {0..n-1} are lookup
tables.  Subsets Z of Y are bit masks.  All probabilities are Fractions.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import EmptyFamily, ParameterOutOfRange, SupportMismatch, TooLarge

SUBSET_MAX_SUPPORT = 24
RADIUS_MAX_N = 24


class FiniteDistribution:
    """Exact probability masses on a finite support (zero masses allowed)."""

    def __init__(self, mass: Mapping):
        self.mass = {z: Fraction(p) for z, p in mass.items()}
        if any(p < 0 for p in self.mass.values()):
            raise ValueError("negative probability")
        if sum(self.mass.values()) != 1:
            raise ValueError("masses must sum to exactly 1")

    @classmethod
    def on(cls, support, mass: Mapping) -> "FiniteDistribution":
        """Distribution over ``support`` with unlisted points at mass 0."""
        return cls({z: mass.get(z, 0) for z in support})

    @classmethod
    def from_counts(cls, counts: Mapping, support=None) -> "FiniteDistribution":
        total = sum(counts.values())
        keys = support if support is not None else counts.keys()
        return cls({z: Fraction(counts.get(z, 0), total) for z in keys})

    @property
    def support(self) -> frozenset:
        return frozenset(self.mass)

    def prob(self, event) -> Fraction:
        return sum((self.mass[z] for z in event), Fraction(0))

    def __repr__(self):
        return f"FiniteDistribution({self.mass})"


def _aligned(p1: FiniteDistribution, p2: FiniteDistribution) -> list:
    if p1.support != p2.support:
        raise SupportMismatch("distributions are on different supports")
    return sorted(p1.support, key=repr)


def stat_distance_sum(p1: FiniteDistribution, p2: FiniteDistribution) -> Fraction:
    """Half the l1 distance between the mass functions."""
    zs = _aligned(p1, p2)
    return sum((abs(p1.mass[z] - p2.mass[z]) for z in zs), Fraction(0)) / 2


def stat_distance_max(p1: FiniteDistribution, p2: FiniteDistribution,
                      mode: str = "subsets") -> Fraction:
    """max over events E of |P1(E) - P2(E)|.

    ``mode="subsets"`` maximises over every subset literally (support <= 24);
    ``mode="positive"`` uses the event {z : P1(z) > P2(z)}.
    """
    zs = _aligned(p1, p2)
    diffs = [p1.mass[z] - p2.mass[z] for z in zs]
    if mode == "positive":
        return sum((d for d in diffs if d > 0), Fraction(0))
    if mode != "subsets":
        raise ValueError(f"unknown mode {mode!r}")
    if len(zs) > SUBSET_MAX_SUPPORT:
        raise TooLarge(f"subset enumeration needs support <= {SUBSET_MAX_SUPPORT}")
    den = 1
    for d in diffs:
        den = den * d.denominator // np.gcd(den, d.denominator)
    nums = [int(d * den) for d in diffs]
    if sum(abs(v) for v in nums) < (1 << 62):
        sums = np.zeros(1, dtype=np.int64)
        for v in nums:
            sums = np.concatenate([sums, sums + v])
        best = int(np.abs(sums).max())
    else:
        sums = [0]
        for v in nums:
            sums = sums + [s + v for s in sums]
        best = max(abs(s) for s in sums)
    return Fraction(best, den)


@dataclass(frozen=True)
class PrgInstance:
    s_size: int
    x_size: int
    n: int
    G: tuple[int, ...]
    D: tuple[int, ...]
    family: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ParameterOutOfRange("need n >= 2")
        if len(self.G) != self.s_size or any(not 0 <= x < self.x_size for x in self.G):
            raise ParameterOutOfRange("G must map every seed into X")
        if len(self.D) != self.x_size or any(not 0 <= y < self.n for y in self.D):
            raise ParameterOutOfRange("D must map every output into Y")
        if any(not 0 <= z < (1 << self.n) for z in self.family):
            raise ParameterOutOfRange("family members must be subsets of Y")

    def as_record(self) -> dict:
        return {"S_size": self.s_size, "X_size": self.x_size, "n": self.n,
                "G": list(self.G), "D": list(self.D), "family": list(self.family)}

    @classmethod
    def from_record(cls, rec: Mapping) -> "PrgInstance":
        return cls(int(rec["S_size"]), int(rec["X_size"]), int(rec["n"]),
                   tuple(rec["G"]), tuple(rec["D"]), tuple(rec.get("family", ())))

    def uniform_output(self) -> FiniteDistribution:
        """D(U_X) on Y."""
        return FiniteDistribution.from_counts(Counter(self.D), range(self.n))

    def pseudo_output(self) -> FiniteDistribution:
        """D(G(U_S)) on Y."""
        return FiniteDistribution.from_counts(Counter(self.D[x] for x in self.G), range(self.n))


def advantage(inst: PrgInstance, post_map: Sequence[int]) -> Fraction:
    """|Pr[post(D(U_X)) = 1] - Pr[post(D(G(U_S))) = 1]| for a 0/1 map on Y."""
    if len(post_map) != inst.n:
        raise ParameterOutOfRange("post_map must give a bit for every y in Y")
    ones_x = sum(1 for x in range(inst.x_size) if post_map[inst.D[x]])
    ones_s = sum(1 for s in range(inst.s_size) if post_map[inst.D[inst.G[s]]])
    return abs(Fraction(ones_x, inst.x_size) - Fraction(ones_s, inst.s_size))


def indicator(n: int, subset_mask: int) -> list[int]:
    return [(subset_mask >> y) & 1 for y in range(n)]


def subset_advantage(inst: PrgInstance, subset_mask: int) -> Fraction:
    return advantage(inst, indicator(inst.n, subset_mask))


def nb_advantage(inst: PrgInstance) -> Fraction:
    """Statistical distance between D(U_X) and D(G(U_S))."""
    return stat_distance_sum(inst.uniform_output(), inst.pseudo_output())


# -- parameter calculators ------------------------------------------------------

def prop1_params(T, delta1, n: int, epsilon) -> tuple:
    """(T + delta1, 2 epsilon / n): PRG budget that suffices for (T, n, epsilon)."""
    if n < 2:
        raise ParameterOutOfRange("need n >= 2")
    return T + delta1, Fraction(epsilon) * 2 / n


def prop2_params(T, delta2, epsilon) -> tuple:
    return T + delta2, Fraction(epsilon)


@dataclass(frozen=True)
class Theorem1Params:
    T: object
    epsilon_total: Fraction
    hypothesis_single: tuple  # (T + delta1, epsilon1)
    hypothesis_family: tuple  # (T + delta3, epsilon3)
    r: int
    notes: tuple[str, ...] = ()

    def as_record(self) -> dict:
        return {"T": _num(self.T), "epsilon_total": str(self.epsilon_total), "r": self.r,
                "hypothesis_single": [_num(v) for v in self.hypothesis_single],
                "hypothesis_family": [_num(v) for v in self.hypothesis_family],
                "notes": list(self.notes)}


def _num(v):
    return str(v) if isinstance(v, Fraction) else v


def thm1_params(T, delta1, delta3, epsilon1, epsilon3, r: int,
                n: int | None = None) -> Theorem1Params:
    """(T, n, r eps1 + eps3)-security from (T+delta1, eps1) and (T+delta3, eps3).

    Pass ``n`` to get a note when r = n, i.e. the family is no better than
    {empty set} and the result degenerates to the per-output union bound.
    """
    if r < 0 or int(r) != r:
        raise ParameterOutOfRange("r must be a nonnegative integer")
    if n is not None and not 0 <= r <= n:
        raise ParameterOutOfRange("r cannot exceed n")
    notes = []
    if delta1 > delta3:
        notes.append("delta1 > delta3")
        warnings.warn("delta1 > delta3: a singleton test is expected to be the cheapest",
                      stacklevel=2)
    if r == 0:
        notes.append("r = 0: the family reaches every subset, epsilon_total = epsilon3")
    if n is not None and r == n:
        notes.append("r = n: the family helps no more than {empty set}; this is essentially "
                     "the single-output reduction with epsilon of order n * epsilon1")
    eps = r * Fraction(epsilon1) + Fraction(epsilon3)
    return Theorem1Params(T, eps, (T + delta1, Fraction(epsilon1)),
                          (T + delta3, Fraction(epsilon3)), int(r), tuple(notes))


# -- covering radius of a subset family ------------------------------------------

def is_linear_family(n: int, family: Sequence[int]) -> bool:
    fam = set(family)
    return 0 in fam and all((a ^ b) in fam for a in fam for b in fam)


def subset_family_radius(n: int, family: Sequence[int], method: str = "auto") -> int:
    """max over Z <= Y of min over Z' in family of |Z symmetric-difference Z'|.

    ``method="exhaustive"`` is a multi-source BFS over all 2^n subsets;
    ``method="linear"`` (XOR-closed families only) reuses the coset machinery.
    """
    if not family:
        raise EmptyFamily("family must be nonempty")
    if method == "auto":
        method = "exhaustive" if n <= RADIUS_MAX_N else "linear"
    if method == "linear":
        if not is_linear_family(n, family):
            raise ParameterOutOfRange("family is not closed under symmetric difference")
        from .core import covering_radius
        return covering_radius(family_code(n, family))
    if method != "exhaustive":
        raise ValueError(f"unknown method {method!r}")
    if n > RADIUS_MAX_N:
        raise TooLarge(f"exhaustive mode needs n <= {RADIUS_MAX_N}")
    dist = np.full(1 << n, -1, dtype=np.int8)
    frontier = np.unique(np.array(family, dtype=np.int64))
    dist[frontier] = 0
    flips = np.array([1 << i for i in range(n)], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nxt = np.unique((frontier[:, None] ^ flips[None, :]).ravel())
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = level
        frontier = nxt
    return int(dist.max())


def family_code(n: int, family: Sequence[int]):
    """The binary code spanned by the characteristic vectors of the family."""
    from . import linalg
    from .codes import BINARY, LinearCode
    rows = np.array([[(z >> y) & 1 for y in range(n)] for z in family], dtype=np.int64)
    basis, _ = linalg.rref(BINARY, rows.reshape(-1, n))
    return LinearCode(BINARY, basis, label="family")


# -- empirical Theorem-1 check ----------------------------------------------------

@dataclass(frozen=True)
class Theorem1Report:
    delta: Fraction
    eps1: Fraction
    eps3: Fraction
    r: int

    @property
    def bound(self) -> Fraction:
        return self.r * self.eps1 + self.eps3

    @property
    def holds(self) -> bool:
        return self.delta <= self.bound

    def as_record(self) -> dict:
        return {"delta": str(self.delta), "eps1": str(self.eps1), "eps3": str(self.eps3),
                "r": self.r, "bound": str(self.bound), "holds": self.holds}


def theorem1_empirical_check(inst: PrgInstance) -> Theorem1Report:
    """Measure Delta, eps1 (best singleton test), eps3 (best family test) and r
    on one instance; ``report.holds`` is Delta <= r eps1 + eps3."""
    if inst.s_size > 1 << 12 or inst.x_size > 1 << 12 or inst.n > 16:
        raise TooLarge("checker supports |S|, |X| <= 2^12 and n <= 16")
    if not inst.family:
        raise EmptyFamily("instance has no subset family")
    delta = nb_advantage(inst)
    eps1 = max(subset_advantage(inst, 1 << y) for y in range(inst.n))
    eps3 = max(subset_advantage(inst, z) for z in inst.family)
    r = subset_family_radius(inst.n, inst.family)
    report = Theorem1Report(delta, eps1, eps3, r)
    if not report.holds:
        raise AssertionError(f"Delta={delta} exceeds r*eps1+eps3={report.bound}")
    return report


def random_prg_instance(s_size: int, x_size: int, n: int, family_size: int, seed: int,
                        linear: bool = False) -> PrgInstance:
    """Uniform random G, D and family (random subsets, or the span of
    ``family_size`` random subsets when ``linear``)."""
    rng = np.random.default_rng(seed)
    G = tuple(int(v) for v in rng.integers(0, x_size, size=s_size))
    D = tuple(int(v) for v in rng.integers(0, n, size=x_size))
    gens = [int(v) for v in rng.integers(0, 1 << n, size=family_size)]
    if linear:
        span = {0}
        for g in gens:
            span |= {s ^ g for s in span}
        family = tuple(sorted(span))
    else:
        family = tuple(gens)
    return PrgInstance(s_size, x_size, n, G, D, family)
