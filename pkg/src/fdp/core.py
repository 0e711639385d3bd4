"""Exact distances to a linear code and its covering radius r(C, C').

The covering radius of a linear code C' < F_q^n equals the largest coset-leader
weight.  Leader weights are computed by breadth-first search over the
syndrome space: level i holds the syndromes first reachable as a sum of i
scaled parity-check columns.  The same tables give d(f, C') for any word by
syndrome lookup.  Sphere-counting bounds around r live here too, all in
exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, factorial
from typing import Optional

import numpy as np

from .algebra import Word, hamming_distance
from .codes import LinearCode
from .errors import FieldMismatch, InstanceTooLarge, ParameterOutOfRange

TABLE_LIMIT = 1 << 24


@dataclass(frozen=True)
class CosetProfile:
    h: tuple[int, ...]
    covering_radius: int
    code: LinearCode = dc_field(repr=False, compare=False)

    @property
    def r(self) -> int:
        return self.covering_radius

    def as_record(self) -> dict:
        return {"label": self.code.label, "n": self.code.n, "dim": self.code.k_dim,
                "q": self.code.q, "r": self.covering_radius, "h": list(self.h)}


@dataclass(frozen=True)
class BoundReport:
    lower_ell: int
    upper_codim: int
    upper_extra: Optional[int] = None
    exact_r: Optional[int] = None
    # the count-bound lower bound read literally with binom(m, i); None when
    # no l satisfies it
    lower_printed: Optional[int] = None

    @property
    def upper(self) -> int:
        if self.upper_extra is None:
            return self.upper_codim
        return min(self.upper_codim, self.upper_extra)

    def sandwiches(self) -> bool:
        if self.exact_r is None:
            return self.lower_ell <= self.upper_codim
        return self.lower_ell <= self.exact_r <= self.upper


def _syndrome_moves(code: LinearCode) -> np.ndarray:
    """Distinct nonzero syndromes of weight-one words: scalar multiples of the
    parity-check columns, base-q encoded."""
    fld = code.field
    cols = code.parity_check.T  # n x codim
    pw = np.array([code.q ** i for i in range(code.codim)], dtype=np.int64)
    moves = set()
    for s in range(1, code.q):
        scaled = fld.vmul(cols, s)
        moves.update(int(v) for v in scaled @ pw)
    moves.discard(0)
    return np.array(sorted(moves), dtype=np.int64)


class _SyndromeAdder:
    """Adds syndromes given as integers.

    A base-q syndrome code is also the base-p code of the stacked F_p
    coordinate vector, so syndrome addition is digit-wise addition mod p: XOR
    when p = 2, otherwise a lookup table on blocks of base-p digits.
    """

    def __init__(self, p: int, digits: int):
        self.p = p
        if p == 2:
            return
        c = 1
        while p ** (c + 1) <= 1024 and c < digits:
            c += 1
        self.base = p ** c
        self.blocks = -(-digits // c)
        x = np.arange(self.base, dtype=np.int64)
        pw = p ** np.arange(c, dtype=np.int64)
        dig = (x[:, None] // pw[None, :]) % p
        summed = (dig[:, None, :] + dig[None, :, :]) % p
        self.table = (summed @ pw).astype(np.int64)

    def split(self, values: np.ndarray) -> list[np.ndarray]:
        return [(values // self.base ** j) % self.base for j in range(self.blocks)]

    def add(self, frontier: np.ndarray, fparts, move: int) -> np.ndarray:
        if self.p == 2:
            return frontier ^ move
        acc = np.zeros(frontier.size, dtype=np.int64)
        for j, part in enumerate(fparts):
            acc += self.table[part, (move // self.base ** j) % self.base] * self.base ** j
        return acc


def leader_weights(code: LinearCode) -> np.ndarray:
    """Array indexed by syndrome (base-q code) holding the coset-leader weight.

    Cached on the code object.
    """
    cached = code.__dict__.get("_leader_weights")
    if cached is not None:
        return cached
    size = code.q ** code.codim
    if size > TABLE_LIMIT:
        raise InstanceTooLarge(f"syndrome space q^codim = {size} exceeds 2^24")
    dist = np.full(size, -1, dtype=np.int16)
    dist[0] = 0
    moves = _syndrome_moves(code)
    adder = _SyndromeAdder(code.field.p, code.codim * code.field.e)
    frontier = np.zeros(1, dtype=np.int64)
    level = 0
    hit = np.zeros(size, dtype=bool)
    while frontier.size:
        level += 1
        fparts = adder.split(frontier) if adder.p != 2 else None
        for mv in moves.tolist():
            hit[adder.add(frontier, fparts, mv)] = True
        hit &= dist < 0
        frontier = np.flatnonzero(hit)
        dist[frontier] = level
        hit[frontier] = False
    if (dist < 0).any():
        raise AssertionError("parity-check columns do not span the syndrome space")
    dist.setflags(write=False)
    code.__dict__["_leader_weights"] = dist
    return dist


def coset_profile(code: LinearCode) -> CosetProfile:
    """h[i] = number of cosets whose leader has weight i; r = max i with h[i] > 0."""
    dist = leader_weights(code)
    h = np.bincount(dist.astype(np.int64))
    return CosetProfile(tuple(int(x) for x in h), len(h) - 1, code)


def covering_radius(code: LinearCode) -> int:
    return coset_profile(code).covering_radius


def _distance_by_enumeration(f: Word, code: LinearCode) -> int:
    if code.size > TABLE_LIMIT:
        raise InstanceTooLarge(f"code has {code.size} codewords (> 2^24)")
    if code.q == 2:
        masks = code.codeword_masks()
        return int(np.bitwise_count(masks ^ f.bits).min())
    target = f.as_array()
    best = code.n
    for block in code.codewords():
        best = min(best, int((block != target[None, :]).sum(axis=1).min()))
    return best


def distance_to_code(f: Word, code: LinearCode, method: str = "auto") -> int:
    """min over codewords g of d_H(f, g).

    ``method`` is "syndrome" (coset-leader lookup), "enumerate" (scan of all
    codewords) or "auto" (syndrome when the table fits, else enumeration).
    """
    code._check_word(f)
    if method == "auto":
        method = "syndrome" if code.q ** code.codim <= TABLE_LIMIT else "enumerate"
    if method == "syndrome":
        return int(leader_weights(code)[code.syndrome_index(f)])
    if method == "enumerate":
        return _distance_by_enumeration(f, code)
    raise ValueError(f"unknown method {method!r}")


def brute_force_distance(f: Word, code: LinearCode) -> int:
    """Reference oracle: explicit minimum over every codeword word-by-word."""
    best = None
    for block in code.codewords():
        for row in block:
            d = hamming_distance(f, Word(code.field, row))
            if best is None or d < best:
                best = d
    return best


# -- sphere-counting bounds ----------------------------------------------------

def ball_size(d: int, radius: int, q: int) -> int:
    return sum(comb(d, i) * (q - 1) ** i for i in range(radius + 1))


def lower_bound_ell(d: int, codim: int, q: int) -> int:
    """Least l with sum_{i<=l} C(d,i)(q-1)^i >= q^codim."""
    if q < 2 or not 0 <= codim <= d:
        raise ParameterOutOfRange(f"need q >= 2 and 0 <= codim <= d (d={d}, codim={codim}, q={q})")
    target = q ** codim
    total = 0
    for ell in range(d + 1):
        total += comb(d, ell) * (q - 1) ** ell
        if total >= target:
            return ell
    raise AssertionError("the full ball always reaches q^d")


def upper_bound_codim(code: LinearCode) -> int:
    return code.codim


def reed_muller_codim(m: int, k: int) -> int:
    return sum(comb(m, i) for i in range(k + 1, m + 1))


def boolean_bounds(m: int, k: int) -> BoundReport:
    """Bounds on r(C, RM(k, m)): l_{m,k} <= r <= min(u_{m,k}, 2^{m-1})."""
    if not 0 <= k <= m or m < 1:
        raise ParameterOutOfRange(f"need 0 <= k <= m, m >= 1 (m={m}, k={k})")
    u = reed_muller_codim(m, k)
    ell = lower_bound_ell(1 << m, u, 2)
    return BoundReport(lower_ell=ell, upper_codim=u, upper_extra=min(u, 1 << (m - 1)))


def count_bounds(code: LinearCode, exact: bool = False) -> BoundReport:
    """Coset-count bounds for a binary code.

    ``upper_extra`` is the number of cosets |C|/|C'|.  ``lower_ell`` is the
    sphere bound with binomials over the ambient dimension n; ``lower_printed``
    evaluates the same inequality with C(m, i), m = log2 n, and is None when
    no l satisfies it (or n is not a power of two).
    """
    if code.q != 2:
        raise FieldMismatch("count bounds are stated for binary codes")
    cosets = 1 << code.codim
    printed = None
    n = code.n
    if n & (n - 1) == 0:
        m = n.bit_length() - 1
        total = 0
        for ell in range(m + 1):
            total += comb(m, ell)
            if total >= cosets:
                printed = ell
                break
    return BoundReport(
        lower_ell=lower_bound_ell(n, code.codim, 2),
        upper_codim=code.codim,
        upper_extra=cosets,
        exact_r=covering_radius(code) if exact else None,
        lower_printed=printed,
    )


def code_bounds(code: LinearCode, exact: bool = True) -> BoundReport:
    return BoundReport(
        lower_ell=lower_bound_ell(code.n, code.codim, code.q),
        upper_codim=code.codim,
        exact_r=covering_radius(code) if exact else None,
    )


def tightness_constant(ell: int, q: int) -> Fraction:
    if q == 2:
        return Fraction(ell + 1)
    return Fraction(q - 1, q - 2)


def tightness_gap(d: int, codim: int, q: int) -> Fraction:
    """c_l (q-1)^l d^l / (l! q^codim) with l = lower_bound_ell(d, codim, q).

    A value >= 1 certifies codim <= log_q(c_l (q-1)^l d^l / l!) without
    floating point.  l = 0 (codim = 0) returns 1.
    """
    ell = lower_bound_ell(d, codim, q)
    if ell == 0:
        return Fraction(1)
    ratio = tightness_constant(ell, q) * (q - 1) ** ell * d ** ell / (factorial(ell) * q ** codim)
    if ratio < 1:
        raise AssertionError(f"tightness inequality fails for d={d}, codim={codim}, q={q}")
    return ratio
