"""Lamp puzzle on the simplex on [m] plus an isolated point P.

A Boolean function f = sum_I c_I x_I is drawn by lighting the face spanned by
the complement of I whenever c_I = 1 (P stands for the empty face, lit when
c_[m] = 1).  Pushing a face F toggles P and every nonempty sub-face of F,
which is the same as flipping f at the single point whose support is the
complement of F.  The least number of pushes that darkens every face with
at most m-k-1 vertices is therefore d(f, RM(k, m)).

States are bit masks indexed by vertex-subset masks; bit 0 is P.  The
simplified variant drops P: it is never toggled and never checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import Word
from .errors import DimensionTooLarge, InvalidFace, LengthNotPowerOfTwo, ParameterOutOfRange

WITH_P = "with-P"
SIMPLIFIED = "simplified"
BFS_MAX_M = 4
BRIDGE_MAX_M = 5

Face = frozenset  # frozenset of vertex labels 1..m; the empty set is P


def _face_mask(face, m: int) -> int:
    """Subset bitmask of a face (vertex i -> bit i-1)."""
    out = 0
    for v in face:
        if not 1 <= v <= m:
            raise InvalidFace(f"vertex {v} outside [1..{m}]")
        out |= 1 << (v - 1)
    return out


def _mask_face(mask: int) -> frozenset:
    return frozenset(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def _check_variant(variant: str) -> bool:
    if variant not in (WITH_P, SIMPLIFIED):
        raise ParameterOutOfRange(f"variant must be {WITH_P!r} or {SIMPLIFIED!r}")
    return variant == WITH_P


@dataclass(frozen=True)
class LampState:
    m: int
    mask: int
    include_P: bool = True

    def __post_init__(self):
        if not 1 <= self.m <= BRIDGE_MAX_M:
            raise DimensionTooLarge(f"m={self.m} outside 1..{BRIDGE_MAX_M}")
        if self.mask >> (1 << self.m):
            raise InvalidFace("mask has bits beyond the face set")
        if not self.include_P and self.mask & 1:
            raise InvalidFace("P is not a face of the simplified complex")

    @property
    def variant(self) -> str:
        return WITH_P if self.include_P else SIMPLIFIED

    @property
    def lit(self) -> frozenset:
        return frozenset(_mask_face(j) for j in range(1 << self.m) if (self.mask >> j) & 1)

    @classmethod
    def from_faces(cls, m: int, faces, include_P: bool = True) -> "LampState":
        mask = 0
        for face in faces:
            j = _face_mask(face, m)
            if j == 0 and not include_P:
                raise InvalidFace("P is not a face of the simplified complex")
            mask ^= 1 << j
        return cls(m, mask, include_P)

    @classmethod
    def parse(cls, text: str, m: int, include_P: bool = True) -> "LampState":
        """Read the digit-string notation, e.g. ``{13,24}`` or ``{P,1,23}``."""
        body = text.strip()
        if body.startswith("{") and body.endswith("}"):
            body = body[1:-1]
        faces = []
        for tok in filter(None, (t.strip() for t in re.split(r"[,\s]+", body))):
            if tok.upper() == "P":
                faces.append(frozenset())
            elif tok.isdigit():
                faces.append(frozenset(int(c) for c in tok))
            else:
                raise InvalidFace(f"cannot read face {tok!r}")
        return cls.from_faces(m, faces, include_P)

    def __str__(self):
        faces = sorted(self.lit, key=lambda f: (len(f), sorted(f)))
        names = ["P" if not f else "".join(str(v) for v in sorted(f)) for f in faces]
        return "{" + ",".join(names) + "}"


@dataclass(frozen=True)
class PuzzleGoal:
    """Darken every face with at most m-k-1 vertices (P has none)."""

    k: int

    def relevant_mask(self, m: int, include_P: bool = True) -> int:
        if not 0 <= self.k <= m:
            raise ParameterOutOfRange(f"need 0 <= k <= m (k={self.k}, m={m})")
        limit = m - self.k - 1
        out = 0
        for j in range(1 << m):
            if j.bit_count() <= limit and (include_P or j):
                out |= 1 << j
        return out

    def solved(self, state: LampState) -> bool:
        return state.mask & self.relevant_mask(state.m, state.include_P) == 0


def anf_coefficients(f: Word) -> list[int]:
    """Square-free monomial coefficients c_I (index = subset mask of I) of a
    truth table, by the Moebius transform over the subset lattice mod 2."""
    n = len(f)
    if n == 0 or n & (n - 1):
        raise LengthNotPowerOfTwo(f"length {n} is not a power of two")
    if f.field.q != 2:
        raise ParameterOutOfRange("truth tables are binary words")
    c = list(f.symbols)
    step = 1
    while step < n:
        for a in range(n):
            if a & step:
                c[a] ^= c[a ^ step]
        step <<= 1
    return c


def realize(f: Word, include_P: bool = True) -> LampState:
    """Geometric realization: light face [m] minus I whenever c_I = 1."""
    c = anf_coefficients(f)
    n = len(c)
    m = n.bit_length() - 1
    full = n - 1
    mask = 0
    for subset, coef in enumerate(c):
        if coef:
            mask |= 1 << (full ^ subset)
    if not include_P:
        mask &= ~1
    return LampState(m, mask, include_P)


def push_mask(m: int, face_mask: int, include_P: bool = True) -> int:
    """Lamps toggled by pushing a face: every sub-face, P included."""
    out = 0
    sub = face_mask
    while True:
        out |= 1 << sub
        if sub == 0:
            break
        sub = (sub - 1) & face_mask
    if not include_P:
        out &= ~1
    return out


def push(state: LampState, face) -> LampState:
    m = state.m
    j = _face_mask(face, m)
    if j == 0 and not state.include_P:
        raise InvalidFace("P cannot be pushed in the simplified puzzle")
    return LampState(m, state.mask ^ push_mask(m, j, state.include_P), state.include_P)


def _moves(m: int, include_P: bool) -> np.ndarray:
    faces = range(1 << m) if include_P else range(1, 1 << m)
    return np.array([push_mask(m, j, include_P) for j in faces], dtype=np.int64)


def min_moves(initial: LampState, goal: PuzzleGoal) -> int:
    """Optimal number of pushes, by breadth-first search from ``initial``."""
    m = initial.m
    if m > BFS_MAX_M:
        raise DimensionTooLarge(f"BFS supports m <= {BFS_MAX_M}")
    relevant = goal.relevant_mask(m, initial.include_P)
    if initial.mask & relevant == 0:
        return 0
    moves = _moves(m, initial.include_P)
    seen = np.zeros(1 << (1 << m), dtype=bool)
    seen[initial.mask] = True
    frontier = np.array([initial.mask], dtype=np.int64)
    depth = 0
    while frontier.size:
        depth += 1
        nxt = np.unique((frontier[:, None] ^ moves[None, :]).ravel())
        nxt = nxt[~seen[nxt]]
        if (nxt & relevant == 0).any():
            return depth
        seen[nxt] = True
        frontier = nxt
    raise AssertionError("every state is solvable")


@lru_cache(maxsize=None)
def _solve_table(m: int, k: int, include_P: bool) -> np.ndarray:
    relevant = PuzzleGoal(k).relevant_mask(m, include_P)
    size = 1 << (1 << m)
    dist = np.full(size, -1, dtype=np.int16)
    states = np.arange(size, dtype=np.int64)
    if not include_P:
        # P is inert; keep its bit at zero
        states = states[(states & 1) == 0]
    frontier = states[(states & relevant) == 0]
    dist[frontier] = 0
    moves = _moves(m, include_P)
    level = 0
    while frontier.size:
        level += 1
        nxt = np.unique((frontier[:, None] ^ moves[None, :]).ravel())
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = level
        frontier = nxt
    dist.setflags(write=False)
    return dist


def solve_table(m: int, k: int, variant: str = WITH_P) -> np.ndarray:
    """Least moves for every state mask at once (multi-source BFS from the
    solved states).  Unused masks (P lit in the simplified variant) hold -1."""
    include_P = _check_variant(variant)
    if m > BFS_MAX_M:
        raise DimensionTooLarge(f"BFS supports m <= {BFS_MAX_M}")
    if not 0 <= k <= m:
        raise ParameterOutOfRange(f"need 0 <= k <= m (k={k}, m={m})")
    return _solve_table(m, k, include_P)


def puzzle_radius(m: int, k: int, variant: str = WITH_P) -> int:
    """Moves needed for the hardest initial state."""
    return int(solve_table(m, k, variant).max())
