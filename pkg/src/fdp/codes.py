"""Linear codes C' inside F_q^n: Reed-Muller (low-degree Boolean functions),
Hamming, Golay and Reed-Solomon constructors, plus the FDPCODE text format."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .algebra import FieldSpec, Word, field_make, field_of_order
from .errors import (
    DegreeOutOfRange,
    FDPError,
    FieldMismatch,
    LengthMismatch,
    ParameterOutOfRange,
    RankDeficient,
)
from . import linalg

BINARY = field_make(2, 1)


class LinearCode:
    """A k-dimensional subspace of F_q^n given by a full-rank generator matrix.

    The parity-check matrix defaults to :func:`parity_check_of` of the
    generator; constructors that have a natural one (Hamming) pass it in.
    Both are validated: full rank and ``G . H^T = 0``.
    """

    def __init__(self, field: FieldSpec, generator, parity_check=None, label: str = ""):
        self.field = field
        g = np.asarray(generator, dtype=np.int64)
        if g.ndim != 2:
            raise ValueError("generator must be a 2-D matrix")
        self.generator = g
        self.k_dim, self.n = g.shape
        if linalg.rank(field, g) != self.k_dim:
            raise RankDeficient("generator rows are linearly dependent")
        if parity_check is None:
            h = parity_check_of(self)
        else:
            h = np.asarray(parity_check, dtype=np.int64).reshape(-1, self.n)
            if h.shape[0] != self.n - self.k_dim or linalg.rank(field, h) != h.shape[0]:
                raise RankDeficient("parity-check matrix must have full rank n - k")
        self.parity_check = h
        if h.shape[0] and self.k_dim and linalg.matmul(field, g, h.T).any():
            raise ValueError("generator and parity check are not orthogonal")
        self.label = label
        self.generator.setflags(write=False)
        self.parity_check.setflags(write=False)

    def __repr__(self):
        return f"LinearCode({self.label or '?'}: [{self.n},{self.k_dim}] over GF({self.q}))"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def codim(self) -> int:
        return self.n - self.k_dim

    @property
    def size(self) -> int:
        return self.q ** self.k_dim

    # -- binary bit-mask views ------------------------------------------------

    @cached_property
    def generator_bits(self) -> list[int]:
        return [sum(int(x) << i for i, x in enumerate(row)) for row in self.generator]

    @cached_property
    def parity_columns(self) -> np.ndarray:
        """Column j of H encoded base q (row i is digit i)."""
        h = self.parity_check
        pw = np.array([self.q ** i for i in range(h.shape[0])], dtype=np.int64)
        return (h.T @ pw).astype(np.int64) if h.shape[0] else np.zeros(self.n, dtype=np.int64)

    # -- membership & syndromes ----------------------------------------------

    def _check_word(self, w: Word) -> None:
        if w.field != self.field:
            raise FieldMismatch("word and code live over different fields")
        if len(w) != self.n:
            raise LengthMismatch(f"word length {len(w)} != code length {self.n}")

    def syndrome_index(self, w: Word) -> int:
        """H . w^T packed as an integer in base q (row i is digit i)."""
        self._check_word(w)
        if self.q == 2:
            s = 0
            for j in range(self.n):
                if (w.bits >> j) & 1:
                    s ^= int(self.parity_columns[j])
            return s
        if self.codim == 0:
            return 0
        syn = linalg.matmul(self.field, self.parity_check, w.as_array().reshape(-1, 1)).ravel()
        return int(sum(int(v) * self.q ** i for i, v in enumerate(syn)))

    def __contains__(self, w: Word) -> bool:
        return self.syndrome_index(w) == 0

    def codewords(self, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
        """Yield all q^k codewords as blocks of rows (symbol arrays)."""
        if self.k_dim == 0:
            yield np.zeros((1, self.n), dtype=np.int64)
            return
        total = self.size
        g = self.generator
        pw = np.array([self.q ** i for i in range(self.k_dim)], dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            msg = (idx[:, None] // pw[None, :]) % self.q
            if self.field.e == 1:
                yield (msg @ g) % self.q
            else:
                yield linalg.matmul(self.field, msg, g)

    def codeword_masks(self) -> np.ndarray:
        """All binary codewords as packed integers (q = 2 only)."""
        if self.q != 2:
            raise FieldMismatch("bit masks need a binary code")
        words = np.zeros(1, dtype=np.int64)
        for b in self.generator_bits:
            words = np.concatenate([words, words ^ b])
        return words

    def min_distance(self) -> int:
        """Minimum nonzero codeword weight, by full enumeration."""
        if self.k_dim == 0:
            raise ParameterOutOfRange("the zero code has no minimum distance")
        if self.q == 2:
            # every codeword is low ^ high over a split of the generator rows
            bits = self.generator_bits
            half = len(bits) // 2
            low = np.zeros(1, dtype=np.int64)
            for b in bits[:half]:
                low = np.concatenate([low, low ^ b])
            best = self.n
            for hi_idx, hi in enumerate(_span(bits[half:])):
                w = np.bitwise_count(low ^ hi)
                if hi_idx == 0:
                    w = w[1:]
                if w.size:
                    best = min(best, int(w.min()))
            return best
        best = self.n
        for block in self.codewords():
            w = (block != 0).sum(axis=1)
            w = w[w > 0]
            if w.size:
                best = min(best, int(w.min()))
        return best

    def contains_rowspace(self, other: "LinearCode") -> bool:
        """True when ``other`` is a subspace of this code."""
        if other.k_dim == 0:
            return True
        return not linalg.matmul(self.field, other.generator, self.parity_check.T).any()

    # -- FDPCODE text format --------------------------------------------------

    def to_text(self) -> str:
        lines = [f"FDPCODE {self.q} {self.n} {self.k_dim} {self.label}".rstrip()]
        for row in self.generator:
            lines.append(str(Word(self.field, row)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LinearCode":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split(maxsplit=4) if lines else []
        if len(head) < 4 or head[0] != "FDPCODE":
            raise ParameterOutOfRange("missing FDPCODE header")
        q, n, k = int(head[1]), int(head[2]), int(head[3])
        label = head[4] if len(head) > 4 else ""
        field = field_of_order(q)
        rows = [Word.parse(field, ln).symbols for ln in lines[1:1 + k]]
        if len(rows) != k or any(len(r) != n for r in rows):
            raise LengthMismatch("generator rows do not match the header")
        return cls(field, np.array(rows, dtype=np.int64).reshape(k, n), label=label)


def _span(bits):
    """Yield all XOR combinations of ``bits`` (Gray-code order, 0 first)."""
    cur = 0
    yield cur
    for i in range(1, 1 << len(bits)):
        cur ^= bits[(i & -i).bit_length() - 1]
        yield cur


def parity_check_of(code: LinearCode) -> np.ndarray:
    """(n-k) x n parity-check matrix from the RREF of the generator.

    One row per non-pivot column j (increasing j): 1 at j, and minus the
    RREF entry of column j at each pivot column.
    """
    g = np.asarray(code.generator)
    if linalg.rank(code.field, g) != g.shape[0]:
        raise RankDeficient("generator does not have full row rank")
    return linalg.nullspace(code.field, g, code.n)


def full_space(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(field, np.eye(n, dtype=np.int64), label=f"F_{field.q}^{n}")


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return LinearCode(field, np.zeros((0, n), dtype=np.int64), label="zero")


# -- Reed-Muller: Boolean functions of degree <= k ---------------------------

def monomial_subsets(m: int, k: int) -> list[tuple[int, ...]]:
    """Subsets I of {1..m} with |I| <= k, ordered by (|I|, lexicographic)."""
    out = []
    for size in range(k + 1):
        out.extend(combinations(range(1, m + 1), size))
    return out


def monomial_truth_table(subset, m: int) -> int:
    """Truth table of x_I as a 2^m-bit mask; point a has x_i = bit (i-1) of a."""
    need = sum(1 << (i - 1) for i in subset)
    return sum(1 << a for a in range(1 << m) if a & need == need)


def reed_muller(k: int, m: int) -> LinearCode:
    """RM(k, m): truth tables of square-free polynomials of degree <= k."""
    if not (0 <= k <= m <= 5):
        raise DegreeOutOfRange(f"need 0 <= k <= m <= 5, got k={k}, m={m}")
    n = 1 << m
    rows = []
    for subset in monomial_subsets(m, k):
        mask = monomial_truth_table(subset, m)
        rows.append([(mask >> a) & 1 for a in range(n)])
    g = np.array(rows, dtype=np.int64)
    code = LinearCode(BINARY, g, label=f"RM({k},{m})")
    assert code.k_dim == sum(comb(m, i) for i in range(k + 1))
    return code


# -- Hamming, Golay ------------------------------------------------------------

def hamming_code(r_check: int) -> LinearCode:
    if not 2 <= r_check <= 12:
        raise ParameterOutOfRange(f"need 2 <= r_check <= 12, got {r_check}")
    n = (1 << r_check) - 1
    h = np.array([[(col >> i) & 1 for col in range(1, n + 1)] for i in range(r_check)],
                 dtype=np.int64)
    g = linalg.nullspace(BINARY, h, n)
    return LinearCode(BINARY, g, parity_check=h, label=f"Hamming({n},{n - r_check})")


GOLAY_POLY = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)  # x^11+x^10+x^6+x^5+x^4+x^2+1, low first


def _cyclic_generator(poly, n: int) -> np.ndarray:
    k = n - (len(poly) - 1)
    g = np.zeros((k, n), dtype=np.int64)
    for j in range(k):
        g[j, j:j + len(poly)] = poly
    return g


def golay23() -> LinearCode:
    code = LinearCode(BINARY, _cyclic_generator(GOLAY_POLY, 23), label="G23")
    if (code.n, code.k_dim) != (23, 12) or code.min_distance() != 7:
        raise AssertionError("G23 self-check failed")
    return code


def golay24() -> LinearCode:
    g23 = _cyclic_generator(GOLAY_POLY, 23)
    g = np.hstack([g23, g23.sum(axis=1, keepdims=True) % 2])
    code = LinearCode(BINARY, g, label="G24")
    if (code.n, code.k_dim) != (24, 12) or code.min_distance() != 8:
        raise AssertionError("G24 self-check failed")
    return code


# -- Reed-Solomon ----------------------------------------------------------------

def poly_mul(field: FieldSpec, a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def poly_eval(field: FieldSpec, coeffs, x: int) -> int:
    acc = 0
    for c in reversed(list(coeffs)):
        acc = field.add(field.mul(acc, x), int(c))
    return acc


def roots_product(field: FieldSpec, count: int) -> list[int]:
    """Coefficients (low first) of (x - 1)(x - alpha)...(x - alpha^{count-1})."""
    poly = [1]
    for i in range(count):
        poly = poly_mul(field, poly, [field.neg(field.alpha_pow(i)), 1])
    return poly


def rs_generator_poly(field: FieldSpec, n: int, k: int) -> list[int]:
    return roots_product(field, n - k)


def rs_check_matrix(field: FieldSpec, n: int, k: int) -> np.ndarray:
    """Matrix of f -> (f(1), f(alpha), ..., f(alpha^{n-k-1})) on coefficient vectors."""
    return np.array([[field.alpha_pow(i * j) for j in range(n)] for i in range(n - k)],
                    dtype=np.int64).reshape(n - k, n)


def reed_solomon(field: FieldSpec, n: int, k: int) -> LinearCode:
    """Image of f -> G(x) f(x) on polynomials of degree < k, coefficient i at
    coordinate i.  Checked equal to the kernel of the evaluation map."""
    if not (1 <= k < n <= field.q - 1):
        raise ParameterOutOfRange(f"need 1 <= k < n <= q-1, got n={n}, k={k}, q={field.q}")
    gpoly = rs_generator_poly(field, n, k)
    g = np.zeros((k, n), dtype=np.int64)
    for j in range(k):
        g[j, j:j + len(gpoly)] = gpoly
    psi = rs_check_matrix(field, n, k)
    kernel = linalg.nullspace(field, psi, n)
    if not linalg.same_rowspace(field, g, kernel):
        raise AssertionError("image(phi) != kernel(psi)")
    return LinearCode(field, g, label=f"RS(GF({field.q}),{n},{k})")


def random_code(field: FieldSpec, n: int, k: int, seed: int) -> LinearCode:
    """Uniform full-rank k x n generator, by rejection sampling."""
    if not 0 <= k <= n:
        raise ParameterOutOfRange("need 0 <= k <= n")
    rng = np.random.default_rng(seed)
    while True:
        g = rng.integers(0, field.q, size=(k, n), dtype=np.int64)
        if linalg.rank(field, g) == k:
            return LinearCode(field, g, label=f"random({n},{k},seed={seed})")


def code_from_spec(spec: str) -> LinearCode:
    """Parse a short code name: golay23, golay24, hamming:R, rm:K:M,
    rs:Q:N:K, file:PATH."""
    name, *args = spec.split(":")
    name = name.lower()
    try:
        if name == "golay23":
            return golay23()
        if name == "golay24":
            return golay24()
        if name == "hamming":
            return hamming_code(int(args[0]))
        if name == "rm":
            return reed_muller(int(args[0]), int(args[1]))
        if name == "rs":
            return reed_solomon(field_of_order(int(args[0])), int(args[1]), int(args[2]))
        if name == "file":
            with open(":".join(args)) as fh:
                return LinearCode.from_text(fh.read())
    except (IndexError, ValueError) as exc:
        if isinstance(exc, FDPError):
            raise
        raise ParameterOutOfRange(f"bad code spec {spec!r}: {exc}") from None
    raise ParameterOutOfRange(f"unknown code {spec!r}")
