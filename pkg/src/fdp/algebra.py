"""Finite fields F_q (q = p^e <= 2^16), words over them and the Hamming metric.

Elements are encoded as integers ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}`` where
``(c_0, ..., c_{e-1})`` is the coefficient vector of the representative
polynomial modulo the field's fixed irreducible modulus.  All arithmetic runs
on these integer codes; :class:`FieldElement` and :class:`Word` are thin
immutable carriers on top.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatch, LengthMismatch, NotPrime, TooLarge

MAX_ORDER = 1 << 16
_TABLE_LIMIT = 256  # full q x q addition table below this order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def split_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise NotPrime."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


# -- polynomials over F_p as coefficient lists, lowest degree first ---------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    m = _poly_trim(list(m))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p) if p > 2 else 1
    while len(a) - 1 >= dm and a:
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_mod(prod, m, p)


def _monic_polys(p: int, degree: int) -> Iterable[list[int]]:
    for low in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(low % p)
            low //= p
        yield coeffs + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial factorization: no monic factor of degree 1..deg/2 divides ``poly``."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(poly, g, p):
                return False
    return True


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(x % p)
        x //= p
    return out


class FieldSpec:
    """The finite field F_q, q = p^e, with a fixed modulus and primitive element.

    Construct through :func:`field_make`, which picks the modulus and the
    primitive element deterministically.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if e < 1:
            raise TooLarge("extension degree must be >= 1")
        if p ** e > MAX_ORDER:
            raise TooLarge(f"field order {p}^{e} exceeds 2^16")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        self._pw = np.array([p ** i for i in range(e)], dtype=np.int64)
        self._digit_tab = np.array([_digits(x, p, e) for x in range(self.q)], dtype=np.int64)
        self._build_log_tables()

    # -- construction helpers ------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        if self.p == 2:
            mod = sum(c << i for i, c in enumerate(self.modulus))
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> self.e) & 1:
                    a ^= mod
            return r
        pa = _digits(a, self.p, self.e)
        pb = _digits(b, self.p, self.e)
        r = _poly_mulmod(pa, pb, self.modulus, self.p)
        return sum(c * self.p ** i for i, c in enumerate(r))

    def _pow_slow(self, a: int, k: int) -> int:
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            k >>= 1
        return result

    def canonical_key(self, x: int) -> tuple[int, ...]:
        """Sort key of the canonical element order (low-degree coefficient first)."""
        return tuple(self._digit_tab[x])

    def _build_log_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = prime_factors(order)
        prim = None
        for x in sorted(range(1, q), key=self.canonical_key):
            if all(self._pow_slow(x, order // r) != 1 for r in factors):
                prim = x
                break
        assert prim is not None
        exp = [1] * order
        for i in range(1, order):
            exp[i] = self._mul_slow(exp[i - 1], prim)
        log = [-1] * q
        for i, v in enumerate(exp):
            log[v] = i
        if -1 in log[1:]:
            raise ValueError("primitive element does not generate F_q^x")
        self._prim = prim
        self._exp = exp
        self._log = log
        self._exp_arr = np.array(exp + exp, dtype=np.int64)
        self._log_arr = np.array(log, dtype=np.int64)
        self._add_tab = None
        if q <= _TABLE_LIMIT:
            d = self._digit_tab
            s = (d[:, None, :] + d[None, :, :]) % self.p
            self._add_tab = s @ self._pw
            self._add_list = self._add_tab.tolist()
            self._neg_list = [int(((-self._digit_tab[x]) % self.p) @ self._pw) for x in range(q)]

    # -- identity / display --------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.serialize()})"

    def serialize(self) -> str:
        sep = "" if self.p <= 10 else ","
        return f"GF({self.p}^{self.e})/" + sep.join(str(c) for c in self.modulus)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        head, _, coeffs = text.strip().partition("/")
        p, e = head[3:-1].split("^")
        p, e = int(p), int(e)
        mod = [int(c) for c in coeffs.split(",")] if "," in coeffs else [int(c) for c in coeffs]
        fld = field_make(p, e)
        if tuple(mod) != fld.modulus:
            return cls(p, e, mod)
        return fld

    # -- scalar arithmetic on integer codes ----------------------------------

    @property
    def primitive_element(self) -> "FieldElement":
        return FieldElement(self, self._prim)

    @property
    def primitive(self) -> int:
        return self._prim

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return self._add_list[a][b]
        return int(((self._digit_tab[a] + self._digit_tab[b]) % self.p) @ self._pw)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        if self._add_tab is not None:
            return self._neg_list[a]
        return int(((-self._digit_tab[a]) % self.p) @ self._pw)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def power(self, a: int, k: int) -> int:
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def alpha_pow(self, k: int) -> int:
        """alpha^k for the primitive element alpha."""
        return self._exp[k % (self.q - 1)]

    def order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        from math import gcd
        return (self.q - 1) // gcd(self._log[a], self.q - 1)

    def coefficients(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self._digit_tab[a])

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, x) for x in sorted(range(self.q), key=self.canonical_key)]

    # -- vectorised arithmetic on numpy arrays of codes ----------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return self._add_tab[a, b]
        return ((self._digit_tab[a] + self._digit_tab[b]) % self.p) @ self._pw

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return ((-self._digit_tab[a]) % self.p) @ self._pw

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        out = self._exp_arr[(self._log_arr[a] + self._log_arr[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> FieldSpec:
    """F_{p^e} with the least irreducible monic modulus (integer order of
    ``c_0 + c_1 p + ... + p^e``) and the least primitive element under the
    canonical element order."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise TooLarge("extension degree must be >= 1")
    if p ** e > MAX_ORDER:
        raise TooLarge(f"field order {p}^{e} exceeds 2^16")
    for coeffs in _monic_polys(p, e):
        if is_irreducible(coeffs, p):
            return FieldSpec(p, e, coeffs)
    raise AssertionError("an irreducible polynomial of every degree exists")


def field_of_order(q: int) -> FieldSpec:
    p, e = split_prime_power(q)
    return field_make(p, e)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("elements of different fields")
            return other.value
        if isinstance(other, int):
            # integers act through the prime subfield
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._check(other)
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._check(other)
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        v = self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(v)))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.power(self.value, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def order(self) -> int:
        return self.field.order(self.value)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.field.coefficients(self.value)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self.value} in GF({self.field.q}))"


class Word:
    """A length-n vector over F_q.  Binary words also keep a packed bit mask
    (bit i = coordinate i) so distances reduce to a popcount."""

    __slots__ = ("field", "symbols", "bits")

    def __init__(self, field: FieldSpec, symbols: Iterable[int]):
        symbols = tuple(int(s) for s in symbols)
        for s in symbols:
            if not 0 <= s < field.q:
                raise ValueError(f"symbol {s} outside GF({field.q})")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "symbols", symbols)
        bits = None
        if field.q == 2:
            bits = 0
            for i, s in enumerate(symbols):
                if s:
                    bits |= 1 << i
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "Word":
        return cls(field_make(2, 1), ((bits >> i) & 1 for i in range(n)))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Word":
        return cls(field, [0] * n)

    @classmethod
    def from_elements(cls, elements: Sequence[FieldElement]) -> "Word":
        if not elements:
            raise ValueError("cannot infer the field of an empty element list")
        f = elements[0].field
        if any(x.field != f for x in elements):
            raise FieldMismatch("entries from different fields")
        return cls(f, (x.value for x in elements))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Word":
        text = text.strip()
        if field.q <= 10 and "," not in text:
            return cls(field, (int(c) for c in text))
        if not text:
            return cls(field, ())
        return cls(field, (int(c) for c in text.split(",")))

    def __str__(self):
        if self.field.q <= 10:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    def __repr__(self):
        return f"Word({self}, GF({self.field.q}))"

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    @property
    def entries(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, s) for s in self.symbols)

    def __eq__(self, other):
        return isinstance(other, Word) and self.field == other.field and self.symbols == other.symbols

    def __hash__(self):
        return hash((self.field, self.symbols))

    def _pair(self, other: "Word") -> None:
        if self.field != other.field:
            raise FieldMismatch("words over different fields")
        if len(self) != len(other):
            raise LengthMismatch(f"lengths {len(self)} and {len(other)} differ")

    def __add__(self, other: "Word") -> "Word":
        self._pair(other)
        f = self.field
        return Word(f, (f.add(a, b) for a, b in zip(self.symbols, other.symbols)))

    def __sub__(self, other: "Word") -> "Word":
        self._pair(other)
        f = self.field
        return Word(f, (f.sub(a, b) for a, b in zip(self.symbols, other.symbols)))

    def __neg__(self) -> "Word":
        return Word(self.field, (self.field.neg(a) for a in self.symbols))

    def scale(self, c: int) -> "Word":
        return Word(self.field, (self.field.mul(c, a) for a in self.symbols))

    def as_array(self) -> np.ndarray:
        return np.array(self.symbols, dtype=np.int64)


def hamming_distance(u: Word, v: Word) -> int:
    """Number of coordinates where ``u`` and ``v`` differ."""
    u._pair(v)
    if u.bits is not None:
        return (u.bits ^ v.bits).bit_count()
    return sum(1 for a, b in zip(u.symbols, v.symbols) if a != b)


def weight(u: Word) -> int:
    if u.bits is not None:
        return u.bits.bit_count()
    return sum(1 for a in u.symbols if a)
