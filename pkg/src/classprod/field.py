"""Arithmetic in GF(p^m).

Elements are encoded as integers in ``[0, q)``; the base-``p`` digits of the
encoding, least significant first, are the coefficients of the canonical
polynomial representative modulo the field's defining polynomial.

Two views are offered. :class:`FieldSpec` works on raw integer encodings and is
what the matrix and group code uses internally. :class:`Felt` wraps an encoding
together with its field and overloads the arithmetic operators, which keeps the
trace formulas in :mod:`classprod.bounds` readable.
"""

from __future__ import annotations

import functools
from collections.abc import Iterator, Sequence

import numpy as np

from classprod.errors import FieldMismatch, MalformedInput

MAX_ORDER = 1 << 16
# numpy q x q tables are only materialized for fields this small
MAX_TABLE_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def base_digits(a: int, base: int, count: int) -> list[int]:
    """Little-endian base-``base`` digits of ``a``, padded to ``count``."""
    out = []
    for _ in range(count):
        a, r = divmod(a, base)
        out.append(r)
    return out


class FieldSpec:
    """The finite field GF(p^m) with an explicit monic irreducible modulus.

    Use :func:`make_field` rather than calling the constructor: it selects the
    deterministic modulus and checks irreducibility. The constructor trusts its
    ``modulus`` argument.

    Attributes:
        p: characteristic.
        m: extension degree.
        q: field order ``p**m``.
        modulus: coefficients of the defining polynomial, low degree first,
            length ``m + 1`` with a trailing 1. For ``m == 1`` this is the
            placeholder ``x``, i.e. ``(0, 1)``.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(int(c) for c in modulus)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise MalformedInput(f"modulus {self.modulus} is not monic of degree {m}")
        self._build_log_tables()
        self._build_sqrt_table()

    # -- construction helpers -------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        return base_digits(a, self.p, self.m)

    def _undigits(self, ds: Sequence[int]) -> int:
        v = 0
        for c in reversed(ds):
            v = v * self.p + c
        return v

    def _polymulmod(self, a: int, b: int) -> int:
        """Multiply encodings as polynomials and reduce by the modulus."""
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
        return self._undigits([c % p for c in prod[:m]])

    def _polypow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._polymulmod(result, a)
            a = self._polymulmod(a, a)
            e >>= 1
        return result

    def _build_log_tables(self) -> None:
        q = self.q
        if q == 2:
            g = 1
        else:
            cofactors = [(q - 1) // ell for ell in prime_factors(q - 1)]
            for g in range(2, q):
                if all(self._polypow(g, c) != 1 for c in cofactors):
                    break
            else:  # pragma: no cover - every finite field has a primitive element
                raise MalformedInput(f"modulus {self.modulus} does not define a field")
        self.generator = g
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        v = 1
        for k in range(q - 1):
            exp[k] = v
            log[v] = k
            v = self._polymulmod(v, g)
        if v != 1:  # pragma: no cover
            raise MalformedInput(f"modulus {self.modulus} does not define a field")
        exp[q - 1 :] = exp[: q - 1]
        self._exp = exp
        self._log = log

    def _build_sqrt_table(self) -> None:
        q = self.q
        table = [-1] * q
        if self.p == 2:
            half = q // 2
            for a in range(q):
                table[a] = self.pow(a, half)
        else:
            for y in range(q):
                s = self.mul(y, y)
                if table[s] < 0:
                    table[s] = y
        self._sqrt = table

    # -- identity -------------------------------------------------------------

    def _key(self) -> tuple:
        return (self.p, self.m, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    @property
    def literal(self) -> str:
        return f"{self.p}^{self.m}"

    # -- integer-encoded arithmetic ------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise MalformedInput(f"{a} is not an element encoding of GF({self.q})")
        return a

    def from_int(self, k: int) -> int:
        """Image of the integer ``k`` in the prime subfield."""
        return k % self.p

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        v, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            v += ((x + y) % p) * place
            place *= p
        return v

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        v, place = 0, 1
        while a:
            a, x = divmod(a, p)
            v += (-x % p) * place
            place *= p
        return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def is_square(self, a: int) -> bool:
        if self.p == 2 or a == 0:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """Canonical square root, or ``None`` for a non-square.

        For odd ``q`` the root with the smaller encoding is returned; for even
        ``q`` the root is unique.
        """
        r = self._sqrt[a]
        return None if r < 0 else r

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, v: int) -> Felt:
        return Felt(self, self.check(int(v)))

    def felts(self) -> Iterator[Felt]:
        for v in range(self.q):
            yield Felt(self, v)

    # -- numpy tables for vectorized kernels ---------------------------------

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        self._require_small()
        e = np.arange(self.q)
        if self.m == 1:
            return ((e[:, None] + e[None, :]) % self.p).astype(np.int32)
        if self.p == 2:
            return (e[:, None] ^ e[None, :]).astype(np.int32)
        digits = np.array([self._digits(a) for a in range(self.q)], dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.m, dtype=np.int64)
        return (summed @ weights).astype(np.int32)

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        self._require_small()
        q = self.q
        log = np.array(self._log, dtype=np.int64)
        exp = np.array(self._exp, dtype=np.int32)
        table = exp[log[:, None] + log[None, :]]
        table[0, :] = 0
        table[:, 0] = 0
        return table.astype(np.int32)

    @functools.cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int32)

    def _require_small(self) -> None:
        if self.q > MAX_TABLE_ORDER:
            raise MalformedInput(f"GF({self.q}) is too large for dense operation tables")


class Felt:
    """A field element bound to its field."""

    __slots__ = ("field", "v")

    def __init__(self, field: FieldSpec, v: int):
        self.field = field
        self.v = v

    def _other(self, other: Felt | int) -> int:
        if isinstance(other, Felt):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other.v
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Felt(self.field, self.field.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Felt(self.field, self.field.sub(self.v, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Felt(self.field, self.field.sub(o, self.v))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Felt(self.field, self.field.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Felt(self.field, self.field.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Felt(self.field, self.field.div(o, self.v))

    def __neg__(self):
        return Felt(self.field, self.field.neg(self.v))

    def __pow__(self, e: int):
        return Felt(self.field, self.field.pow(self.v, e))

    def inv(self) -> Felt:
        return Felt(self.field, self.field.inv(self.v))

    def is_square(self) -> bool:
        return self.field.is_square(self.v)

    def sqrt(self) -> Felt | None:
        r = self.field.sqrt(self.v)
        return None if r is None else Felt(self.field, r)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Felt):
            return self.field == other.field and self.v == other.v
        if isinstance(other, (int, np.integer)):
            return self.v == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.v))

    def __bool__(self) -> bool:
        return self.v != 0

    def __int__(self) -> int:
        return self.v

    def __index__(self) -> int:
        return self.v

    def __lt__(self, other: Felt) -> bool:
        return self.v < self._other(other)

    def __repr__(self) -> str:
        return f"Felt({self.v} in GF({self.field.q}))"


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Build GF(p^m).

    Without an explicit ``modulus`` the defining polynomial is the
    lexicographically smallest monic irreducible of degree ``m`` over Z/p,
    comparing coefficients from the constant term upward.

    Raises:
        MalformedInput: ``p`` not prime, ``m < 1``, ``p**m`` over 2**16, or an
            explicit modulus that is not monic irreducible of degree ``m``.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise MalformedInput(f"characteristic {p} is not prime")
    if not isinstance(m, int) or m < 1:
        raise MalformedInput(f"extension degree {m} must be at least 1")
    if p**m > MAX_ORDER:
        raise MalformedInput(f"field order {p}^{m} exceeds {MAX_ORDER}")
    if m == 1:
        if modulus is not None and tuple(modulus) != (0, 1):
            raise MalformedInput("prime fields use the placeholder modulus x")
        return FieldSpec(p, 1, (0, 1))

    from classprod.polyring import Poly, is_irreducible, monic_polys

    prime = make_field(p, 1)
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1 or not is_irreducible(Poly(prime, modulus)):
            raise MalformedInput(f"{list(modulus)} is not a monic irreducible of degree {m} over Z/{p}")
        return FieldSpec(p, m, modulus)
    for f in monic_polys(prime, m):
        if is_irreducible(f):
            return FieldSpec(p, m, f.coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {m} over Z/{p}")  # pragma: no cover


def parse_field(literal: str) -> FieldSpec:
    """Parse ``"p^m"`` (or a bare prime ``"p"``)."""
    text = literal.strip()
    try:
        if "^" in text:
            p_text, m_text = text.split("^", 1)
            p, m = int(p_text), int(m_text)
        else:
            p, m = int(text), 1
    except ValueError as exc:
        raise MalformedInput(f"bad field literal {literal!r}; expected p^m") from exc
    return make_field(p, m)


def parse_element(field: FieldSpec, literal: str) -> int:
    try:
        v = int(literal.strip())
    except ValueError as exc:
        raise MalformedInput(f"bad element literal {literal!r}") from exc
    return field.check(v)
