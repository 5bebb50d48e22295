"""Dense univariate polynomials over GF(q).

Coefficients are integer encodings, stored low degree first with no trailing
zeros; the zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator

from classprod.errors import FieldMismatch, MalformedInput
from classprod.field import FieldSpec


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        for c in cs:
            field.check(c)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def constant(cls, field: FieldSpec, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def x(cls, field: FieldSpec) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable[int]) -> Poly:
        out = cls(field, (1,))
        for r in roots:
            out = out * cls(field, (field.neg(r), 1))
        return out

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def sort_key(self) -> tuple:
        """Order by degree, then by coefficient encodings from the constant term up."""
        return (self.degree, self.coeffs)

    def _same(self, other: Poly) -> None:
        if other.field != self.field:
            raise FieldMismatch("polynomials over different fields")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __lt__(self, other: Poly) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Poly({self.to_string()} over GF({self.field.q}))"

    def to_string(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)

    def to_literal(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: Poly) -> Poly:
        self._same(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(f, (f.add(a[k] if k < len(a) else 0, b[k] if k < len(b) else 0) for k in range(n)))

    def __neg__(self) -> Poly:
        return Poly(self.field, (self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | int) -> Poly:
        f = self.field
        if isinstance(other, int):
            return Poly(f, (f.mul(c, other) for c in self.coeffs))
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(f)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Poly(f, out)

    def scale(self, c: int) -> Poly:
        return self * c

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        rem = list(self.coeffs)
        dg = other.degree
        inv_lead = f.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - dg, 0)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            t = f.mul(c, inv_lead)
            quot[k - dg] = t
            for j, g in enumerate(other.coeffs):
                rem[k - dg + j] = f.sub(rem[k - dg + j], f.mul(t, g))
        return Poly(f, quot), Poly(f, rem[:dg] if dg > 0 else ())

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return self.divmod(other)

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def __pow__(self, e: int) -> Poly:
        out = Poly(self.field, (1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, a: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, a), c)
        return acc

    def divides(self, other: Poly) -> bool:
        return (other % self).is_zero()

    def roots(self) -> list[int]:
        return [a for a in self.field.elements() if self(a) == 0]


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    return f.divmod(g)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def monic_polys(field: FieldSpec, degree: int) -> Iterator[Poly]:
    """All monic polynomials of one degree, in ``Poly.sort_key`` order."""
    # product() varies its last slot fastest, so the constant term is the
    # most significant key, as in sort_key
    for low in itertools.product(range(field.q), repeat=degree):
        yield Poly(field, low + (1,))


def is_irreducible(f: Poly) -> bool:
    """Exhaustive trial division by monic polynomials of degree at most deg f / 2."""
    if f.degree < 1 or not f.is_monic():
        raise MalformedInput("irreducibility is tested on monic non-constant polynomials")
    if f.degree == 1:
        return True
    for d in range(1, f.degree // 2 + 1):
        for g in monic_polys(f.field, d):
            if g.divides(f):
                return False
    return True


def find_w_irreducible(field: FieldSpec) -> int:
    """Smallest encoding ``w`` with ``x^2 - w x + 1`` irreducible, for even q >= 4."""
    if field.p != 2 or field.q < 4:
        raise MalformedInput("needs a field of order 2^m with m > 1")
    for w in field.elements():
        f = Poly(field, (1, field.neg(w), 1))
        if is_irreducible(f):
            return w
    raise AssertionError("no irreducible x^2 - wx + 1 found")  # pragma: no cover


def parse_poly(field: FieldSpec, literal: str) -> Poly:
    """Parse ``"c0,c1,...,cd"`` (coefficient encodings, low degree first)."""
    try:
        parts = [int(t) for t in literal.split(",") if t.strip()]
    except ValueError as exc:
        raise MalformedInput(f"bad polynomial literal {literal!r}") from exc
    return Poly(field, parts)
