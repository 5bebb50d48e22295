"""Dense square matrices over GF(q) and the structured constructors used by the bounds.

Conjugation is right-handed throughout: ``conjugate(A, U) = U^-1 A U``. The 2x2
conjugator block of :class:`ConjugatorSpec` and the diagonal pair of
:class:`DiagPair` always sit in the last two coordinates.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from classprod.errors import FieldMismatch, MalformedInput
from classprod.field import FieldSpec
from classprod.polyring import Poly


class Mat:
    """An ``n x n`` matrix of field-element encodings, stored row-major."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: FieldSpec, n: int, entries: Iterable[int]):
        es = tuple(int(e) for e in entries)
        if n < 1 or len(es) != n * n:
            raise MalformedInput(f"expected {n * n} entries for a {n}x{n} matrix, got {len(es)}")
        for e in es:
            field.check(e)
        self.field = field
        self.n = n
        self.entries = es

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]]) -> Mat:
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise MalformedInput("matrix is not square")
        return cls(field, n, (e for r in rows for e in r))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Mat:
        return cls.scalar(field, n, 1)

    @classmethod
    def scalar(cls, field: FieldSpec, n: int, a: int) -> Mat:
        return cls(field, n, (a if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, field: FieldSpec, values: Sequence[int]) -> Mat:
        n = len(values)
        return cls(field, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_code(cls, field: FieldSpec, n: int, code: int) -> Mat:
        q = field.q
        es = []
        for _ in range(n * n):
            code, r = divmod(code, q)
            es.append(r)
        return cls(field, n, es)

    def code(self) -> int:
        """Integer encoding: entry ``k`` (row-major) is the base-q digit of weight q**k."""
        q = self.field.q
        v = 0
        for e in reversed(self.entries):
            v = v * q + e
        return v

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.n + j]

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n : (i + 1) * n]) for i in range(n)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Mat)
            and self.n == other.n
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.n, self.entries))

    def __repr__(self) -> str:
        return f"Mat({self.to_literal()!r} over GF({self.field.q}))"

    def to_literal(self) -> str:
        return ";".join(",".join(str(e) for e in row) for row in self.rows())

    def _same(self, other: Mat) -> None:
        if other.field != self.field:
            raise FieldMismatch("matrices over different fields")
        if other.n != self.n:
            raise MalformedInput(f"dimension mismatch: {self.n} vs {other.n}")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: Mat) -> Mat:
        self._same(other)
        f = self.field
        return Mat(f, self.n, (f.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat) -> Mat:
        self._same(other)
        f = self.field
        return Mat(f, self.n, (f.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __mul__(self, other: Mat) -> Mat:
        self._same(other)
        f, n = self.field, self.n
        a, b = self.entries, other.entries
        add, mul = f.add, f.mul
        out = []
        for i in range(n):
            row = a[i * n : (i + 1) * n]
            for j in range(n):
                s = 0
                for k in range(n):
                    x = row[k]
                    if x:
                        y = b[k * n + j]
                        if y:
                            s = add(s, mul(x, y))
                out.append(s)
        return Mat(f, n, out)

    __matmul__ = __mul__

    def scale(self, c: int) -> Mat:
        f = self.field
        return Mat(f, self.n, (f.mul(c, e) for e in self.entries))

    def trace(self) -> int:
        f = self.field
        t = 0
        for i in range(self.n):
            t = f.add(t, self[i, i])
        return t

    def det(self) -> int:
        f = self.field
        n = self.n
        a = self.rows()
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = f.neg(det)
            pv = a[col][col]
            det = f.mul(det, pv)
            inv = f.inv(pv)
            for r in range(col + 1, n):
                if a[r][col]:
                    t = f.mul(a[r][col], inv)
                    a[r] = [f.sub(x, f.mul(t, y)) for x, y in zip(a[r], a[col])]
        return det

    def inverse(self) -> Mat:
        f = self.field
        n = self.n
        a = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows())]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[piv] = a[piv], a[col]
            inv = f.inv(a[col][col])
            a[col] = [f.mul(inv, x) for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    t = a[r][col]
                    a[r] = [f.sub(x, f.mul(t, y)) for x, y in zip(a[r], a[col])]
        return Mat(f, n, (x for row in a for x in row[n:]))

    def is_invertible(self) -> bool:
        return self.det() != 0

    def is_scalar(self) -> bool:
        d = self.entries[0]
        n = self.n
        return all(e == (d if i % (n + 1) == 0 else 0) for i, e in enumerate(self.entries))

    def transpose(self) -> Mat:
        n = self.n
        return Mat(self.field, n, (self.entries[j * n + i] for i in range(n) for j in range(n)))

    def block(self, start: int, size: int) -> Mat:
        """Principal submatrix on coordinates ``start .. start + size - 1``."""
        n = self.n
        return Mat(
            self.field,
            size,
            (self.entries[i * n + j] for i in range(start, start + size) for j in range(start, start + size)),
        )


def mat_mul(a: Mat, b: Mat) -> Mat:
    return a * b


def mat_inverse(a: Mat) -> Mat:
    return a.inverse()


def mat_det(a: Mat) -> int:
    return a.det()


def mat_trace(a: Mat) -> int:
    return a.trace()


def conjugate(a: Mat, u: Mat) -> Mat:
    """``U^-1 A U``."""
    return u.inverse() * a * u


def companion(f: Poly) -> Mat:
    """Companion matrix with ones on the subdiagonal and ``-a_0 .. -a_{r-1}`` down the last column."""
    if f.degree < 1 or not f.is_monic():
        raise MalformedInput("companion matrices need a monic polynomial of degree >= 1")
    field = f.field
    r = f.degree
    rows = [[0] * r for _ in range(r)]
    for i in range(1, r):
        rows[i][i - 1] = 1
    for i in range(r):
        rows[i][r - 1] = field.neg(f[i])
    return Mat.from_rows(field, rows)


def direct_sum(blocks: Sequence[Mat]) -> Mat:
    if not blocks:
        raise MalformedInput("direct sum of an empty list")
    field = blocks[0].field
    for b in blocks:
        if b.field != field:
            raise FieldMismatch("blocks over different fields")
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[off + i][off + j] = b[i, j]
        off += b.n
    return Mat.from_rows(field, rows)


def charpoly(a: Mat) -> Poly:
    """Characteristic polynomial ``det(xI - A)`` by cofactor expansion over F[x]."""
    field, n = a.field, a.n
    x = Poly.x(field)
    m = [
        [(x if i == j else Poly(field)) - Poly.constant(field, a[i, j]) for j in range(n)]
        for i in range(n)
    ]
    return _poly_det(m)


def _poly_det(m: list[list[Poly]]) -> Poly:
    n = len(m)
    if n == 1:
        return m[0][0]
    field = m[0][0].field
    total = Poly(field)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _poly_det(minor)
        total = total - term if j % 2 else total + term
    return total


# -- structured conjugators ----------------------------------------------------

CONJUGATOR_KINDS = ("general", "affine", "detone")


@dataclass(frozen=True)
class ConjugatorSpec:
    """A 2x2 block ``D = [[a, b], [c, d]]`` embedded as ``diag(I, D)`` in dimension ``n``.

    ``affine`` is ``D(x, y) = [[x, y], [0, 1]]`` and needs ``x != 0``;
    ``detone`` needs ``ad - bc = 1``; ``general`` needs ``ad - bc != 0``.
    """

    field: FieldSpec
    kind: str
    a: int
    b: int
    c: int
    d: int
    n: int = 2

    def __post_init__(self) -> None:
        if self.kind not in CONJUGATOR_KINDS:
            raise MalformedInput(f"unknown conjugator kind {self.kind!r}")
        if self.n < 2:
            raise MalformedInput("conjugators need dimension at least 2")
        w = self.w
        if self.kind == "affine":
            if self.a == 0:
                raise MalformedInput("affine conjugator D(x, y) needs x != 0")
            if self.c != 0 or self.d != 1:
                raise MalformedInput("affine conjugator must have bottom row (0, 1)")
        if w == 0:
            raise MalformedInput("conjugator block is singular")
        if self.kind == "detone" and w != 1:
            raise MalformedInput("detone conjugator needs ad - bc = 1")

    @property
    def w(self) -> int:
        f = self.field
        return f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))

    @classmethod
    def general(cls, field: FieldSpec, a: int, b: int, c: int, d: int, n: int = 2) -> ConjugatorSpec:
        return cls(field, "general", a, b, c, d, n)

    @classmethod
    def affine(cls, field: FieldSpec, x: int, y: int, n: int = 2) -> ConjugatorSpec:
        return cls(field, "affine", x, y, 0, 1, n)

    @classmethod
    def detone(cls, field: FieldSpec, a: int, b: int, c: int, d: int, n: int = 2) -> ConjugatorSpec:
        return cls(field, "detone", a, b, c, d, n)

    @classmethod
    def detone_from_x(cls, field: FieldSpec, x: int, n: int = 2) -> ConjugatorSpec:
        """A determinant-one block with ``ad = x`` and ``bc = x - 1``."""
        bc = field.sub(x, 1)
        return cls(field, "detone", 1, 1 if bc else 0, bc, x, n)


def build_conjugator(spec: ConjugatorSpec) -> Mat:
    n = spec.n
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[n - 2][n - 2], rows[n - 2][n - 1] = spec.a, spec.b
    rows[n - 1][n - 2], rows[n - 1][n - 1] = spec.c, spec.d
    return Mat.from_rows(spec.field, rows)


@dataclass(frozen=True)
class DiagPair:
    """Distinct eigenvalues ``u != v`` placed as ``diag(u, v)`` in the last two coordinates."""

    u: int
    v: int

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise MalformedInput("diagonal pair needs u != v")

    def block(self, field: FieldSpec) -> Mat:
        return Mat.diag(field, (self.u, self.v))


# -- literals and linear algebra helpers ---------------------------------------


def parse_matrix(field: FieldSpec, literal: str) -> Mat:
    """Parse ``"a,b;c,d"``: rows split on ``;``, entries on ``,``."""
    try:
        rows = [[int(t) for t in row.split(",")] for row in literal.strip().split(";") if row.strip()]
    except ValueError as exc:
        raise MalformedInput(f"bad matrix literal {literal!r}") from exc
    if not rows:
        raise MalformedInput("empty matrix literal")
    return Mat.from_rows(field, rows)


def nullspace(field: FieldSpec, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{v : rows . v = 0}`` by reduced row echelon form."""
    a = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][col])
        a[r] = [field.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                t = a[i][col]
                a[i] = [field.sub(x, field.mul(t, y)) for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(a[i][fc])
        basis.append(v)
    return basis
