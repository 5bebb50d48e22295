"""Rational canonical form over GF(q): invariant factors, similarity, and block arrangements.

The invariant factors of ``A`` are read off the Smith normal form of ``xI - A``
over GF(q)[x]; two matrices are GL-conjugate exactly when these agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Protocol

from classprod.errors import CentralInput, MalformedInput
from classprod.field import FieldSpec
from classprod.matrices import DiagPair, Mat, companion, direct_sum, nullspace
from classprod.polyring import Poly


@dataclass(frozen=True)
class ClassId:
    """Invariant factors ``f_1 | f_2 | ... | f_t``, all monic, ascending."""

    factors: tuple[Poly, ...]

    @property
    def n(self) -> int:
        return sum(f.degree for f in self.factors)

    def key(self) -> tuple:
        return tuple(f.coeffs for f in self.factors)

    def sort_key(self) -> tuple:
        return tuple(f.sort_key() for f in self.factors)

    def to_json(self) -> list[list[int]]:
        return [list(f.coeffs) for f in self.factors]

    def to_literals(self) -> list[str]:
        return [f.to_literal() for f in self.factors]

    def rational_form(self) -> Mat:
        return direct_sum([companion(f) for f in self.factors])

    def __str__(self) -> str:
        return " | ".join(f.to_string() for f in self.factors)


def smith_diagonal(mat: list[list[Poly]]) -> list[Poly]:
    """Monic diagonal of the Smith normal form of a square polynomial matrix.

    Works by repeated polynomial division on rows and columns; each diagonal
    entry divides the next. Zero entries are returned as zero polynomials.
    """
    n = len(mat)
    a = [list(row) for row in mat]
    out: list[Poly] = []
    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    e = a[i][j]
                    if not e.is_zero() and (best is None or e.degree < a[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                out.extend(a[t][t] for _ in range(t, n))
                return out
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
            piv = a[t][t]
            clean = True
            for i in range(t + 1, n):
                if not a[i][t].is_zero():
                    quo, rem = a[i][t].divmod(piv)
                    a[i] = [x - quo * y for x, y in zip(a[i], a[t])]
                    clean = clean and rem.is_zero()
            for j in range(t + 1, n):
                if not a[t][j].is_zero():
                    quo, rem = a[t][j].divmod(piv)
                    for row in a:
                        row[j] = row[j] - quo * row[t]
                    clean = clean and rem.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if not piv.divides(a[i][j])),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        out.append(a[t][t].monic())
    return out


def class_id(a: Mat) -> ClassId:
    field = a.field
    n = a.n
    x = Poly.x(field)
    zero = Poly(field)
    char = [
        [(x if i == j else zero) - Poly.constant(field, a[i, j]) for j in range(n)] for i in range(n)
    ]
    diag = smith_diagonal(char)
    return ClassId(tuple(f for f in diag if f.degree >= 1))


def are_similar(a: Mat, b: Mat) -> bool:
    return a.n == b.n and class_id(a) == class_id(b)


def is_diagonalizable(a: Mat, cid: ClassId | None = None) -> bool:
    """True when ``A`` is diagonalizable over its own field."""
    cid = cid or class_id(a)
    top = cid.factors[-1]
    return len(top.roots()) == top.degree


def eigenvalues(a: Mat, cid: ClassId | None = None) -> list[int]:
    """Eigenvalues in GF(q) with multiplicity, for a matrix diagonalizable over GF(q)."""
    cid = cid or class_id(a)
    vals = []
    for f in cid.factors:
        vals.extend(f.roots())
    return sorted(vals)


# -- centrality ----------------------------------------------------------------


class _HasFamily(Protocol):
    family: str


def is_scalar(a: Mat) -> bool:
    return a.is_scalar()


def is_central(a: Mat, group: _HasFamily | str) -> bool:
    """Scalar matrices are the center of GL; for SL the scalar must also have ``a^n = 1``."""
    family = group if isinstance(group, str) else group.family
    if not a.is_scalar():
        return False
    if family.upper() == "SL":
        return a.field.pow(a[0, 0], a.n) == 1
    return True


# -- arrangements --------------------------------------------------------------


@dataclass(frozen=True)
class RcfArrangement:
    """A block-diagonal matrix similar to the source, with a chosen last block.

    ``tail_kind`` is ``"companion"`` when the last block is the companion
    matrix of ``tail_poly`` (degree ``last_block_degree >= 2``), or ``"diag"``
    when the matrix is diagonal and its last two entries form ``pair``.
    """

    source: Mat
    blocks: tuple[Mat, ...]
    tail_kind: str
    last_block_degree: int
    tail_poly: Poly | None = None
    pair: DiagPair | None = None
    matrix: Mat = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", direct_sum(list(self.blocks)))

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    def tail_coeffs(self) -> tuple[int, ...]:
        """``a_0 .. a_{r-1}`` of the tail polynomial (companion tails only)."""
        if self.tail_poly is None:
            raise MalformedInput("diagonal tails have no companion coefficients")
        return self.tail_poly.coeffs[:-1]


def arrange_for_hypothesis(a: Mat, pair: tuple[int, int] | None = None) -> RcfArrangement:
    """Rearrange ``A`` so that its last block feeds the trace formulas.

    Matrices diagonalizable over the field become diagonal with two distinct
    eigenvalues ``(u, v)`` last; by default the two smallest encodings, or the
    given ``pair``. All others use the rational canonical form, whose largest
    invariant factor (degree at least 2) is already the last block.

    Raises:
        CentralInput: ``A`` is scalar.
    """
    if a.is_scalar():
        raise CentralInput("scalar matrices have no non-trivial arrangement")
    field = a.field
    cid = class_id(a)
    if is_diagonalizable(a, cid):
        vals = eigenvalues(a, cid)
        distinct = sorted(set(vals))
        if pair is None:
            u, v = distinct[0], distinct[1]
        else:
            u, v = pair
            if u == v or u not in distinct or v not in distinct:
                raise MalformedInput(f"{pair} is not a pair of distinct eigenvalues")
        rest = list(vals)
        rest.remove(u)
        rest.remove(v)
        blocks = tuple(Mat(field, 1, (e,)) for e in rest + [u, v])
        return RcfArrangement(a, blocks, "diag", 1, pair=DiagPair(u, v))
    blocks = tuple(companion(f) for f in cid.factors)
    tail = cid.factors[-1]
    return RcfArrangement(a, blocks, "companion", tail.degree, tail_poly=tail)


def similarity_transforms(a: Mat, m: Mat, seed: int = 0, tries: int = 256):
    """Yield invertible ``P`` with ``P^-1 A P = M``.

    Solves the linear system ``A P = P M`` and samples the solution space with
    a seeded RNG; the result is deterministic for a given seed.
    """
    field, n = a.field, a.n
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = field.add(row[k * n + j], a[i, k])
                row[i * n + k] = field.sub(row[i * n + k], m[k, j])
            rows.append(row)
    basis = nullspace(field, rows, n * n)
    if not basis:
        return
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randrange(field.q) for _ in basis]
        vec = [0] * (n * n)
        for c, b in zip(coeffs, basis):
            if c:
                vec = [field.add(x, field.mul(c, y)) for x, y in zip(vec, b)]
        p = Mat(field, n, vec)
        if p.det():
            yield p


def similarity_transform(a: Mat, m: Mat, seed: int = 0) -> Mat:
    for p in similarity_transforms(a, m, seed):
        return p
    raise MalformedInput("matrices are not similar")
