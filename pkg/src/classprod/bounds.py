"""Certified lower bounds on ``eta(A^G B^G)`` from sets of distinct traces.

Matrices in one conjugacy class share a trace, so ``k`` distinct traces among
products ``X Y`` (``X`` conjugate to ``A``, ``Y`` conjugate to ``B``) force at
least ``k`` classes. The products used here are ``M^E N`` where ``M``, ``N``
are block arrangements of ``A``, ``B`` (see :func:`arrange_for_hypothesis`)
and ``E = diag(I, D)`` is a structured conjugator acting on the last two
coordinates. Closed-form traces are evaluated for each conjugator and every
value is confirmed by an explicit conjugation before it is counted.

Lemma paths:

``main1-i``    both tails companion blocks, degrees ``r > 2`` and ``s > 2``
``main1-ii``   ``r == 2`` and ``s >= 2``
``main1-iii``  companion tail against a diagonal pair ``(u, v)``
``main2``      two diagonal pairs, determinant-one conjugators
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field as dc_field
from typing import Any

from classprod.canonical import (
    RcfArrangement,
    arrange_for_hypothesis,
    class_id,
    is_central,
    similarity_transforms,
)
from classprod.classgroup import EtaReport, GroupSpec
from classprod.errors import CentralInput, MalformedInput
from classprod.field import Felt, FieldSpec
from classprod.matrices import ConjugatorSpec, Mat, build_conjugator, conjugate

# -- counting lemmas -----------------------------------------------------------


def ceil_half(q: int) -> int:
    return (q + 1) // 2


def quad_image_size(field: FieldSpec, a: int, b: int, c: int) -> int:
    """``|{a i^2 + b i + c : i in F}|`` by enumeration; ``a`` must be nonzero."""
    if a == 0:
        raise MalformedInput("quadratic image needs a != 0")
    f = field
    image = {f.add(f.add(f.mul(a, f.mul(i, i)), f.mul(b, i)), c) for i in f.elements()}
    size = len(image)
    if size < ceil_half(f.q):
        raise AssertionError(f"quadratic image of size {size} below ceil(q/2) in GF({f.q})")
    if f.p == 2 and b == 0 and size != f.q:
        raise AssertionError("quadratic image without linear term is not all of an even field")
    return size


def _eq1_value(f: FieldSpec, a: int, b: int, c: int, d: int, e: int, x: int, y: int) -> int:
    """``(a x^2 - y^2 + b x y + c y + e) / x + d`` for ``x != 0``."""
    num = f.mul(a, f.mul(x, x))
    num = f.sub(num, f.mul(y, y))
    num = f.add(num, f.mul(b, f.mul(x, y)))
    num = f.add(num, f.mul(c, y))
    num = f.add(num, e)
    return f.add(f.div(num, x), d)


def eq1_residual(f: FieldSpec, a: int, b: int, c: int, d: int, e: int, fv: int, x: int, y: int) -> int:
    """Left side of ``a x^2 - y^2 + b x y + c y + (d - f) x + e``."""
    t = f.mul(a, f.mul(x, x))
    t = f.sub(t, f.mul(y, y))
    t = f.add(t, f.mul(b, f.mul(x, y)))
    t = f.add(t, f.mul(c, y))
    t = f.add(t, f.mul(f.sub(d, fv), x))
    return f.add(t, e)


def count_solvable_f(
    field: FieldSpec, a: int, b: int, c: int, d: int, e: int
) -> tuple[int, dict[int, tuple[int, int]]]:
    """Values ``f`` for which the quadratic equation has a solution with ``x != 0``.

    Returns the count and one witness ``(x, y)`` per solvable ``f`` (the first
    in ``(x, y)`` encoding order).
    """
    f = field
    witnesses: dict[int, tuple[int, int]] = {}
    for x in range(1, f.q):
        for y in f.elements():
            fv = _eq1_value(f, a, b, c, d, e, x, y)
            witnesses.setdefault(fv, (x, y))
    if len(witnesses) < f.q - 1:
        raise AssertionError(f"only {len(witnesses)} solvable values of f in GF({f.q})")
    return len(witnesses), witnesses


def discriminant(field: FieldSpec, a: int, b: int, c: int, d: int, e: int, fv: int, y: int) -> int:
    """``(b y + d - f)^2 - 4 a (e + c y - y^2)``."""
    f = field
    lin = f.add(f.mul(b, y), f.sub(d, fv))
    const = f.sub(f.add(e, f.mul(c, y)), f.mul(y, y))
    return f.sub(f.mul(lin, lin), f.mul(f.mul(f.from_int(4), a), const))


def solve_eq1(field: FieldSpec, a: int, b: int, c: int, d: int, e: int, fv: int) -> tuple[int, int] | None:
    """A solution ``(x, y)`` with ``x != 0``, or ``None``.

    For each ``y`` the equation is quadratic in ``x``. In odd characteristic the
    roots come from the discriminant and the field's square-root table; in even
    characteristic the quadratic formula is unavailable and ``x`` is searched.
    """
    f = field
    for y in f.elements():
        lin = f.add(f.mul(b, y), f.sub(d, fv))
        const = f.sub(f.add(e, f.mul(c, y)), f.mul(y, y))
        if a == 0:
            if lin:
                x = f.neg(f.div(const, lin))
                if x:
                    return x, y
            elif const == 0:
                return 1, y
            continue
        if f.p == 2:
            for x in range(1, f.q):
                if f.add(f.add(f.mul(a, f.mul(x, x)), f.mul(lin, x)), const) == 0:
                    return x, y
            continue
        root = f.sqrt(discriminant(f, a, b, c, d, e, fv, y))
        if root is None:
            continue
        two_a = f.mul(f.from_int(2), a)
        for r in (root, f.neg(root)):
            x = f.div(f.sub(r, lin), two_a)
            if x:
                return x, y
    return None


# -- closed forms --------------------------------------------------------------


def _companion_coeffs(r_mat: Mat) -> list[int]:
    """``a_0 .. a_{r-1}`` of a companion block, checking its layout."""
    f, r = r_mat.field, r_mat.n
    for i in range(r):
        for j in range(r - 1):
            if r_mat[i, j] != (1 if i == j + 1 else 0):
                raise MalformedInput("not a companion block")
    return [f.neg(r_mat[i, r - 1]) for i in range(r)]


def conjugated_companion(r_mat: Mat, spec: ConjugatorSpec) -> Mat:
    """``E^-1 R E`` for a companion block ``R`` and ``E = diag(I, D)``, in closed form."""
    f = r_mat.field
    r = r_mat.n
    if r < 2:
        raise MalformedInput("companion block of degree >= 2 required")
    F = f.__call__
    a_ = [F(v) for v in _companion_coeffs(r_mat)]
    a, b, c, d = F(spec.a), F(spec.b), F(spec.c), F(spec.d)
    w = a * d - b * c
    if not w:
        raise MalformedInput("conjugator block is singular")
    ar2, ar1 = a_[r - 2], a_[r - 1]
    tail = [
        [(-ar2 * c * d - a * b + ar1 * b * c) / w, (-ar2 * d * d - b * b + ar1 * b * d) / w],
        [(ar2 * c * c + a * a - a * ar1 * c) / w, (ar2 * c * d + a * b - a * ar1 * d) / w],
    ]
    rows = [[F(0)] * r for _ in range(r)]
    for i in range(r - 2):
        if i >= 1:
            rows[i][i - 1] = F(1)
        rows[i][r - 2] = -a_[i] * c
        rows[i][r - 1] = -a_[i] * d
    if r > 2:
        rows[r - 2][r - 3] = d / w
        rows[r - 1][r - 3] = -c / w
    rows[r - 2][r - 2], rows[r - 2][r - 1] = tail[0]
    rows[r - 1][r - 2], rows[r - 1][r - 1] = tail[1]
    return Mat.from_rows(f, [[int(v) for v in row] for row in rows])


def trace_main1_general(
    acoef: list[Felt], bcoef: list[Felt], a: Felt, b: Felt, c: Felt, d: Felt, trace_mn: Felt
) -> Felt:
    """Trace of ``M^E N`` for companion tails of degrees ``r = len(acoef)``, ``s = len(bcoef)``.

    Covers ``r > 2, s > 2`` and ``r == 2, s >= 2``.
    """
    r, s = len(acoef), len(bcoef)
    w = a * d - b * c
    ar1, ar2 = acoef[r - 1], acoef[r - 2]
    bs1, bs2 = bcoef[s - 1], bcoef[s - 2]
    if r > 2 and s > 2:
        ar3, bs3 = acoef[r - 3], bcoef[s - 3]
        inner = (
            -ar2 * d * d - b * b + ar1 * b * d + bs3 * c
            - ar2 * bs2 * c * c - a * a * bs2 + a * ar1 * bs2 * c
            - ar2 * bs1 * c * d - a * b * bs1 + a * ar1 * bs1 * d
        )
        return trace_mn - ar3 * c + ar2 + bs2 - ar1 * bs1 + inner / w
    if r == 2 and s >= 2:
        a0, a1 = acoef
        inner = (
            -a0 * d * d - b * b + a1 * b * d
            - bs2 * (a0 * c * c + a * a - a * a1 * c)
            - bs1 * (a0 * c * d + a * b - a * a1 * d)
        )
        return trace_mn + a0 + bs2 - a1 * bs1 + inner / w
    raise MalformedInput(f"no companion-tail formula for r={r}, s={s}")


def trace_main1_affine(acoef: list[Felt], bcoef: list[Felt], x: Felt, y: Felt, trace_mn: Felt) -> Felt:
    """Trace of ``M^{E(x,y)} N`` for companion tails (any ``r, s >= 2``)."""
    r, s = len(acoef), len(bcoef)
    ar1, ar2 = acoef[r - 1], acoef[r - 2]
    bs1, bs2 = bcoef[s - 1], bcoef[s - 2]
    return (-bs2 * x * x - y * y - bs1 * x * y + ar1 * y - ar2) / x + ar2 + bs2 + trace_mn


def trace_main1_iii_general(
    acoef: list[Felt], u: Felt, v: Felt, a: Felt, b: Felt, c: Felt, d: Felt, trace_mn: Felt
) -> Felt:
    """Trace of ``M^E N_1`` for a companion tail against ``diag(.., u, v)``."""
    r = len(acoef)
    ar1, ar2 = acoef[r - 1], acoef[r - 2]
    w = a * d - b * c
    return trace_mn + u * (-ar2 * c * d - a * b + ar1 * b * c) / w + v * ((ar2 * c * d + a * b - a * ar1 * d) / w + ar1)


def trace_main1_iii_affine(u: Felt, v: Felt, x: Felt, y: Felt, trace_mn: Felt) -> Felt:
    """Trace of ``M^{E(x,y)} N_1``: ``y (v - u) + Tr(M N_1)``, independent of ``x``."""
    del x
    return y * (v - u) + trace_mn


def trace_main2_general(
    u1: Felt, v1: Felt, u2: Felt, v2: Felt, a: Felt, b: Felt, c: Felt, d: Felt, trace_cn: Felt
) -> Felt:
    """Trace of ``C^E N`` for two diagonal tails; reduces to the determinant-one form when ``w = 1``."""
    w = a * d - b * c
    ad, bc = a * d, b * c
    return trace_cn + ((ad * u1 - bc * v1) / w - u1) * u2 + ((ad * v1 - bc * u1) / w - v1) * v2


def trace_main2_x(u1: Felt, v1: Felt, u2: Felt, v2: Felt, x: Felt, trace_cn: Felt) -> Felt:
    """With ``ad = x`` and ``bc = x - 1``: ``x (u1-v1)(u2-v2) + Tr(CN) - (u1-v1)(u2-v2)``."""
    k = (u1 - v1) * (u2 - v2)
    return x * k + (trace_cn - k)


# -- sweeps --------------------------------------------------------------------

FAMILY_AFFINE = "E(x,y)"
FAMILY_AFFINE_FIXED = "E(c,y)"
FAMILY_DETONE = "detone"


@dataclass
class Witness:
    trace: int
    block: ConjugatorSpec
    group_conjugator: Mat | None = None
    product: Mat | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "trace": self.trace,
            "D": [[self.block.a, self.block.b], [self.block.c, self.block.d]],
        }
        if self.group_conjugator is not None:
            out["U"] = self.group_conjugator.to_literal()
        if self.product is not None:
            out["product"] = self.product.to_literal()
        return out


@dataclass
class TraceSetReport:
    traces: list[int]
    family: str
    lemma_path: str
    witnesses: dict[int, Witness] = dc_field(default_factory=dict)
    swapped: bool = False

    @property
    def size(self) -> int:
        return len(self.traces)

    def to_dict(self) -> dict[str, Any]:
        return {
            "lemma_path": self.lemma_path,
            "family": self.family,
            "swapped": self.swapped,
            "size": self.size,
            "traces": self.traces,
            "witnesses": [self.witnesses[t].to_dict() for t in self.traces],
        }


def lemma_path(m: RcfArrangement, n: RcfArrangement) -> str:
    if m.tail_kind == "companion" and n.tail_kind == "companion":
        r, s = m.last_block_degree, n.last_block_degree
        if r > 2 and s > 2:
            return "main1-i"
        if r == 2 and s >= 2:
            return "main1-ii"
        raise MalformedInput(f"tail degrees r={r}, s={s}: swap the operands")
    if m.tail_kind == "companion" and n.tail_kind == "diag":
        return "main1-iii"
    if m.tail_kind == "diag" and n.tail_kind == "diag":
        return "main2"
    raise MalformedInput("diagonal tail against a companion tail: swap the operands")


def needs_swap(m: RcfArrangement, n: RcfArrangement) -> bool:
    if m.tail_kind == "diag" and n.tail_kind == "companion":
        return True
    return (
        m.tail_kind == n.tail_kind == "companion"
        and m.last_block_degree > 2
        and n.last_block_degree == 2
    )


def _family_blocks(field: FieldSpec, family: str, n: int, fixed: int, det: int) -> Iterator[ConjugatorSpec]:
    if family == FAMILY_AFFINE:
        for x in range(1, field.q):
            for y in field.elements():
                yield ConjugatorSpec.affine(field, x, y, n)
    elif family == FAMILY_AFFINE_FIXED:
        for y in field.elements():
            yield ConjugatorSpec.affine(field, fixed, y, n)
    elif family == FAMILY_DETONE:
        for t in field.elements():
            bc = field.sub(t, det)
            kind = "detone" if det == 1 else "general"
            yield ConjugatorSpec(field, kind, 1, 1 if bc else 0, bc, t, n)
    else:
        raise MalformedInput(f"unknown conjugator family {family!r}")


def _closed_form(path: str, m: RcfArrangement, n: RcfArrangement, spec: ConjugatorSpec, trace_mn: Felt) -> Felt:
    F = m.field.__call__
    a, b, c, d = F(spec.a), F(spec.b), F(spec.c), F(spec.d)
    if path in ("main1-i", "main1-ii"):
        acoef = [F(v) for v in m.tail_coeffs()]
        bcoef = [F(v) for v in n.tail_coeffs()]
        if spec.kind == "affine":
            return trace_main1_affine(acoef, bcoef, a, b, trace_mn)
        return trace_main1_general(acoef, bcoef, a, b, c, d, trace_mn)
    if path == "main1-iii":
        u, v = F(n.pair.u), F(n.pair.v)
        if spec.kind == "affine":
            return trace_main1_iii_affine(u, v, a, b, trace_mn)
        acoef = [F(v_) for v_ in m.tail_coeffs()]
        return trace_main1_iii_general(acoef, u, v, a, b, c, d, trace_mn)
    u1, v1, u2, v2 = F(m.pair.u), F(m.pair.v), F(n.pair.u), F(n.pair.v)
    if spec.kind == "detone":
        return trace_main2_x(u1, v1, u2, v2, d, trace_mn)
    return trace_main2_general(u1, v1, u2, v2, a, b, c, d, trace_mn)


def family_floor(path: str, family: str, q: int) -> int:
    """Guaranteed number of distinct traces for a path and conjugator family."""
    if path in ("main1-iii", "main2"):
        return q
    if family == FAMILY_AFFINE:
        return q - 1
    return ceil_half(q)


def trace_sweep(
    m: RcfArrangement,
    n: RcfArrangement,
    family: str = FAMILY_AFFINE,
    fixed: int = 1,
    det: int = 1,
) -> TraceSetReport:
    """Distinct traces of ``M^E N`` over a conjugator family.

    ``family`` is ``"E(x,y)"`` (all ``x != 0``), ``"E(c,y)"`` (``x = fixed``)
    or ``"detone"`` (``ad = t``, ``bc = t - det`` over all ``t``; determinant
    one by default). Each closed-form trace is confirmed against an explicit
    conjugation; the report keeps the first witness per trace.

    Raises:
        MalformedInput: the family does not fit the arrangement's lemma path.
        AssertionError: a closed form disagrees with its witness, or fewer
            traces than the lemma guarantees were found.
    """
    if m.field != n.field or m.n != n.n:
        raise MalformedInput("arrangements over different fields or dimensions")
    path = lemma_path(m, n)
    if (path == "main2") != (family == FAMILY_DETONE):
        raise MalformedInput(f"family {family} does not apply to lemma path {path}")
    field = m.field
    mm, nn = m.matrix, n.matrix
    trace_mn = field((mm * nn).trace())
    witnesses: dict[int, Witness] = {}
    for spec in _family_blocks(field, family, m.n, fixed, det):
        closed = int(_closed_form(path, m, n, spec, trace_mn))
        e = build_conjugator(spec)
        product = conjugate(mm, e) * nn
        if product.trace() != closed:
            raise AssertionError(f"closed form {closed} disagrees with witness trace {product.trace()} ({path}, {spec})")
        witnesses.setdefault(closed, Witness(closed, spec))
    if family == FAMILY_AFFINE_FIXED:
        label = f"E({fixed},y)"
    elif family == FAMILY_DETONE and det != 1:
        label = f"det{det}"
    else:
        label = family
    report = TraceSetReport(sorted(witnesses), label, path, witnesses)
    floor = family_floor(path, family, field.q)
    if report.size < floor:
        raise AssertionError(f"{path} sweep found {report.size} traces, expected at least {floor}")
    return report


# -- certified bounds ----------------------------------------------------------


def _transforms_by_det(source: Mat, arr: RcfArrangement, seed: int) -> dict[int, Mat]:
    """Invertible ``P`` with ``P^-1 source P = arr.matrix``, one per reachable determinant.

    Sampled from the solution space, then widened by scaling whole blocks
    (which commutes with the block-diagonal arrangement).
    """
    f = source.field
    found: dict[int, Mat] = {}
    for i, p in enumerate(similarity_transforms(source, arr.matrix, seed=seed, tries=64)):
        found.setdefault(p.det(), p)
        if len(found) == f.q - 1 or i >= 15:
            break
    if not found:
        raise AssertionError("arrangement is not similar to its source")
    base = next(iter(found.values()))
    off = 0
    for blk in arr.blocks:
        for lam in range(2, f.q):
            diag = [1] * arr.n
            for k in range(off, off + blk.n):
                diag[k] = lam
            p = base * Mat.diag(f, diag)
            found.setdefault(p.det(), p)
        off += blk.n
    return found


def certified_lower_bound(
    a: Mat, b: Mat, group: GroupSpec, seed: int = 0
) -> tuple[EtaReport, TraceSetReport]:
    """A lower bound on ``eta(A^G B^G)`` backed by explicit product witnesses.

    Both matrices are arranged, the lemma path is chosen (swapping operands
    when the first tail is diagonal against a companion tail, or of degree
    ``> 2`` against degree 2; the class product is symmetric), and a trace
    sweep is run with conjugators ``U = P E Q^-1`` that lie in the group. For
    SL the transforms ``P``, ``Q`` are chosen with equal determinants when
    possible so that ``E`` itself has determinant one.

    Raises:
        CentralInput: ``A`` or ``B`` is central.
    """
    if not (group.contains(a) and group.contains(b)):
        raise MalformedInput(f"operands are not in {group.name}")
    if is_central(a, group) or is_central(b, group):
        raise CentralInput("one operand is central; the product is a single class")
    field = group.field
    ma, nb = arrange_for_hypothesis(a), arrange_for_hypothesis(b)
    swapped = needs_swap(ma, nb)
    first, second = (b, a) if swapped else (a, b)
    m, n = (nb, ma) if swapped else (ma, nb)
    path = lemma_path(m, n)

    if group.family == "GL":
        p = next(iter(_transforms_by_det(first, m, seed).values()))
        qm = next(iter(_transforms_by_det(second, n, seed + 1).values()))
        det_e = 1
        family = FAMILY_DETONE if path == "main2" else FAMILY_AFFINE
    else:
        ps = _transforms_by_det(first, m, seed)
        qs = _transforms_by_det(second, n, seed + 1)
        common = sorted(set(ps) & set(qs))
        if common:
            p, qm = ps[common[0]], qs[common[0]]
        else:
            p, qm = ps[min(ps)], qs[min(qs)]
        det_e = field.div(qm.det(), p.det())
        family = FAMILY_DETONE if path == "main2" else FAMILY_AFFINE_FIXED

    sweep = trace_sweep(m, n, family, fixed=det_e, det=det_e)
    sweep.swapped = swapped
    q_inv = qm.inverse()
    for t, wit in sweep.witnesses.items():
        u = p * build_conjugator(wit.block) * q_inv
        if not group.contains(u):
            raise AssertionError(f"witness conjugator {u.to_literal()} is not in {group.name}")
        moved = conjugate(first, u)
        product = moved * second if not swapped else second * moved
        if product.trace() != t:
            raise AssertionError("group-level witness trace disagrees with the sweep")
        wit.group_conjugator = u
        wit.product = product

    floor = group_floor(group)
    if sweep.size < floor:
        raise AssertionError(f"certified bound {sweep.size} below the {group.family} floor {floor}")
    report = EtaReport(
        group=group.name,
        field_modulus=list(field.modulus),
        class_a=_matrix_key(a, group),
        class_b=_matrix_key(b, group),
        lower_bound=sweep.size,
        bound_path=path + ("+swap" if swapped else ""),
        trace_set_size=sweep.size,
    )
    return report, sweep


def _matrix_key(a: Mat, group: GroupSpec) -> Any:
    cid = class_id(a).to_json()
    if group.family == "GL":
        return cid
    return {"invariant_factors": cid, "representative": a.to_literal()}


def group_floor(group: GroupSpec) -> int:
    """Guaranteed lower bound for any non-central pair: ``q - 1`` in GL, ``ceil(q/2)`` in SL."""
    return group.q - 1 if group.family == "GL" else ceil_half(group.q)
