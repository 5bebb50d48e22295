"""Seeded oracle suites: closed forms and counting lemmas against brute force.

Each suite returns a :class:`SuiteResult`; ``mismatches == 0`` means every
instance agreed with its oracle.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable
from dataclasses import dataclass, field as dc_field
from typing import Any

from classprod import bounds
from classprod.field import FieldSpec
from classprod.matrices import ConjugatorSpec, Mat, build_conjugator, companion, conjugate, direct_sum
from classprod.polyring import Poly

SUITES = ("fieldsize", "xysoln", "generalcase", "main1", "main2")
MAX_SHOWN = 5


@dataclass
class SuiteResult:
    suite: str
    field: str
    modulus: list[int]
    seed: int
    checked: int = 0
    mismatches: int = 0
    failures: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def fail(self, detail: str) -> None:
        self.mismatches += 1
        if len(self.failures) < MAX_SHOWN:
            self.failures.append(detail)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "field": self.field,
            "field_modulus": self.modulus,
            "seed": self.seed,
            "checked": self.checked,
            "mismatches": self.mismatches,
            "ok": self.ok,
            "failures": self.failures,
        }


def _result(name: str, f: FieldSpec, seed: int) -> SuiteResult:
    return SuiteResult(name, f"{f.p}^{f.m}", list(f.modulus), seed)


def _rand_nonsingular_block(f: FieldSpec, rng: random.Random) -> tuple[int, int, int, int]:
    while True:
        a, b, c, d = (rng.randrange(f.q) for _ in range(4))
        if f.sub(f.mul(a, d), f.mul(b, c)):
            return a, b, c, d


def _rand_monic(f: FieldSpec, deg: int, rng: random.Random) -> Poly:
    return Poly(f, [rng.randrange(f.q) for _ in range(deg)] + [1])


def _rand_mat(f: FieldSpec, n: int, rng: random.Random) -> Mat:
    return Mat(f, n, [rng.randrange(f.q) for _ in range(n * n)])


def _with_head(f: FieldSpec, tail: Mat, n: int, rng: random.Random) -> Mat:
    """``H (+) tail`` with a random ``H`` filling the leading coordinates."""
    if n == tail.n:
        return tail
    return direct_sum([_rand_mat(f, n - tail.n, rng), tail])


def _rand_conjugator(f: FieldSpec, n: int, rng: random.Random, affine: bool) -> ConjugatorSpec:
    if affine:
        return ConjugatorSpec.affine(f, rng.randrange(1, f.q), rng.randrange(f.q), n)
    a, b, c, d = _rand_nonsingular_block(f, rng)
    return ConjugatorSpec.general(f, a, b, c, d, n)


def suite_fieldsize(f: FieldSpec, trials: int, seed: int) -> SuiteResult:
    """Quadratic image sizes; exhaustive for ``q <= 9``, else ``trials`` random triples."""
    res = _result("fieldsize", f, seed)
    if f.q <= 9:
        triples = itertools.product(range(1, f.q), range(f.q), range(f.q))
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(1, f.q), rng.randrange(f.q), rng.randrange(f.q)) for _ in range(trials))
    for a, b, c in triples:
        res.checked += 1
        try:
            bounds.quad_image_size(f, a, b, c)
        except AssertionError as exc:
            res.fail(f"(a,b,c)=({a},{b},{c}): {exc}")
    return res


def suite_xysoln(f: FieldSpec, trials: int, seed: int) -> SuiteResult:
    """Solvable-``f`` counts; exhaustive for ``q <= 5``, else ``trials`` random tuples.

    Each tuple also checks the direct solver: it must find a solution exactly
    for the solvable values, and every solution must satisfy the equation.
    """
    res = _result("xysoln", f, seed)
    if f.q <= 5:
        tuples = itertools.product(range(f.q), repeat=5)
    else:
        rng = random.Random(seed)
        tuples = (tuple(rng.randrange(f.q) for _ in range(5)) for _ in range(trials))
    for tup in tuples:
        res.checked += 1
        a, b, c, d, e = tup
        try:
            _, wit = bounds.count_solvable_f(f, a, b, c, d, e)
        except AssertionError as exc:
            res.fail(f"{tup}: {exc}")
            continue
        for fv in f.elements():
            sol = bounds.solve_eq1(f, a, b, c, d, e, fv)
            if (sol is not None) != (fv in wit):
                res.fail(f"{tup}, f={fv}: solver and enumeration disagree on solvability")
            elif sol is not None and (sol[0] == 0 or bounds.eq1_residual(f, a, b, c, d, e, fv, *sol)):
                res.fail(f"{tup}, f={fv}: solver returned a non-solution {sol}")
    return res


def suite_generalcase(f: FieldSpec, trials: int, seed: int) -> SuiteResult:
    """Closed-form ``R^E`` against direct conjugation for degrees 2 to 5."""
    res = _result("generalcase", f, seed)
    rng = random.Random(seed)
    for _ in range(trials):
        r = rng.randrange(2, 6)
        rm = companion(_rand_monic(f, r, rng))
        spec = _rand_conjugator(f, r, rng, affine=rng.random() < 0.25)
        res.checked += 1
        got = bounds.conjugated_companion(rm, spec)
        want = conjugate(rm, build_conjugator(spec))
        if got != want:
            res.fail(f"R={rm.to_literal()} D={(spec.a, spec.b, spec.c, spec.d)}")
    return res


def _check_trace(res: SuiteResult, label: str, closed: int, m: Mat, n: Mat, spec: ConjugatorSpec) -> None:
    res.checked += 1
    direct = (conjugate(m, build_conjugator(spec)) * n).trace()
    if closed != direct:
        res.fail(f"{label}: closed {closed} != direct {direct} for M={m.to_literal()} N={n.to_literal()} "
                 f"D={(spec.a, spec.b, spec.c, spec.d)}")


def suite_main1(f: FieldSpec, trials: int, seed: int) -> SuiteResult:
    """Companion-tail trace formulas, cycling through cases i, ii and iii.

    Leading blocks are arbitrary random matrices; the formulas only see the
    tail structure. Conjugators alternate between general blocks and ``E(x,y)``.
    """
    res = _result("main1", f, seed)
    rng = random.Random(seed)
    F = f.__call__
    for t in range(trials):
        case = ("i", "ii", "iii")[t % 3]
        affine = (t // 3) % 2 == 1
        if case == "i":
            r, s = rng.randrange(3, 5), rng.randrange(3, 5)
        elif case == "ii":
            r, s = 2, rng.randrange(2, 5)
        else:
            r, s = rng.randrange(2, 5), 2
        n = max(r, s) + rng.randrange(0, 2)
        fa = _rand_monic(f, r, rng)
        m = _with_head(f, companion(fa), n, rng)
        acoef = [F(v) for v in fa.coeffs[:r]]
        spec = _rand_conjugator(f, n, rng, affine)
        a, b, c, d = F(spec.a), F(spec.b), F(spec.c), F(spec.d)
        if case == "iii":
            u, v = F(rng.randrange(f.q)), F(rng.randrange(f.q))
            nn = _with_head(f, Mat.diag(f, [int(u), int(v)]), n, rng)
            tmn = F((m * nn).trace())
            if affine:
                closed = bounds.trace_main1_iii_affine(u, v, a, b, tmn)
            else:
                closed = bounds.trace_main1_iii_general(acoef, u, v, a, b, c, d, tmn)
        else:
            gb = _rand_monic(f, s, rng)
            nn = _with_head(f, companion(gb), n, rng)
            bcoef = [F(v) for v in gb.coeffs[:s]]
            tmn = F((m * nn).trace())
            if affine:
                closed = bounds.trace_main1_affine(acoef, bcoef, a, b, tmn)
            else:
                closed = bounds.trace_main1_general(acoef, bcoef, a, b, c, d, tmn)
        _check_trace(res, f"case {case}", int(closed), m, nn, spec)
    return res


def suite_main2(f: FieldSpec, trials: int, seed: int) -> SuiteResult:
    """Two diagonal tails: general blocks, and the ``ad = x, bc = x - 1`` family."""
    res = _result("main2", f, seed)
    rng = random.Random(seed)
    F = f.__call__
    for t in range(trials):
        n = rng.randrange(2, 5)
        u1, v1, u2, v2 = (F(rng.randrange(f.q)) for _ in range(4))
        cm = _with_head(f, Mat.diag(f, [int(u1), int(v1)]), n, rng)
        nm = _with_head(f, Mat.diag(f, [int(u2), int(v2)]), n, rng)
        tcn = F((cm * nm).trace())
        if t % 2:
            x = rng.randrange(f.q)
            spec = ConjugatorSpec.detone_from_x(f, x, n)
            closed = bounds.trace_main2_x(u1, v1, u2, v2, F(x), tcn)
        else:
            spec = _rand_conjugator(f, n, rng, affine=False)
            a, b, c, d = F(spec.a), F(spec.b), F(spec.c), F(spec.d)
            closed = bounds.trace_main2_general(u1, v1, u2, v2, a, b, c, d, tcn)
        _check_trace(res, "main2", int(closed), cm, nm, spec)
    return res


_RUNNERS: dict[str, Callable[[FieldSpec, int, int], SuiteResult]] = {
    "fieldsize": suite_fieldsize,
    "xysoln": suite_xysoln,
    "generalcase": suite_generalcase,
    "main1": suite_main1,
    "main2": suite_main2,
}


def run_suite(name: str, f: FieldSpec, trials: int = 1000, seed: int = 0) -> SuiteResult:
    try:
        runner = _RUNNERS[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    return runner(f, trials, seed)
