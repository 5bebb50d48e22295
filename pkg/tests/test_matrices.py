import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from classprod.errors import FieldMismatch, MalformedInput
from classprod.field import make_field
from classprod.matrices import (
    ConjugatorSpec,
    DiagPair,
    Mat,
    build_conjugator,
    charpoly,
    companion,
    conjugate,
    direct_sum,
    nullspace,
    parse_matrix,
)
from classprod.polyring import Poly

F5 = make_field(5)
F4 = make_field(2, 2)


def mats(field, n):
    return st.lists(st.integers(0, field.q - 1), min_size=n * n, max_size=n * n).map(lambda e: Mat(field, n, e))


def invertible(field, n):
    return mats(field, n).filter(lambda m: m.det() != 0)


def leibniz_det(a):
    f, n = a.field, a.n
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = 1
        for i in range(n):
            term = f.mul(term, a[i, perm[i]])
        total = f.sub(total, term) if inversions % 2 else f.add(total, term)
    return total


@given(mats(F5, 3))
def test_det_matches_leibniz(a):
    assert a.det() == leibniz_det(a)


@given(invertible(F4, 3), invertible(F4, 3), mats(F4, 3))
def test_conjugation_composes(u, v, a):
    assert conjugate(conjugate(a, u), v) == conjugate(a, u * v)
    assert conjugate(a, u).trace() == a.trace()
    assert u * u.inverse() == Mat.identity(F4, 3)


@given(mats(F5, 2), mats(F5, 2))
def test_det_multiplicative(a, b):
    assert (a * b).det() == F5.mul(a.det(), b.det())


@given(mats(F5, 3))
def test_code_round_trip(a):
    assert Mat.from_code(F5, 3, a.code()) == a
    assert parse_matrix(F5, a.to_literal()) == a


@pytest.mark.parametrize("coeffs", [(1, 1), (2, 0, 1), (1, 2, 3, 1), (4, 0, 0, 0, 1)])
def test_companion_charpoly(coeffs):
    f = Poly(F5, coeffs)
    c = companion(f)
    assert charpoly(c) == f
    # subdiagonal ones, -a_i down the last column
    r = f.degree
    assert all(c[i, r - 1] == F5.neg(coeffs[i]) for i in range(r))
    assert all(c[i + 1, i] == 1 for i in range(r - 1))


def test_charpoly_cayley_hamilton():
    rng = random.Random(3)
    for _ in range(20):
        a = Mat(F5, 3, [rng.randrange(5) for _ in range(9)])
        cp = charpoly(a)
        acc = Mat.scalar(F5, 3, 0)
        power = Mat.identity(F5, 3)
        for c in cp.coeffs:
            acc = acc + power.scale(c)
            power = power * a
        assert acc == Mat.scalar(F5, 3, 0)


def test_direct_sum_and_blocks():
    a = Mat.from_rows(F5, [[1, 2], [3, 4]])
    b = Mat.diag(F5, [2])
    s = direct_sum([a, b])
    assert s.to_literal() == "1,2,0;3,4,0;0,0,2"
    assert s.block(0, 2) == a and s.block(2, 1) == b
    with pytest.raises(MalformedInput):
        direct_sum([])
    with pytest.raises(FieldMismatch):
        direct_sum([a, Mat.diag(make_field(3), [1])])


def test_conjugator_families():
    f = F5
    e = build_conjugator(ConjugatorSpec.affine(f, 3, 2, n=3))
    assert e.to_literal() == "1,0,0;0,3,2;0,0,1"
    assert e.det() == 3
    for x in f.elements():
        spec = ConjugatorSpec.detone_from_x(f, x, n=3)
        assert build_conjugator(spec).det() == 1
        assert f.mul(spec.a, spec.d) == x and f.mul(spec.b, spec.c) == f.sub(x, 1)
    with pytest.raises(MalformedInput):
        ConjugatorSpec.general(f, 1, 2, 2, 4)  # w = 0
    with pytest.raises(MalformedInput):
        ConjugatorSpec.affine(f, 0, 1)
    with pytest.raises(MalformedInput):
        ConjugatorSpec.detone(f, 2, 0, 0, 1)


def test_diag_pair():
    assert DiagPair(1, 2).block(F5) == Mat.diag(F5, [1, 2])
    with pytest.raises(MalformedInput):
        DiagPair(3, 3)


def test_inverse_of_singular_raises():
    with pytest.raises(ZeroDivisionError):
        Mat.from_rows(F5, [[1, 2], [2, 4]]).inverse()


def test_parse_errors():
    with pytest.raises(MalformedInput):
        parse_matrix(F5, "1,2;3")
    with pytest.raises(MalformedInput):
        parse_matrix(F5, "1,x;0,1")
    with pytest.raises(MalformedInput):
        parse_matrix(F5, "1,7;0,1")


@settings(max_examples=50)
@given(mats(F4, 3))
def test_nullspace_vectors_are_solutions(a):
    basis = nullspace(F4, a.rows(), 3)
    rank = 3 - len(basis)
    assert (rank == 3) == (a.det() != 0)
    for v in basis:
        for row in a.rows():
            acc = 0
            for x, y in zip(row, v):
                acc = F4.add(acc, F4.mul(x, y))
            assert acc == 0
