import itertools

import pytest
from hypothesis import given, strategies as st

from classprod.classgroup import GroupSpec, conjugacy_classes, min_scan
from classprod.errors import FieldMismatch, MalformedInput
from classprod.field import base_digits, make_field, parse_element, parse_field

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


def test_moduli_are_lex_smallest():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 3).modulus == (1, 0, 1, 1)
    assert make_field(2, 4).modulus == (1, 0, 0, 1, 1)
    assert make_field(3, 1).modulus == (0, 1)


def test_small_examples():
    f3, f5, f4, f7 = make_field(3), make_field(5), make_field(2, 2), make_field(7)
    assert f3.add(2, 2) == 1
    assert f5.inv(2) == 3
    assert f4.mul(2, 2) == 3
    assert f7.is_square(2) and not f7.is_square(3)
    assert f7.sqrt(2) == 3
    assert f4.sqrt(2) == 3
    assert f5.sqrt(2) is None
    assert all(f4.is_square(a) for a in f4.elements())


@pytest.mark.parametrize("p,m", [pm for pm in SMALL if pm[0] ** pm[1] <= 16])
def test_axioms_exhaustive(p, m):
    f = make_field(p, m)
    els = list(f.elements())
    for a, b in itertools.product(els, repeat=2):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(f.add(a, b), b) == a
        if b:
            assert f.mul(f.div(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in els[1:]:
        assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("p,m", SMALL)
def test_squares(p, m):
    f = make_field(p, m)
    squares = {f.mul(y, y) for y in f.elements()}
    if p == 2:
        assert squares == set(f.elements())
    else:
        assert len(squares) == (f.q + 1) // 2
    for a in f.elements():
        r = f.sqrt(a)
        assert (r is not None) == (a in squares) == f.is_square(a)
        if r is not None:
            assert f.mul(r, r) == a
            if p != 2:
                assert r <= f.neg(r)


def test_tables_match_scalar_ops():
    f = make_field(3, 2)
    for a, b in itertools.product(f.elements(), repeat=2):
        assert f.add_table[a, b] == f.add(a, b)
        assert f.mul_table[a, b] == f.mul(a, b)


@given(st.integers(0, 3**5 - 1))
def test_encoding_round_trip(v):
    f = make_field(3, 5)
    digits = base_digits(v, 3, 5)
    assert f._undigits(digits) == v


@given(st.integers(1, 48), st.integers(1, 48), st.integers(-60, 60))
def test_felt_power_laws(a, b, e):
    f = make_field(7, 2)
    x, y = f(a), f(b)
    assert (x * y) ** e == x**e * y**e
    assert x ** (f.q - 1) == 1


def test_felt_operators_and_mixing():
    f, g = make_field(5), make_field(7)
    x = f(3)
    assert x + 4 == 2 and 4 - x == 1 and 2 / x == 4 and -x == 2
    assert int(x.inv()) == 2
    with pytest.raises(FieldMismatch):
        _ = x + g(1)


@pytest.mark.parametrize("bad", [(4, 1), (2, 0), (2, 17), (6, 2)])
def test_make_field_rejects(bad):
    with pytest.raises(MalformedInput):
        make_field(*bad)


def test_explicit_modulus_validation():
    assert make_field(3, 2, (2, 1, 1)).modulus == (2, 1, 1)
    with pytest.raises(MalformedInput):
        make_field(3, 2, (1, 0, 2))  # x^2 - 1 is reducible


def test_errors():
    f = make_field(5)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    with pytest.raises(MalformedInput):
        f(5)
    with pytest.raises(MalformedInput):
        parse_field("x^2")
    with pytest.raises(MalformedInput):
        parse_element(f, "7")
    assert parse_field("3^2") is make_field(3, 2)
    assert parse_field("7").q == 7


def test_large_field_builds():
    f = make_field(2, 16)
    a = 12345
    assert f.mul(a, f.inv(a)) == 1
    assert f.mul(f.sqrt(a), f.sqrt(a)) == a


def test_group_invariants_do_not_depend_on_modulus():
    std = make_field(3, 2)
    alt = make_field(3, 2, (2, 1, 1))
    assert std.modulus != alt.modulus
    for fam in ("GL", "SL"):
        a, b = GroupSpec(fam, 2, std), GroupSpec(fam, 2, alt)
        sizes_a = sorted(c.size for c in conjugacy_classes(a))
        sizes_b = sorted(c.size for c in conjugacy_classes(b))
        assert sizes_a == sizes_b
        ma, mb = min_scan(a), min_scan(b)
        assert ma.minimum == mb.minimum
        assert sorted(ma.table.values()) == sorted(mb.table.values())
