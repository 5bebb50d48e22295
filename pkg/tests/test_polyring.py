import pytest
from hypothesis import given, strategies as st

from classprod.errors import MalformedInput
from classprod.field import make_field
from classprod.polyring import (
    Poly,
    find_w_irreducible,
    is_irreducible,
    monic_polys,
    parse_poly,
    poly_gcd,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]


def _mobius(n):
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def necklace(q, d):
    return sum(_mobius(d // e) * q**e for e in range(1, d + 1) if d % e == 0) // d


def poly_strategy(field, max_deg=6):
    return st.lists(st.integers(0, field.q - 1), min_size=0, max_size=max_deg + 1).map(lambda cs: Poly(field, cs))


F9 = make_field(3, 2)


@given(poly_strategy(F9), poly_strategy(F9, 4).filter(lambda g: not g.is_zero()))
def test_divmod_round_trip(f, g):
    quo, rem = divmod(f, g)
    assert quo * g + rem == f
    assert rem.is_zero() or rem.degree < g.degree


@given(poly_strategy(F9, 4), poly_strategy(F9, 4), st.integers(0, 8))
def test_ring_laws_and_evaluation(f, g, a):
    assert (f * g)(a) == F9.mul(f(a), g(a))
    assert (f + g)(a) == F9.add(f(a), g(a))
    assert f * g == g * f


@given(poly_strategy(F9, 4), poly_strategy(F9, 4))
def test_gcd_divides_both(f, g):
    if f.is_zero() and g.is_zero():
        return
    d = poly_gcd(f, g)
    assert d.is_monic()
    assert d.divides(f) and d.divides(g)


@pytest.mark.parametrize("p,m", FIELDS)
def test_irreducible_iff_rootless_low_degree(p, m):
    f = make_field(p, m)
    for deg in (2, 3):
        for g in monic_polys(f, deg):
            assert is_irreducible(g) == (not g.roots())


@pytest.mark.parametrize("p,m,deg", [(2, 1, 4), (2, 1, 5), (3, 1, 3), (2, 2, 2), (5, 1, 2), (3, 2, 2)])
def test_irreducible_counts(p, m, deg):
    f = make_field(p, m)
    assert sum(is_irreducible(g) for g in monic_polys(f, deg)) == necklace(f.q, deg)


@pytest.mark.parametrize("p,m,k", [(2, 1, 4), (3, 1, 2), (2, 2, 2), (5, 1, 2)])
def test_product_of_irreducibles_is_field_polynomial(p, m, k):
    f = make_field(p, m)
    prod = Poly.constant(f, 1)
    for d in range(1, k + 1):
        if k % d == 0:
            for g in monic_polys(f, d):
                if is_irreducible(g):
                    prod = prod * g
    x = Poly.x(f)
    assert prod == x ** (f.q**k) - x


def test_from_roots_and_literals():
    f = make_field(5)
    g = Poly.from_roots(f, [1, 2])
    assert g == parse_poly(f, "2,2,1")
    assert g.to_literal() == "2,2,1"
    assert sorted(g.roots()) == [1, 2]
    assert parse_poly(f, "1,0,1").degree == 2
    with pytest.raises(MalformedInput):
        parse_poly(f, "1,a")


def test_sort_key_orders_by_degree_then_coefficients():
    f = make_field(3)
    polys = sorted([parse_poly(f, s) for s in ("0,1", "1,1,1", "2,1", "0,0,1")])
    assert [p.to_literal() for p in polys] == ["0,1", "2,1", "0,0,1", "1,1,1"]


def test_irreducibility_preconditions():
    f = make_field(3)
    with pytest.raises(MalformedInput):
        is_irreducible(Poly(f, [1, 0, 2]))
    with pytest.raises(MalformedInput):
        is_irreducible(Poly.constant(f, 1))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_w_irreducible(m):
    f = make_field(2, m)
    w = find_w_irreducible(f)
    g = Poly(f, (1, f.neg(w), 1))
    assert is_irreducible(g)
    assert all(not is_irreducible(Poly(f, (1, f.neg(v), 1))) for v in range(w))
    with pytest.raises(MalformedInput):
        find_w_irreducible(make_field(3))
