import itertools

import numpy as np
import pytest

from classprod import _kernels_py, kernels
from classprod.classgroup import (
    GroupSpec,
    centralizer,
    conjugacy_classes,
    enumerate_group,
    eta_bruteforce,
    eta_exact,
    eta_table,
    group_data,
    min_scan,
)
from classprod.errors import BudgetExceeded, MalformedInput
from classprod.field import make_field
from classprod.matrices import Mat, conjugate, parse_matrix


def spec(family, n, p, m=1):
    return GroupSpec(family, n, make_field(p, m))


@pytest.mark.parametrize(
    "family,n,p,m,nclasses",
    [
        ("GL", 2, 2, 1, 3),
        ("GL", 2, 3, 1, 8),
        ("SL", 2, 3, 1, 7),
        ("GL", 2, 5, 1, 24),
        ("SL", 2, 5, 1, 9),
        ("GL", 3, 2, 1, 6),
        ("GL", 3, 3, 1, 24),
        ("GL", 2, 2, 2, 15),
        ("SL", 2, 2, 2, 5),
    ],
)
def test_orders_and_class_counts(family, n, p, m, nclasses):
    g = spec(family, n, p, m)
    data = group_data(g)
    assert data.order == g.order
    assert data.nclasses == nclasses
    sizes = [int(s) for s in data.class_sizes]
    assert sum(sizes) == g.order
    assert all(g.order % s == 0 for s in sizes)


def test_order_formula():
    assert spec("GL", 2, 3).order == 48
    assert spec("SL", 2, 3).order == 24
    assert spec("GL", 3, 2).order == 168
    assert spec("GL", 2, 2, 2).order == 180


@pytest.mark.parametrize("family,n,p", [("GL", 2, 3), ("SL", 2, 3), ("SL", 2, 5), ("GL", 3, 2)])
def test_classes_are_full_orbits(family, n, p):
    g = spec(family, n, p)
    data = group_data(g)
    group = list(enumerate_group(g))
    for info in conjugacy_classes(g):
        orbit = {conjugate(info.representative, u).code() for u in group}
        members = {int(c) for c in data.codes[data.labels == info.label]}
        assert orbit == members


def test_sl_splits_gl_classes():
    gl, sl = group_data(spec("GL", 2, 3)), group_data(spec("SL", 2, 3))
    a = parse_matrix(make_field(3), "1,1;0,1")
    b = parse_matrix(make_field(3), "1,2;0,1")
    assert gl.label_of(a) == gl.label_of(b)
    assert sl.label_of(a) != sl.label_of(b)


@pytest.mark.parametrize("family,n,p", [("GL", 2, 3), ("SL", 2, 5), ("GL", 3, 2)])
def test_orbit_stabilizer(family, n, p):
    g = spec(family, n, p)
    for info in conjugacy_classes(g):
        cent = centralizer(g, info.representative)
        assert len(cent) * info.size == g.order
        assert all(u * info.representative == info.representative * u for u in cent)


@pytest.mark.parametrize("family,n,p", [("GL", 2, 2), ("GL", 2, 3), ("SL", 2, 3)])
def test_reduction_agrees_with_full_product(family, n, p):
    g = spec(family, n, p)
    data = group_data(g)
    reps = [data.representative(k) for k in range(data.nclasses)]
    for a, b in itertools.product(reps, repeat=2):
        assert eta_exact(g, a, b).eta_exact == eta_bruteforce(g, a, b)


@pytest.mark.parametrize("family,n,p,m", [("GL", 2, 3, 1), ("SL", 2, 5, 1), ("GL", 2, 2, 2), ("GL", 3, 2, 1)])
def test_eta_symmetry(family, n, p, m):
    table = eta_table(spec(family, n, p, m), ordered=True)
    for (i, j), v in table.items():
        assert table[(j, i)] == v


def test_eta_report_contents():
    g = spec("GL", 2, 3)
    a = parse_matrix(g.field, "1,1;0,1")
    rep = eta_exact(g, a, a)
    assert rep.eta_exact >= 2
    assert rep.field_modulus == [0, 1]
    assert len(rep.classes_hit) == rep.eta_exact
    assert rep.to_dict()["class_a"] == [[1, 1, 1]]


def test_min_scan_values():
    assert min_scan(spec("GL", 2, 3)).minimum == 2
    assert min_scan(spec("SL", 2, 3)).minimum == 2
    assert min_scan(spec("GL", 2, 2, 2)).minimum == 3


def test_threads_do_not_change_results():
    g = spec("GL", 2, 5)
    assert eta_table(g, threads=1) == eta_table(g, threads=4)


def test_budget_and_membership_errors():
    with pytest.raises(BudgetExceeded):
        group_data(spec("GL", 3, 5), budget=1000)
    with pytest.raises(BudgetExceeded):
        group_data(spec("GL", 4, 13))
    g = spec("SL", 2, 3)
    with pytest.raises(MalformedInput):
        group_data(g).label_of(parse_matrix(g.field, "2,0;0,1"))
    with pytest.raises(MalformedInput):
        GroupSpec("PGL", 2, make_field(3))
    with pytest.raises(BudgetExceeded):
        centralizer(spec("GL", 3, 3), parse_matrix(make_field(3), "1,0,0;0,1,0;0,0,2"), budget=100)


def test_backends_agree():
    g = spec("GL", 2, 2, 2)
    data = group_data(g)
    f = g.field
    impls = kernels.backends()
    reps = np.ascontiguousarray(data.elems[data.class_reps])
    members = data.members(3)
    outs = [
        impl.product_marks(members, reps, f.add_table, f.mul_table, data.class_lookup, data.nclasses, 2, f.q)
        for impl in impls.values()
    ]
    for other in outs[1:]:
        assert np.array_equal(outs[0], other)
    u = Mat.from_rows(f, [[2, 1], [1, 1]])
    ui = u.inverse()
    codes = [
        impl.conjugation_codes(
            data.elems, np.array(u.entries, dtype=np.int32), np.array(ui.entries, dtype=np.int32),
            f.add_table, f.mul_table, 2, f.q,
        )
        for impl in impls.values()
    ]
    for other in codes[1:]:
        assert np.array_equal(codes[0], other)
    expected = [conjugate(data.mat(i), u).code() for i in range(0, data.order, 17)]
    assert codes[0][::17].tolist() == expected
    assert "numpy" in impls and impls["numpy"] is _kernels_py


def test_pure_backend_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CLASSPROD_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import classprod.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
