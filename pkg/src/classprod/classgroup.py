"""Enumeration of GL(n,q) and SL(n,q), their conjugacy classes, and exact class-product counts.

Every group element is addressed by its matrix code (see :meth:`Mat.code`).
A :class:`GroupData` holds the sorted element list, a dense code -> class label
table, and the class partition. Classes are found as orbits of conjugation by a
generating set (elementary transvections, plus a diagonal matrix for GL), which
is exact for GL and SL alike; GL classes agree with :func:`class_id` labels and
SL classes may split a GL class.

``eta(A^G B^G)`` is computed as the number of distinct class labels among
``X B`` for ``X`` ranging over the class of ``A``: every product ``X' Y'`` with
``X'`` conjugate to ``A`` and ``Y'`` conjugate to ``B`` is conjugate to such an
``X B``.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from classprod import _kernels_py, kernels
from classprod.canonical import ClassId, class_id
from classprod.errors import BudgetExceeded, MalformedInput
from classprod.field import FieldSpec
from classprod.matrices import Mat

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 20_000_000
# dense code tables have q**(n*n) slots
MAX_CODE_SPACE = 1 << 26
CENTRALIZER_LIMIT = 100_000
_CHUNK = 1 << 18

FAMILIES = ("GL", "SL")


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    field: FieldSpec

    def __post_init__(self) -> None:
        fam = self.family.upper()
        if fam not in FAMILIES:
            raise MalformedInput(f"unknown group family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if self.n < 2:
            raise MalformedInput("groups need n >= 2")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def order(self) -> int:
        q, n = self.field.q, self.n
        gl = math.prod(q**n - q**i for i in range(n))
        return gl if self.family == "GL" else gl // (q - 1)

    @property
    def name(self) -> str:
        return f"{self.family}({self.n},{self.field.q})"

    def contains(self, a: Mat) -> bool:
        if a.field != self.field or a.n != self.n:
            return False
        d = a.det()
        return d == 1 if self.family == "SL" else d != 0

    def generators(self) -> list[Mat]:
        """Elementary transvections over an additive basis of the field, plus diag(g, 1, ..) for GL."""
        f, n = self.field, self.n
        gens = []
        basis = [f.p**k for k in range(f.m)]
        for i, j in itertools.permutations(range(n), 2):
            for t in basis:
                rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
                rows[i][j] = t
                gens.append(Mat.from_rows(f, rows))
        if self.family == "GL" and f.q > 2:
            gens.append(Mat.diag(f, [f.generator] + [1] * (n - 1)))
        return gens


@dataclass
class EtaReport:
    """Exact and/or certified information about ``eta(A^G B^G)``."""

    group: str
    field_modulus: list[int]
    class_a: Any = None
    class_b: Any = None
    eta_exact: int | None = None
    lower_bound: int | None = None
    bound_path: str | None = None
    trace_set_size: int | None = None
    classes_hit: list[int] | None = None

    def __post_init__(self) -> None:
        self.check()

    def check(self) -> None:
        if self.eta_exact is not None:
            if self.trace_set_size is not None and self.eta_exact < self.trace_set_size:
                raise AssertionError("trace-set size exceeds the exact class count")
            if self.lower_bound is not None and self.eta_exact < self.lower_bound:
                raise AssertionError("certified bound exceeds the exact class count")

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "field_modulus": self.field_modulus,
            "class_a": self.class_a,
            "class_b": self.class_b,
            "eta_exact": self.eta_exact,
            "lower_bound": self.lower_bound,
            "bound_path": self.bound_path,
            "trace_set_size": self.trace_set_size,
        }


@dataclass(frozen=True)
class ClassInfo:
    label: int
    representative: Mat
    size: int
    key: Any
    central: bool


@dataclass
class GroupData:
    spec: GroupSpec
    elems: np.ndarray  # (N, n*n) int32, sorted by code
    codes: np.ndarray  # (N,) int64
    index_of_code: np.ndarray  # (q**(n*n),) int32, -1 off the group
    labels: np.ndarray  # (N,) int32
    class_lookup: np.ndarray  # (q**(n*n),) int32, -1 off the group
    class_sizes: np.ndarray
    class_reps: np.ndarray  # element index of each class's smallest code
    _members: dict[int, np.ndarray] = dc_field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.codes)

    @property
    def nclasses(self) -> int:
        return len(self.class_sizes)

    def mat(self, index: int) -> Mat:
        s = self.spec
        return Mat(s.field, s.n, self.elems[index].tolist())

    def members(self, label: int) -> np.ndarray:
        got = self._members.get(label)
        if got is None:
            got = np.ascontiguousarray(self.elems[self.labels == label])
            self._members[label] = got
        return got

    def label_of(self, a: Mat) -> int:
        if not self.spec.contains(a):
            raise MalformedInput(f"{a.to_literal()} is not in {self.spec.name}")
        return int(self.class_lookup[a.code()])

    def representative(self, label: int) -> Mat:
        return self.mat(int(self.class_reps[label]))

    def is_central_label(self, label: int) -> bool:
        return bool(self.class_sizes[label] == 1) and self.representative(label).is_scalar()

    def class_key(self, label: int) -> Any:
        rep = self.representative(label)
        cid = class_id(rep).to_json()
        if self.spec.family == "GL":
            return cid
        return {"invariant_factors": cid, "representative": rep.to_literal()}

    def classes(self) -> list[ClassInfo]:
        return [
            ClassInfo(
                label=k,
                representative=self.representative(k),
                size=int(self.class_sizes[k]),
                key=self.class_key(k),
                central=self.is_central_label(k),
            )
            for k in range(self.nclasses)
        ]

    def arrays_for(self, mats: list[Mat]) -> np.ndarray:
        return np.array([m.entries for m in mats], dtype=np.int32).reshape(len(mats), -1)


def _check_budget(spec: GroupSpec, budget: int) -> None:
    if spec.order > budget:
        raise BudgetExceeded(f"{spec.name} has {spec.order} elements, over the budget of {budget}")
    if spec.field.q ** (spec.n * spec.n) > MAX_CODE_SPACE:
        raise BudgetExceeded(f"{spec.name} needs a code table of q^(n^2) = {spec.field.q ** (spec.n ** 2)} slots")


def _batch_det(digits: np.ndarray, field: FieldSpec, n: int) -> np.ndarray:
    add, mul, neg = field.add_table, field.mul_table, field.neg_table
    total = np.zeros(len(digits), dtype=np.int32)
    for perm in itertools.permutations(range(n)):
        term = digits[:, perm[0]]
        for i in range(1, n):
            term = mul[term, digits[:, i * n + perm[i]]]
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        if inversions % 2:
            term = neg[term]
        total = add[total, term]
    return total


def enumerate_codes(spec: GroupSpec, budget: int = DEFAULT_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """All group elements as (entries, codes), sorted by code."""
    _check_budget(spec, budget)
    f, n = spec.field, spec.n
    q = f.q
    space = q ** (n * n)
    chunks_e, chunks_c = [], []
    for start in range(0, space, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, space), dtype=np.int64)
        digits = np.empty((len(codes), n * n), dtype=np.int32)
        rest = codes.copy()
        for k in range(n * n):
            digits[:, k] = rest % q
            rest //= q
        det = _batch_det(digits, f, n)
        keep = det == 1 if spec.family == "SL" else det != 0
        chunks_e.append(digits[keep])
        chunks_c.append(codes[keep])
    elems = np.ascontiguousarray(np.concatenate(chunks_e))
    codes = np.concatenate(chunks_c)
    if len(codes) != spec.order:  # pragma: no cover - guards the order formula
        raise AssertionError(f"enumerated {len(codes)} elements of {spec.name}, expected {spec.order}")
    return elems, codes


def enumerate_group(spec: GroupSpec, budget: int = DEFAULT_BUDGET):
    """Yield every element of the group exactly once, in code order."""
    elems, _ = enumerate_codes(spec, budget)
    for row in elems:
        yield Mat(spec.field, spec.n, row.tolist())


@functools.lru_cache(maxsize=16)
def _group_data_cached(spec: GroupSpec) -> GroupData:
    return build_group_data(spec, spec.order)


def group_data(spec: GroupSpec, budget: int = DEFAULT_BUDGET) -> GroupData:
    """Cached :class:`GroupData`; raises :class:`BudgetExceeded` for oversized groups."""
    _check_budget(spec, budget)
    return _group_data_cached(spec)


def build_group_data(spec: GroupSpec, budget: int = DEFAULT_BUDGET) -> GroupData:
    f, n = spec.field, spec.n
    q = f.q
    elems, codes = enumerate_codes(spec, budget)
    order = len(codes)
    space = q ** (n * n)
    index_of_code = np.full(space, -1, dtype=np.int32)
    index_of_code[codes] = np.arange(order, dtype=np.int32)

    add, mul = f.add_table, f.mul_table
    src, dst = [np.arange(order)], [np.arange(order)]
    for g in spec.generators():
        gi = g.inverse()
        images = kernels.conjugation_codes(
            elems,
            np.array(g.entries, dtype=np.int32),
            np.array(gi.entries, dtype=np.int32),
            add,
            mul,
            n,
            q,
        )
        src.append(np.arange(order))
        dst.append(index_of_code[images])
    graph = coo_matrix(
        (np.ones(sum(len(s) for s in src), dtype=np.int8), (np.concatenate(src), np.concatenate(dst))),
        shape=(order, order),
    )
    ncomp, comp = connected_components(graph, directed=True, connection="weak")
    # relabel by first appearance, i.e. by each class's smallest code
    first = np.full(ncomp, order, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(order))
    order_of_comp = np.argsort(first, kind="stable")
    relabel = np.empty(ncomp, dtype=np.int32)
    relabel[order_of_comp] = np.arange(ncomp, dtype=np.int32)
    labels = relabel[comp]
    class_lookup = np.full(space, -1, dtype=np.int32)
    class_lookup[codes] = labels
    sizes = np.bincount(labels, minlength=ncomp)
    reps = first[order_of_comp]
    log.debug("%s: %d elements, %d classes", spec.name, order, ncomp)
    return GroupData(spec, elems, codes, index_of_code, labels, class_lookup, sizes, reps)


def conjugacy_classes(spec: GroupSpec, budget: int = DEFAULT_BUDGET) -> list[ClassInfo]:
    return group_data(spec, budget).classes()


def centralizer(spec: GroupSpec, a: Mat, budget: int = CENTRALIZER_LIMIT) -> list[Mat]:
    """Brute-force filter ``{U : UA = AU}``; refuses groups over ``budget`` elements."""
    if spec.order > budget:
        raise BudgetExceeded(f"centralizer filter limited to {budget} elements; {spec.name} has {spec.order}")
    data = group_data(spec)
    f, n = spec.field, spec.n
    arr = np.array(a.entries, dtype=np.int32)
    ua = _kernels_py._times_fixed(data.elems, arr, f.add_table, f.mul_table, n)
    au = _kernels_py._fixed_times(arr, data.elems, f.add_table, f.mul_table, n)
    keep = np.all(ua == au, axis=1)
    return [data.mat(i) for i in np.nonzero(keep)[0]]


# -- eta -----------------------------------------------------------------------


def _marks(data: GroupData, label_a: int, reps: np.ndarray) -> np.ndarray:
    f = data.spec.field
    return kernels.product_marks(
        data.members(label_a),
        np.ascontiguousarray(reps, dtype=np.int32),
        f.add_table,
        f.mul_table,
        data.class_lookup,
        data.nclasses,
        data.spec.n,
        f.q,
    )


def eta_exact(spec: GroupSpec, a: Mat, b: Mat, budget: int = DEFAULT_BUDGET) -> EtaReport:
    """Exact number of classes in ``A^G B^G``."""
    data = group_data(spec, budget)
    la, lb = data.label_of(a), data.label_of(b)
    marks = _marks(data, la, np.array([b.entries], dtype=np.int32))
    hit = np.nonzero(marks[0])[0].tolist()
    return EtaReport(
        group=spec.name,
        field_modulus=list(spec.field.modulus),
        class_a=data.class_key(la),
        class_b=data.class_key(lb),
        eta_exact=len(hit),
        classes_hit=hit,
    )


def eta_bruteforce(spec: GroupSpec, a: Mat, b: Mat, budget: int = DEFAULT_BUDGET) -> int:
    """Reference count over the full product set ``{XY : X in A^G, Y in B^G}``.

    GL products are classified by invariant factors, SL products by the orbit
    labels; neither path uses the single-representative reduction.
    """
    data = group_data(spec, budget)
    xs = [data.mat(i) for i in np.nonzero(data.labels == data.label_of(a))[0]]
    ys = [data.mat(i) for i in np.nonzero(data.labels == data.label_of(b))[0]]
    if spec.family == "GL":
        return len({class_id(x * y).key() for x in xs for y in ys})
    return len({int(data.class_lookup[(x * y).code()]) for x in xs for y in ys})


@dataclass
class MinScan:
    group: str
    minimum: int
    argmin: tuple[int, int]
    table: dict[tuple[int, int], int]
    noncentral: list[int]

    def to_dict(self, data: GroupData | None = None) -> dict[str, Any]:
        out: dict[str, Any] = {
            "group": self.group,
            "min": self.minimum,
            "argmin": list(self.argmin),
            "noncentral_classes": len(self.noncentral),
            "pairs": len(self.table),
        }
        if data is not None:
            out["argmin_representatives"] = [data.representative(k).to_literal() for k in self.argmin]
        return out


def eta_table(
    spec: GroupSpec,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    ordered: bool = False,
) -> dict[tuple[int, int], int]:
    """``eta`` for every pair of non-central classes (unordered unless ``ordered``)."""
    data = group_data(spec, budget)
    noncentral = [k for k in range(data.nclasses) if not data.is_central_label(k)]
    if not noncentral:
        raise MalformedInput(f"{spec.name} has no non-central classes")
    rep_rows = data.elems[data.class_reps[noncentral]]

    def row(pos: int) -> list[tuple[tuple[int, int], int]]:
        i = noncentral[pos]
        start = 0 if ordered else pos
        marks = _marks(data, i, rep_rows[start:])
        counts = marks.sum(axis=1)
        return [((i, noncentral[start + t]), int(c)) for t, c in enumerate(counts)]

    positions = range(len(noncentral))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, positions))
    else:
        rows = [row(p) for p in positions]
    return dict(item for r in rows for item in r)


def min_scan(spec: GroupSpec, budget: int = DEFAULT_BUDGET, threads: int = 1) -> MinScan:
    """Smallest ``eta`` over unordered pairs of non-central classes, with the full table."""
    table = eta_table(spec, budget, threads)
    argmin = min(table, key=lambda k: (table[k], k))
    noncentral = sorted({k for pair in table for k in pair})
    return MinScan(spec.name, table[argmin], argmin, table, noncentral)
