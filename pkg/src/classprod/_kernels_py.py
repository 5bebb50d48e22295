"""Vectorized numpy versions of the enumeration kernels.

Same signatures and results as the compiled ``_kernels`` extension; used when
the extension is not built or ``CLASSPROD_PURE=1`` is set.

Matrices are rows of an ``(N, n*n)`` int32 array of element encodings; a
matrix code is ``sum(entry[k] * q**k)``.
"""

from __future__ import annotations

import numpy as np


def _weights(n: int, q: int) -> np.ndarray:
    return q ** np.arange(n * n, dtype=np.int64)


def _times_fixed(xs: np.ndarray, b: np.ndarray, add: np.ndarray, mul: np.ndarray, n: int) -> np.ndarray:
    """Row-wise product ``X @ B`` for a batch ``X`` and one fixed ``B``."""
    big = xs.reshape(-1, n, n)
    bb = b.reshape(n, n)
    out = np.empty_like(big)
    for r in range(n):
        for c in range(n):
            s = mul[big[:, r, 0], bb[0, c]]
            for k in range(1, n):
                s = add[s, mul[big[:, r, k], bb[k, c]]]
            out[:, r, c] = s
    return out.reshape(-1, n * n)


def _fixed_times(a: np.ndarray, xs: np.ndarray, add: np.ndarray, mul: np.ndarray, n: int) -> np.ndarray:
    """Row-wise product ``A @ X`` for one fixed ``A`` and a batch ``X``."""
    big = xs.reshape(-1, n, n)
    aa = a.reshape(n, n)
    out = np.empty_like(big)
    for r in range(n):
        for c in range(n):
            s = mul[aa[r, 0], big[:, 0, c]]
            for k in range(1, n):
                s = add[s, mul[aa[r, k], big[:, k, c]]]
            out[:, r, c] = s
    return out.reshape(-1, n * n)


def product_marks(
    elems: np.ndarray,
    reps: np.ndarray,
    add: np.ndarray,
    mul: np.ndarray,
    lookup: np.ndarray,
    nlabels: int,
    n: int,
    q: int,
) -> np.ndarray:
    """``marks[j, lookup[code(X @ reps[j])]] = 1`` for every row ``X`` of ``elems``."""
    marks = np.zeros((len(reps), nlabels), dtype=np.uint8)
    w = _weights(n, q)
    for j, b in enumerate(reps):
        prod = _times_fixed(elems, b, add, mul, n)
        marks[j, lookup[prod.astype(np.int64) @ w]] = 1
    return marks


def conjugation_codes(
    elems: np.ndarray,
    g: np.ndarray,
    ginv: np.ndarray,
    add: np.ndarray,
    mul: np.ndarray,
    n: int,
    q: int,
) -> np.ndarray:
    """Codes of ``g^-1 X g`` for every row ``X``."""
    conj = _times_fixed(_fixed_times(ginv, elems, add, mul, n), g, add, mul, n)
    return conj.astype(np.int64) @ _weights(n, q)
