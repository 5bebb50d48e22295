"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``CLASSPROD_PURE`` is set to a non-empty value other than
``0``, the numpy implementation is used.
"""

from __future__ import annotations

import os

from classprod import _kernels_py

_force_pure = os.environ.get("CLASSPROD_PURE", "") not in ("", "0")

try:
    if _force_pure:
        raise ImportError("pure backend requested")
    from classprod import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"
_impl = _compiled if _compiled is not None else _kernels_py

product_marks = _impl.product_marks
conjugation_codes = _impl.conjugation_codes


def backends() -> dict[str, object]:
    """All importable implementations by name, for benchmarks and cross-checks."""
    out: dict[str, object] = {"numpy": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    else:
        try:
            from classprod import _kernels

            out["cython"] = _kernels
        except ImportError:
            pass
    return out
