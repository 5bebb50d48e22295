"""Compare the compiled and numpy kernel backends on real workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

For each group the class data is built once; then both backends compute the
same product-marking table (one row per class representative) and the same
conjugation images, and the results are checked for equality.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from classprod.classgroup import GroupSpec, group_data
from classprod.field import make_field
from classprod.kernels import backends

CASES = [("GL", 2, (13, 1)), ("GL", 3, (3, 1)), ("SL", 3, (3, 1)), ("GL", 3, (2, 2))]


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = backends()
    if "cython" not in impls:
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'group':<10} {'kernel':<18} " + " ".join(f"{name:>10}" for name in impls) + "   speedup")
    for family, n, pm in CASES:
        g = GroupSpec(family, n, make_field(*pm))
        data = group_data(g)
        f = g.field
        reps = np.ascontiguousarray(data.elems[data.class_reps])
        label = int(np.argmax(data.class_sizes))
        members = data.members(label)
        gen = g.generators()[0]
        ge = np.array(gen.entries, dtype=np.int32)
        gi = np.array(gen.inverse().entries, dtype=np.int32)
        workloads = {
            "product_marks": lambda impl: impl.product_marks(
                members, reps, f.add_table, f.mul_table, data.class_lookup, data.nclasses, n, f.q
            ),
            "conjugation_codes": lambda impl: impl.conjugation_codes(data.elems, ge, gi, f.add_table, f.mul_table, n, f.q),
        }
        for kname, work in workloads.items():
            timings, outputs = {}, {}
            for name, impl in impls.items():
                timings[name], outputs[name] = best_of(lambda: work(impl), args.repeat)
            ref = outputs["numpy"]
            assert all(np.array_equal(ref, o) for o in outputs.values()), "backends disagree"
            speed = timings["numpy"] / timings["cython"] if "cython" in timings else float("nan")
            cells = " ".join(f"{timings[name] * 1e3:>8.1f}ms" for name in impls)
            print(f"{g.name:<10} {kname:<18} {cells}   {speed:6.1f}x")


if __name__ == "__main__":
    main()
