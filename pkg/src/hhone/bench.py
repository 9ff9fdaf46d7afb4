"""Timing comparison of the elimination backends on identical inputs.

Each backend (the compiled core when built, the numpy fallback always)
runs the same row reduction on the same seeded matrices; best-of-N wall
times are reported together with an agreement flag, so the benchmark
doubles as a consistency check between the two implementations.
"""

import time

import numpy as np

from .kernels import IMPLEMENTATIONS

__all__ = ["run_bench", "format_bench"]


def run_bench(sizes=(48, 96, 192), p=13, repeats=3, seed=0):
    """Best-of-N rref wall times per backend on shared random inputs."""
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        a = rng.integers(0, p, size=(n, n + n // 3)).astype(np.int64)
        times = {}
        outputs = {}
        for name, impl in sorted(IMPLEMENTATIONS.items()):
            best = float("inf")
            for _ in range(repeats):
                work = a.copy()
                t0 = time.perf_counter()
                out = impl.rref(work, p)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
            outputs[name] = out
        names = sorted(outputs)
        agree = all(
            np.array_equal(outputs[names[0]][0], outputs[nm][0])
            and np.array_equal(outputs[names[0]][1], outputs[nm][1])
            for nm in names[1:]
        )
        rows.append({"shape": f"{n}x{n + n // 3}", "p": p,
                     "times": times, "agree": agree})
    return rows


def format_bench(rows):
    backends = sorted(rows[0]["times"]) if rows else []
    head = f"{'shape':>10} " + " ".join(f"{b:>12}" for b in backends) + "  agree"
    lines = [head]
    for row in rows:
        cells = " ".join(f"{row['times'][b] * 1e3:>10.3f}ms" for b in backends)
        lines.append(f"{row['shape']:>10} {cells}  {'yes' if row['agree'] else 'NO'}")
    if len(backends) == 1:
        lines.append("")
        lines.append("compiled core not built; only the numpy fallback ran")
    return "\n".join(lines) + "\n"
