"""Backend benchmark: build and decision timings per chain size.

Sizes of the form 4^k + 1 use the fractal chain P^k at threshold c; other
sizes use a seeded random walk. Every backend sees the same workload, and
reported times are medians over the trials.
"""

import math
import statistics
import time

import numpy as np

from .chain import PolygonalChain, min_c_bruteforce
from .fractal import generate_chain
from .recognition import CChainRecognizer

COLUMNS = ("size", "backend", "workload", "build_s", "decide_s", "queries",
           "pairs", "verdict", "brute_minc_s")


def _depth(size):
    k = round(math.log(size - 1, 4)) if size > 2 else 0
    return k if k >= 1 and 4 ** k + 1 == size else None


def random_walk(n, rng):
    steps = rng.normal(size=(n - 1, 2))
    return PolygonalChain(np.vstack(([0.0, 0.0], np.cumsum(steps, axis=0))))


def workload(size, c, rng):
    k = _depth(size)
    if k is not None:
        return f"fractal_k{k}", generate_chain(c, k)
    return "random_walk", random_walk(size, rng)


def _median_time(fn, trials):
    times, out = [], None
    for _ in range(trials):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times), out


def run(sizes, backends=("naive", "grid"), trials=3, seed=0, c=6.0, brute=False):
    """One row per (size, backend), in input order."""
    rng = np.random.default_rng(seed)
    rows = []
    for size in sizes:
        if size < 3:
            raise ValueError(f"benchmark sizes must be >= 3, got {size}")
        name, P = workload(size, c, rng)
        brute_s = _median_time(lambda: min_c_bruteforce(P), trials)[0] if brute else None
        for backend in backends:
            build_s, rec = _median_time(
                lambda: CChainRecognizer(backend=backend, cache=False).fit(P), trials)
            decide_s, out = _median_time(lambda: rec.decide(c), trials)
            rows.append({
                "size": size, "backend": backend, "workload": name,
                "build_s": build_s, "decide_s": decide_s,
                "queries": out.queries_issued, "pairs": out.pairs_tested,
                "verdict": out.is_c_chain, "brute_minc_s": brute_s,
            })
    return rows


def to_csv(rows):
    lines = [",".join(COLUMNS)]
    for r in rows:
        cells = []
        for col in COLUMNS:
            v = r[col]
            if v is None:
                cells.append("")
            elif isinstance(v, float):
                cells.append(f"{v:.6f}")
            else:
                cells.append(str(v).lower() if isinstance(v, bool) else str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def growth_exponents(sizes, times):
    """log(t2/t1) / log(n2/n1) between successive sizes."""
    return [math.log(t2 / t1) / math.log(n2 / n1)
            for (n1, t1), (n2, t2) in zip(zip(sizes, times), zip(sizes[1:], times[1:]))]
