"""Machine-readable analysis of a single chain."""

import math
import time

from .bounds import best_upper_bound
from .chain import as_chain, chain_length, is_simple, min_c_bruteforce, stretch_factor
from .exceptions import ZeroBaseline
from .recognition import min_c_bisect

# above this many vertices "auto" switches from brute force to bisection
BRUTE_LIMIT = 600
ENVELOPE_SLACK = 1e-9


def _finite(x):
    return x if x is not None and math.isfinite(x) else None


def witness_dict(w):
    if w is None:
        return None
    return {"i": w.i, "j": w.j, "k": w.k, "ratio": _finite(w.ratio), "unbounded": w.unbounded}


def minc_dict(res):
    return {"value": _finite(res.value), "unbounded": res.unbounded,
            "witness": witness_dict(res.witness), "method": res.method}


def compute_min_c(P, method="auto", rel_tol=1e-9, backend="grid"):
    if method == "auto":
        method = "brute" if P.n <= BRUTE_LIMIT else "bisect"
    if method == "brute":
        return min_c_bruteforce(P)
    if method == "bisect":
        return min_c_bisect(P, rel_tol=rel_tol, backend=backend)
    raise ValueError(f"unknown min-c method {method!r}")


def analyze(P, method="auto", backend="grid", timing=True):
    """Stretch, min-c, simplicity and the bound report at the measured min-c.

    ``envelope_ok`` is False only if the stretch factor exceeds the best
    upper bound at (min-c, n) by more than a relative 1e-9.
    """
    P = as_chain(P)
    clock = {}

    t = time.perf_counter()
    length = chain_length(P)
    try:
        stretch = stretch_factor(P)
    except ZeroBaseline:
        stretch = None
    clock["stretch_s"] = time.perf_counter() - t

    t = time.perf_counter()
    mc = compute_min_c(P, method, backend=backend)
    clock["min_c_s"] = time.perf_counter() - t

    t = time.perf_counter()
    simple, pair = is_simple(P)
    clock["simple_s"] = time.perf_counter() - t

    bounds, envelope = None, None
    if not mc.unbounded:
        rep = best_upper_bound(max(mc.value, 1.0), P.n)
        bounds = rep.to_dict()
        if stretch is not None:
            envelope = stretch <= rep.best_value * (1.0 + ENVELOPE_SLACK)

    doc = {
        "n": P.n,
        "chain_length": length,
        "stretch_factor": stretch,
        "min_c": minc_dict(mc),
        "is_simple": simple,
        "simplicity_violation": list(pair) if pair else None,
        "bounds": bounds,
        "envelope_ok": envelope,
    }
    if timing:
        doc["timing"] = clock
    return doc
