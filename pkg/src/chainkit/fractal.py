"""Generalised Cesaro chains: the lower-bound family and its variants.

Each rewriting round replaces a segment pq of length l by p, u, t, v, q
where u and v cut pq at (1/2 - a/r) l and (1/2 + a/r) l, and t is the apex
of the isosceles triangle over uv with legs a l, on the left of pq. The
ratio r is c_* = (c - 2)/2 for the standard family and c itself for the
experimental variant.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .chain import PolygonalChain, as_chain, chain_length
from .exceptions import InvalidParams

MAX_DEPTH = 12


class Variant(str, enum.Enum):
    STANDARD = "standard"
    REFINED = "refined"
    EXPERIMENTAL = "experimental"


def c_star(c):
    return (c - 2.0) / 2.0


def max_simple_a(c):
    """Largest apex parameter for which the standard family stays simple."""
    if not c >= 4:
        raise InvalidParams(f"c must be >= 4, got {c}")
    return (c - 2.0) / (2.0 * c)


@dataclass(frozen=True)
class FractalParams:
    c: float
    k: int
    a: Optional[float] = None
    variant: Variant = Variant.STANDARD
    ratio: float = field(init=False)

    def __post_init__(self):
        variant = Variant(self.variant)
        object.__setattr__(self, "variant", variant)
        c, k = self.c, self.k
        if not isinstance(c, (int, float)) or not math.isfinite(c):
            raise InvalidParams(f"c must be a finite real, got {c!r}")
        if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= MAX_DEPTH:
            raise InvalidParams(f"k must be an integer in [0, {MAX_DEPTH}], got {k!r}")
        if variant is Variant.EXPERIMENTAL:
            if not c > 1:
                raise InvalidParams(f"experimental variant needs c > 1, got {c}")
            ratio = float(c)
        else:
            if not c >= 4:
                raise InvalidParams(f"c must be >= 4, got {c}")
            ratio = c_star(c)
        if variant is Variant.REFINED and k < 1:
            raise InvalidParams("refined variant needs k >= 1")
        a = ratio / (2.0 * (ratio + 1.0)) if self.a is None else float(self.a)
        if not 0 < a <= ratio / 2:
            raise InvalidParams(f"a must lie in (0, {ratio / 2}], got {a}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "ratio", ratio)

    @property
    def apex_height(self):
        """Apex height over a unit parent segment."""
        r = self.ratio
        return self.a * math.sqrt(r * r - 1.0) / r

    @property
    def equilateral(self):
        """True when all four replacement segments have equal length."""
        return math.isclose(self.a, self.ratio / (2.0 * (self.ratio + 1.0)), rel_tol=1e-12)

    @property
    def growth(self):
        """Length multiplier of one rewriting round."""
        r = self.ratio
        return 1.0 + 2.0 * self.a * (r - 1.0) / r


@dataclass(frozen=True)
class GeneratorReport:
    n: int
    segment_length: Optional[float]
    total_length: float
    predicted_stretch: float
    predicted_exponent: float

    def to_dict(self):
        return {
            "n": self.n,
            "segment_length": self.segment_length,
            "total_length": self.total_length,
            "predicted_stretch": self.predicted_stretch,
            "predicted_exponent": self.predicted_exponent,
        }


def _rewrite(V, a, ratio, height):
    p, q = V[:-1], V[1:]
    d = q - p
    normal = np.column_stack((-d[:, 1], d[:, 0]))
    s = 0.5 - a / ratio
    out = np.empty((4 * len(p) + 1, 2))
    out[0:-1:4] = p
    out[1::4] = p + s * d
    out[2::4] = p + 0.5 * d + height * normal
    out[3::4] = q - s * d
    out[-1] = V[-1]
    return out


def _standard_vertices(params):
    V = np.array([[0.0, 0.0], [1.0, 0.0]])
    for _ in range(params.k):
        V = _rewrite(V, params.a, params.ratio, params.apex_height)
    return V


def generate(params):
    """Build the chain described by ``params`` and its report."""
    if not isinstance(params, FractalParams):
        params = FractalParams(**params)
    V = _standard_vertices(params)
    k, a, r = params.k, params.a, params.ratio
    if params.variant is Variant.REFINED:
        q = 4 ** (k - 1)
        V = V[q:3 * q + 1]
        # u and v sit on the x-axis, so translation plus scaling suffices
        x0, x1 = V[0, 0], V[-1, 0]
        V = np.column_stack(((V[:, 0] - x0) / (x1 - x0), V[:, 1] / (x1 - x0)))
        V[0] = (0.0, 0.0)
        V[-1] = (1.0, 0.0)
        predicted = r * params.growth ** (k - 1)
        seg = a ** k * r / (2.0 * a) if params.equilateral else None
    else:
        predicted = params.growth ** k
        seg = a ** k if params.equilateral else None
    chain = PolygonalChain(V)
    exponent = math.log2(params.growth) / 2.0
    report = GeneratorReport(chain.n, seg, chain_length(chain), predicted, exponent)
    return chain, report


def generate_chain(c, k, variant=Variant.STANDARD, a=None):
    return generate(FractalParams(c, k, a, variant))[0]


def predicted_stretch(c, k):
    """Closed-form stretch factor ((2c - 4)/c)^k of the standard family."""
    if not c >= 4:
        raise InvalidParams(f"c must be >= 4, got {c}")
    if k < 0:
        raise InvalidParams(f"k must be >= 0, got {k}")
    return ((2.0 * c - 4.0) / c) ** k


def predicted_stretch_refined(c, k):
    if not c >= 4:
        raise InvalidParams(f"c must be >= 4, got {c}")
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    n = 4 ** k // 2 + 1
    exponent = (1.0 + math.log2(c - 2.0) - math.log2(c)) / 2.0
    return math.sqrt(c * (c - 2.0) / 8.0) * (n - 1) ** exponent


def subchain_slice(P, i):
    """The i-th quarter (i in 1..4) of a depth-k chain, without normalisation."""
    P = as_chain(P)
    m = P.n - 1
    k = round(math.log(m, 4)) if m > 0 else 0
    if k < 1 or 4 ** k != m:
        raise InvalidParams(f"chain has {P.n} vertices, not 4^k + 1 with k >= 1")
    if i not in (1, 2, 3, 4):
        raise InvalidParams(f"subchain index must be 1..4, got {i}")
    q = 4 ** (k - 1)
    return PolygonalChain(P.vertices[(i - 1) * q:i * q + 1])


def normalize(P):
    """Similarity taking the chain's endpoints to (0, 0) and (1, 0)."""
    P = as_chain(P)
    v = P.vertices
    d = v[-1] - v[0]
    L2 = float(d @ d)
    if L2 == 0:
        raise InvalidParams("cannot normalise a chain with coincident endpoints")
    rel = v - v[0]
    x = (rel @ d) / L2
    y = (rel[:, 1] * d[0] - rel[:, 0] * d[1]) / L2
    return PolygonalChain(np.column_stack((x, y)))
