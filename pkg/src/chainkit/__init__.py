"""chainkit: c-chains, their stretch factors, and fast c-chain recognition."""

from .bounds import (BoundReport, best_upper_bound, lower_bound_exponent,
                     upper_bound_linear, upper_bound_logc, upper_bound_sqrt)
from .chain import (UNBOUNDED, MinC, PolygonalChain, TripleWitness, chain_length,
                    is_c_chain_bruteforce, is_one_chain, is_simple, min_c_bruteforce,
                    segment_lengths, stretch_factor, transform, triple_ratio)
from .chainfile import read_chain, write_chain
from .exceptions import ChainFileError, ChainkitError, InvalidParams, ZeroBaseline
from .fractal import (FractalParams, GeneratorReport, Variant, generate, generate_chain,
                      predicted_stretch, predicted_stretch_refined)
from .geometry import (EPS_ABS, EPS_REL, FocalEllipse, IntersectPolicy, Orientation,
                       Point, Segment, convex_hull, dist, ellipse_contains, orientation,
                       segments_intersect)
from .range_search import (GridIndex, NaiveScan, all_in_ellipse, build,
                           count_in_ellipse)
from .recognition import (CChainRecognizer, DecisionOutcome, RecursionTree, build_tree,
                          canonical_decomposition, decide_c_chain, min_c_bisect)

__version__ = "0.1.0"

__all__ = [
    "read_chain",
    "write_chain",
    "ChainFileError",
    "ChainkitError",
    "InvalidParams",
    "ZeroBaseline",
    "BoundReport",
    "best_upper_bound",
    "lower_bound_exponent",
    "upper_bound_linear",
    "upper_bound_logc",
    "upper_bound_sqrt",
    "UNBOUNDED",
    "MinC",
    "PolygonalChain",
    "TripleWitness",
    "chain_length",
    "is_c_chain_bruteforce",
    "is_one_chain",
    "is_simple",
    "min_c_bruteforce",
    "segment_lengths",
    "stretch_factor",
    "transform",
    "triple_ratio",
    "FractalParams",
    "GeneratorReport",
    "Variant",
    "generate",
    "generate_chain",
    "predicted_stretch",
    "predicted_stretch_refined",
    "EPS_ABS",
    "EPS_REL",
    "FocalEllipse",
    "IntersectPolicy",
    "Orientation",
    "Point",
    "Segment",
    "convex_hull",
    "dist",
    "ellipse_contains",
    "orientation",
    "segments_intersect",
    "GridIndex",
    "NaiveScan",
    "all_in_ellipse",
    "build",
    "count_in_ellipse",
    "CChainRecognizer",
    "DecisionOutcome",
    "RecursionTree",
    "build_tree",
    "canonical_decomposition",
    "decide_c_chain",
    "min_c_bisect",
]
