"""Input validation helpers shared by the estimators and functional API."""

import numbers

import numpy as np
from sklearn.utils import check_array

from .exceptions import InvalidParams


def check_points(X, min_points=0, name="points"):
    """Return ``X`` as a finite float64 array of shape (m, 2).

    Accepts nested sequences, arrays, or anything exposing ``vertices``.
    """
    X = getattr(X, "vertices", X)
    if min_points == 0 and len(X) == 0:
        return np.empty((0, 2), dtype=np.float64)
    try:
        X = check_array(X, dtype=np.float64, ensure_min_samples=max(min_points, 1),
                        input_name=name)
    except ValueError as exc:
        raise InvalidParams(str(exc)) from exc
    if X.shape[1] != 2:
        raise InvalidParams(f"{name} must have shape (m, 2), got {X.shape}")
    return X


def check_threshold(c, minimum=1.0, name="c"):
    if not isinstance(c, numbers.Real) or not np.isfinite(c) or c < minimum:
        raise InvalidParams(f"{name} must be a finite real >= {minimum}, got {c!r}")
    return float(c)


def check_count(n, minimum, name="n"):
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < minimum:
        raise InvalidParams(f"{name} must be an integer >= {minimum}, got {n!r}")
    return int(n)
