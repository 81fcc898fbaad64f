"""Extended nonnegative reals: distances that may be infinite.

Distances are plain Python floats with ``math.inf`` standing in for an
infinite distance. Only addition, minimum, comparison and positive scaling
are offered; subtraction is deliberately absent so ``inf - inf`` never
arises.
"""

from __future__ import annotations

import math
from typing import Iterable, Union

import numpy as np

INF = math.inf
DEFAULT_TOL = 1e-9

ExtDist = float
JsonDist = Union[float, int, str]


def ext(value) -> ExtDist:
    """Coerce ``value`` to an extended distance, rejecting NaN and negatives."""
    if isinstance(value, str):
        if value.strip().lower() not in ("inf", "infinity"):
            raise ValueError(f"not a distance: {value!r}")
        return INF
    x = float(value)
    if math.isnan(x) or x < 0:
        raise ValueError(f"distance must be >= 0 or inf, got {value!r}")
    return x


def ext_add(a: ExtDist, b: ExtDist) -> ExtDist:
    if a == INF or b == INF:
        return INF
    return a + b


def ext_min(values: Iterable[ExtDist]) -> ExtDist:
    """Minimum of ``values``; the empty minimum is ``INF``."""
    return min(values, default=INF)


def ext_scale(a: ExtDist, c: float) -> ExtDist:
    if not c > 0:
        raise ValueError(f"scale factor must be positive, got {c!r}")
    if a == INF:
        return INF
    return a * c


def dist_to_json(a: ExtDist) -> JsonDist:
    return "inf" if a == INF else float(a)


def dist_from_json(v: JsonDist) -> ExtDist:
    if isinstance(v, bool):
        raise ValueError(f"not a distance: {v!r}")
    return ext(v)


def shortest_paths(weights: np.ndarray) -> np.ndarray:
    """All-pairs shortest path closure (Floyd-Warshall) of a weight matrix.

    ``weights[i, j]`` is the length of the direct edge, ``inf`` if absent.
    The diagonal is forced to zero. Reduction order is fixed, so symmetric
    input gives exactly symmetric output.
    """
    d = np.array(weights, dtype=float, copy=True)
    n = d.shape[0]
    if n:
        np.fill_diagonal(d, 0.0)
    for k in range(n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    return d
