"""Derivative-free maximization on intervals and rectangles."""

import logging
import math
import warnings
from typing import NamedTuple, Tuple

import numba as nb
import numpy as np

from ..errors import BoundaryWarning, NumericalError, ParameterError

__all__ = [
    "TIE_RTOL",
    "first_argmax",
    "golden_section_max",
    "golden_section_max_numba",
    "SearchResult",
    "coordinate_search",
]

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0

# values within this fraction of a scan's spread count as ties
TIE_RTOL = 1e-12


def first_argmax(values, rtol=TIE_RTOL):
    """
    Index of the maximum of a sampled curve, lowest index on ties.

    Parameters
    ----------
    values : (N,) array-like of float
        Samples. Non-finite samples are ignored.
    rtol : float, optional
        Samples within ``rtol * (max - min)`` of the maximum are ties.

    Returns
    -------
    int
        Index of the first sample tied with the maximum.

    """
    values = np.asarray(values, dtype=float)
    finite = np.isfinite(values)
    if not np.any(finite):
        raise NumericalError("no finite sample to maximize")
    v = np.where(finite, values, -np.inf)
    best = np.max(v)
    spread = best - np.min(v[finite])
    return int(np.flatnonzero(v >= best - rtol * spread)[0])


def golden_section_max(f, a, b, tol=None):
    """
    Maximize a unimodal function on an interval by golden-section search.

    Parameters
    ----------
    f : callable
        Function of one float.
    a, b : float
        Interval, ``a <= b``.
    tol : float, optional
        Width of the final bracket. Default is ``1e-9 * (b - a)``.

    Returns
    -------
    x : float
        Evaluated point with the largest value. On ties the lower
        point wins.
    fx : float
        ``f(x)``.

    """
    dist = b - a
    if dist < 0:
        raise ParameterError("interval must satisfy a <= b")
    if tol is None:
        tol = 1e-9 * dist
    if dist <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    n = int(math.ceil(math.log(tol / dist) / math.log(INV_PHI)))
    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    yc = f(c)
    yd = f(d)
    for _ in range(n - 1):
        if yc >= yd:
            b = d
            d = c
            yd = yc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            yd = f(d)
    if yc >= yd:
        return c, yc
    return d, yd


@nb.njit
def golden_section_max_numba(obj, a, b, args=(), tol=1e-6):
    """
    Maximize a unimodal function on an interval by golden-section search.

    This function is compiled with numba; `obj` must be a compiled
    function called as ``obj(x, *args)``.

    Returns
    -------
    float
        Midpoint of the final bracket.

    """
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    inv_phi_sq = (3.0 - np.sqrt(5.0)) / 2.0
    dist = b - a
    if dist <= tol:
        return 0.5 * (a + b)
    n = int(np.ceil(np.log(tol / dist) / np.log(inv_phi)))
    c = a + inv_phi_sq * dist
    d = a + inv_phi * dist
    yc = obj(c, *args)
    yd = obj(d, *args)
    for _ in range(n - 1):
        if yc >= yd:
            b = d
            d = c
            yd = yc
            dist = inv_phi * dist
            c = a + inv_phi_sq * dist
            yc = obj(c, *args)
        else:
            a = c
            c = d
            yc = yd
            dist = inv_phi * dist
            d = a + inv_phi * dist
            yd = obj(d, *args)
    if yc >= yd:
        return 0.5 * (a + d)
    return 0.5 * (c + b)


class SearchResult(NamedTuple):
    x: float
    y: float
    value: float
    on_boundary: Tuple[bool, bool]
    evaluations: int


def _line_max(f, lo, hi, points, xtol):
    grid = np.linspace(lo, hi, points)
    values = np.array([f(g) for g in grid], dtype=float)
    i = first_argmax(values)
    spread = np.max(values[np.isfinite(values)]) - np.min(
        values[np.isfinite(values)]
    )
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, points - 1)]
    x, fx = golden_section_max(f, a, b, tol=xtol * (hi - lo))
    tie = TIE_RTOL * spread
    if x < grid[i] and fx >= values[i] - tie:
        return x, fx
    if x > grid[i] and fx > values[i] + tie:
        return x, fx
    return grid[i], values[i]


def coordinate_search(
    objective,
    x_bounds,
    y_bounds,
    rounds=5,
    points=21,
    xtol=1e-9,
    start=None,
    boundary_rtol=1e-6,
):
    """
    Maximize a function of two variables by alternating line searches.

    Each line search scans `points` evenly spaced samples across the
    full bounds, then refines around the best sample by golden-section
    search. The x axis is searched first. Lower coordinates win ties.

    Parameters
    ----------
    objective : callable
        Function ``objective(x, y) -> float``.
    x_bounds, y_bounds : (float, float)
        Search rectangle.
    rounds : int, optional
        Number of x-then-y alternations.
    points : int, optional
        Samples of the coarse scan on each line.
    xtol : float, optional
        Final bracket width of each refinement, relative to the bounds.
    start : (float, float), optional
        Starting point. Default is the centre of the rectangle.
    boundary_rtol : float, optional
        Optima closer than this fraction of the bounds to an edge are
        flagged as boundary optima.

    Returns
    -------
    SearchResult
        Best point, its value, boundary flags for each axis, and the
        number of objective evaluations.

    """
    (xlo, xhi), (ylo, yhi) = x_bounds, y_bounds
    if not (xhi > xlo and yhi > ylo):
        raise ParameterError("search bounds must satisfy lo < hi")
    if rounds < 1 or points < 3:
        raise ParameterError("need rounds >= 1 and points >= 3")
    count = 0

    def f(x, y):
        nonlocal count
        count += 1
        return objective(x, y)

    if start is None:
        x, y = 0.5 * (xlo + xhi), 0.5 * (ylo + yhi)
    else:
        x, y = start
    value = f(x, y)
    for r in range(rounds):
        previous = (x, y)
        cx, cv = _line_max(lambda t: f(t, y), xlo, xhi, points, xtol)
        if cv >= value or not np.isfinite(value):
            x, value = cx, cv
        cy, cv = _line_max(lambda t: f(x, t), ylo, yhi, points, xtol)
        if cv >= value or not np.isfinite(value):
            y, value = cy, cv
        logger.debug("round %d: (%.9g, %.9g) -> %.6g", r, x, y, value)
        if (x, y) == previous:
            break
    on_boundary = (
        min(x - xlo, xhi - x) <= boundary_rtol * (xhi - xlo),
        min(y - ylo, yhi - y) <= boundary_rtol * (yhi - ylo),
    )
    if any(on_boundary):
        warnings.warn(
            "optimum ({:.9g}, {:.9g}) lies on the search bounds".format(x, y),
            BoundaryWarning,
            stacklevel=2,
        )
    return SearchResult(
        float(x), float(y), float(value), on_boundary, count
    )
