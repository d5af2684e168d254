"""Coupling strength from the avoided crossing in a reflection map."""

import logging
from typing import NamedTuple

import numpy as np
import scipy.ndimage
import scipy.signal
from more_itertools import zip_equal

from ..errors import BranchExtractionError, ParameterError
from ..units import TWO_PI
from ._simplex import simplex_minimize
from ._trace import FitResult

__all__ = [
    "Branches",
    "extract_branches",
    "crossing_branches",
    "fit_avoided_crossing",
]

logger = logging.getLogger(__name__)

MIN_COLUMN_FRACTION = 0.8


class Branches(NamedTuple):
    field: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    columns: int


def crossing_branches(field, f_a, f_x, slope, g, field_ref):
    """
    Lossless two-oscillator branches across a linear magnon sweep.

    All frequencies in Hz, `slope` in Hz/T. The magnon frequency is
    ``f_x + slope * (field - field_ref)``.

    """
    f_m = f_x + slope * (np.asarray(field) - field_ref)
    mean = 0.5 * (f_a + f_m)
    half = np.hypot(0.5 * (f_a - f_m), g)
    return mean - half, mean + half


def _refine(trace, j):
    # parabolic vertex through the raw minimum nearest to j
    lo, hi = max(j - 2, 0), min(j + 3, len(trace))
    j = lo + int(np.argmin(trace[lo:hi]))
    if j == 0 or j == len(trace) - 1:
        return float(j)
    a, b, c = trace[j - 1], trace[j], trace[j + 1]
    curvature = a - 2 * b + c
    if not curvature > 0:
        return float(j)
    return j + 0.5 * (a - c) / curvature


def _column_dips(trace, prominence):
    smooth = scipy.ndimage.uniform_filter1d(trace, size=5, mode="nearest")
    dips, props = scipy.signal.find_peaks(
        -smooth, distance=3, prominence=prominence
    )
    if len(dips) < 2:
        return None
    order = np.argsort(props["prominences"])[::-1][:2]
    return sorted(_refine(trace, dips[k]) for k in order)


def extract_branches(power, field, freq, rel_prominence=1e-3):
    """
    Locate the two most prominent dips in every column of a power map.

    Parameters
    ----------
    power : (M, N) ndarray of float
        Power at each field (rows) and frequency (columns). Columns
        containing NaN are skipped.
    field : (M,) ndarray of float
        Bias fields.
    freq : (N,) ndarray of float
        Evenly spaced frequencies.
    rel_prominence : float, optional
        Smallest dip prominence, relative to the range of the column.

    Returns
    -------
    Branches
        Fields and interpolated dip frequencies of the columns in
        which two dips were found, and the number of columns.

    """
    step = freq[1] - freq[0]
    kept, lower, upper = [], [], []
    for h, trace in zip_equal(field, power):
        if not np.all(np.isfinite(trace)) or np.ptp(trace) == 0:
            continue
        dips = _column_dips(trace, rel_prominence * np.ptp(trace))
        if dips is None:
            continue
        kept.append(h)
        lower.append(freq[0] + dips[0] * step)
        upper.append(freq[0] + dips[1] * step)
    return Branches(
        np.array(kept), np.array(lower), np.array(upper), len(field)
    )


def _window(axis_values, window):
    if window is None:
        return np.ones(len(axis_values), dtype=bool)
    lo, hi = window
    return (axis_values >= lo) & (axis_values <= hi)


def fit_avoided_crossing(
    smap, field_window=None, freq_window=None, maxfev=2000, strict=True
):
    """
    Fit the coupling strength to an avoided crossing in a map.

    The two polariton branches are extracted column by column, then
    the eigenfrequencies of two coupled lossless oscillators, with the
    magnon frequency linear in the field, are fitted to them by
    least squares.

    Parameters
    ----------
    smap : SpectrumMap
        Map over bias field (T) and frequency (Hz). Complex cells are
        converted to ``|S11|**2``; real cells are taken as power.
    field_window : (float, float), optional
        Field interval to fit, in T.
    freq_window : (float, float), optional
        Frequency interval to fit, in Hz.
    maxfev : int, optional
        Evaluation cap of each simplex run.
    strict : bool, optional
        Raise :class:`ConvergenceError` if the fit does not converge.

    Returns
    -------
    FitResult
        ``g_ma`` and ``omega_a`` in rad/s, ``field_to_omega_slope`` in
        rad/s/T, ``omega_x`` (magnon frequency at ``field_ref``) in
        rad/s, ``field_ref`` in T, and the smallest extracted branch
        splitting ``min_splitting`` in rad/s.

    Raises
    ------
    BranchExtractionError
        If two dips are found in fewer than 80% of the field columns.

    """
    fields = smap.x_axis.values
    freqs = smap.y_axis.values
    values = smap.values
    if np.iscomplexobj(values):
        power = np.abs(values) ** 2
    else:
        power = np.array(values, dtype=float)
    rows = _window(fields, field_window)
    cols = _window(freqs, freq_window)
    if np.count_nonzero(rows) < 3 or np.count_nonzero(cols) < 8:
        raise ParameterError("fit window holds too few map cells")
    br = extract_branches(power[rows][:, cols], fields[rows], freqs[cols])
    found = len(br.field)
    if found < 3:
        raise BranchExtractionError(
            "fewer than two resolvable dips in all but {} columns".format(
                found
            )
        )
    if found < MIN_COLUMN_FRACTION * br.columns:
        raise BranchExtractionError(
            "two dips found in only {} of {} columns".format(
                found, br.columns
            )
        )

    splitting = br.upper - br.lower
    i = int(np.argmin(splitting))
    field_ref = br.field[i]
    f_x0 = 0.5 * (br.upper[i] + br.lower[i])
    g0 = 0.5 * splitting[i]
    # the magnon-like branch is the one farther from the crossing
    ends = []
    for k in (0, -1):
        lo_k, up_k = br.lower[k], br.upper[k]
        ends.append(lo_k if abs(lo_k - f_x0) > abs(up_k - f_x0) else up_k)
    field_span = br.field[-1] - br.field[0]
    slope0 = (ends[1] - ends[0]) / field_span if field_span else 0.0
    scale = max(g0, freqs[1] - freqs[0])

    def unpack(p):
        return (
            f_x0 + p[0] * scale,
            f_x0 + p[1] * scale,
            slope0 + p[2] * scale / field_span,
            abs(p[3]) * scale,
        )

    def residuals(p):
        f_a, f_x, slope, g = unpack(p)
        lower, upper = crossing_branches(
            br.field, f_a, f_x, slope, g, field_ref
        )
        return np.concatenate([lower - br.lower, upper - br.upper])

    def cost(p):
        r = residuals(p)
        return r @ r

    x0 = np.array([0.0, 0.0, 0.0, g0 / scale])
    out = simplex_minimize(cost, x0, maxfev=maxfev, strict=strict)
    f_a, f_x, slope, g = unpack(out.x)
    r = residuals(out.x)
    rms = float(np.sqrt(np.mean(r**2)))
    logger.info(
        "avoided crossing: g/2pi %.6g Hz, f_a %.9g Hz, %d of %d columns",
        g,
        f_a,
        found,
        br.columns,
    )
    return FitResult(
        params={
            "g_ma": TWO_PI * g,
            "omega_a": TWO_PI * f_a,
            "field_to_omega_slope": TWO_PI * slope,
            "omega_x": TWO_PI * f_x,
            "field_ref": float(field_ref),
            "min_splitting": TWO_PI * float(splitting[i]),
        },
        units={
            "g_ma": "rad/s",
            "omega_a": "rad/s",
            "field_to_omega_slope": "rad/s/T",
            "omega_x": "rad/s",
            "field_ref": "T",
            "min_splitting": "rad/s",
        },
        residual_rms=rms,
        iterations=out.nit,
        converged=out.converged,
        history=out.history,
        x=np.concatenate([br.field, br.field]),
        residuals=r,
    )
