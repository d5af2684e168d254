"""Peak conversion efficiency over probe frequency, and envelope widths."""

import logging
import math
from typing import NamedTuple

import numba as nb
import numpy as np

from ..core import (
    Process,
    efficiency,
    optical_center,
    polariton_frequencies,
)
from ..errors import ParameterError
from ._search import first_argmax, golden_section_max_numba

__all__ = [
    "MAX_GRID_POINTS",
    "Peak",
    "peak_bracket",
    "peak_efficiency",
    "bandwidth_3db",
]

logger = logging.getLogger(__name__)

MAX_GRID_POINTS = 200001


class Peak(NamedTuple):
    omega: float
    eta: float


@nb.njit
def _efficiency_kernel(
    w, omega_a, half_a, omega_m, half_m, center_b, half_b, g2_ma, y2, num2
):
    inv_a = complex(half_a, -(w - omega_a))
    inv_m = complex(half_m, -(w - omega_m))
    inv_b = complex(half_b, -(w - center_b))
    den = inv_a * inv_b * inv_m + g2_ma * inv_b + y2 * inv_a
    return num2 / (den.real**2 + den.imag**2)


def _kernel_args(cfg, process, on_resonance):
    return (
        cfg.microwave.omega,
        0.5 * cfg.microwave.linewidth,
        cfg.magnon.omega_m,
        0.5 * cfg.magnon.gamma_m,
        optical_center(cfg, process, on_resonance),
        0.5 * cfg.optical.linewidth,
        cfg.g_ma**2,
        process.sign * cfg.g_mb**2,
        (cfg.g_ma * cfg.g_mb) ** 2
        * cfg.microwave.kappa_ext
        * cfg.optical.kappa_ext,
    )


def peak_bracket(cfg, process=None, on_resonance=True, width=2.5):
    """
    Probe-frequency interval that contains the efficiency peak.

    The interval covers the magnon frequency, the polariton branch
    nearest to it, and the optical resonance, each padded by `width`
    times the sum of the three total linewidths.

    """
    process = cfg.process if process is None else Process(process)
    omega_m = cfg.magnon.omega_m
    lower, upper = polariton_frequencies(
        cfg.microwave.omega, omega_m, cfg.g_ma
    )
    branch = lower if abs(lower - omega_m) <= abs(upper - omega_m) else upper
    centers = (omega_m, branch, optical_center(cfg, process, on_resonance))
    pad = width * (
        cfg.microwave.linewidth + cfg.magnon.gamma_m + cfg.optical.linewidth
    )
    return min(centers) - pad, max(centers) + pad


def peak_efficiency(cfg, process=None, on_resonance=True, tol=1e-10):
    """
    Largest conversion efficiency over probe frequency.

    The closed form is sampled on the interval of :func:`peak_bracket`
    with a step of at most half the narrowest linewidth, and the best
    sample is refined by golden-section search.

    Parameters
    ----------
    cfg : TransducerConfig
        Transducer parameters.
    process : Process or str, optional
        Scattering process. Default is ``cfg.process``.
    on_resonance : bool, optional
        Optical susceptibility convention, see
        :func:`magtrans.core.efficiency`.
    tol : float, optional
        Final bracket width, relative to the peak frequency.

    Returns
    -------
    Peak
        Probe frequency of the peak, in rad/s, and the efficiency.

    Raises
    ------
    StokesInstabilityError
        If the Stokes denominator nears the threshold on the grid.

    """
    process = cfg.process if process is None else Process(process)
    lo, hi = peak_bracket(cfg, process, on_resonance)
    step = 0.5 * min(
        cfg.microwave.linewidth, cfg.magnon.gamma_m, cfg.optical.linewidth
    )
    points = int(math.ceil((hi - lo) / step)) + 1
    if points > MAX_GRID_POINTS:
        logger.warning(
            "peak search grid capped at %d points (needs %d)",
            MAX_GRID_POINTS,
            points,
        )
        points = MAX_GRID_POINTS
    grid = np.linspace(lo, hi, points)
    eta = efficiency(grid, cfg, process, on_resonance)
    i = first_argmax(eta)
    if eta[i] == 0:
        return Peak(float(grid[i]), 0.0)
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, points - 1)]
    w = golden_section_max_numba(
        _efficiency_kernel,
        a,
        b,
        _kernel_args(cfg, process, on_resonance),
        tol * abs(grid[i]),
    )
    eta_w = float(efficiency(w, cfg, process, on_resonance))
    if eta_w < eta[i]:
        return Peak(float(grid[i]), float(eta[i]))
    return Peak(float(w), eta_w)


def bandwidth_3db(x, y):
    """
    Full width at half maximum of a sampled curve.

    Parameters
    ----------
    x : (N,) array-like of float
        Strictly increasing sample positions.
    y : (N,) array-like of float
        Non-negative samples. Non-finite samples count as below half.

    Returns
    -------
    float or None
        Distance between the half-maximum crossings on either side of
        the global maximum, each located by linear interpolation, or
        None if the curve does not fall below half on both sides.

    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ParameterError("x and y must be 1D arrays of equal length")
    if not np.all(np.diff(x) > 0):
        raise ParameterError("x must be strictly increasing")
    i = first_argmax(y)
    half = 0.5 * y[i]
    if not half > 0:
        return None
    (below,) = np.nonzero(~(np.isfinite(y) & (y >= half)))
    left_of, right_of = below[below < i], below[below > i]
    if not (len(left_of) and len(right_of)):
        return None
    lo, hi = left_of[-1], right_of[0]

    def crossing(j, k):
        return x[j] + (half - y[j]) * (x[k] - x[j]) / (y[k] - y[j])

    left = crossing(lo, lo + 1) if np.isfinite(y[lo]) else x[lo]
    right = crossing(hi - 1, hi) if np.isfinite(y[hi]) else x[hi]
    return float(right - left)
