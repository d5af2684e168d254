import logging
from typing import NamedTuple

import numpy as np

from ..errors import DegenerateDataError, ParameterError
from ..fit import simplex_minimize

__all__ = [
    "LorentzianFit",
    "lorentzian",
    "lorentzian_fwhm_fit",
]

logger = logging.getLogger(__name__)


class LorentzianFit(NamedTuple):
    center: float
    fwhm: float
    amplitude: float
    offset: float
    residual_norm: float
    evaluations: int


def lorentzian(f, center, fwhm, amplitude=1.0, offset=0.0):
    """``offset + amplitude (fwhm/2)**2 / ((f - center)**2 + (fwhm/2)**2)``"""
    hw2 = (0.5 * fwhm) ** 2
    return offset + amplitude * hw2 / ((np.asarray(f) - center) ** 2 + hw2)


def _linear_part(shape, y):
    # amplitude and offset enter linearly; solve for them exactly
    design = np.stack([shape, np.ones_like(shape)], axis=-1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return coef, y - design @ coef


def lorentzian_fwhm_fit(freq, value, maxfev=500, xatol=1e-9):
    """
    Fit a Lorentzian peak on a constant background.

    The center and width are found by Nelder-Mead simplex search; for
    each trial the amplitude and offset are solved by linear least
    squares. Frequencies are rescaled to the span of the data and
    values to their largest magnitude, so the result is invariant
    under rescaling of either.

    Parameters
    ----------
    freq : (N,) array-like of float
        Sample frequencies, in Hz. At least 8 samples.
    value : (N,) array-like of float
        Sampled values.
    maxfev : int, optional
        Evaluation cap of each simplex run. The search is restarted
        once from its optimum.
    xatol : float, optional
        Simplex tolerance on the center and log-width, relative to
        the span.

    Returns
    -------
    LorentzianFit
        Fitted center and full width at half maximum in Hz, amplitude,
        offset, residual norm and the number of evaluations.

    """
    f = np.asarray(freq, dtype=float)
    y = np.asarray(value, dtype=float)
    if f.ndim != 1 or f.shape != y.shape or len(f) < 8:
        raise ParameterError("need at least 8 (frequency, value) samples")
    if not (np.all(np.isfinite(f)) and np.all(np.isfinite(y))):
        raise ParameterError("samples must be finite")
    scale = np.max(np.abs(y))
    if scale == 0 or np.ptp(y) <= 1e-12 * scale:
        raise DegenerateDataError("data are flat; no peak to fit")
    origin = f[0]
    span = np.ptp(f)
    u = (f - origin) / span
    ys = y / scale

    def cost(p):
        shape = lorentzian(u, p[0], np.exp(p[1]))
        _, r = _linear_part(shape, ys)
        return r @ r

    x0 = np.array([u[np.argmax(ys)], np.log(0.2)])
    res = simplex_minimize(cost, x0, maxfev=maxfev, xatol=xatol)
    c, w = res.x[0], np.exp(res.x[1])
    (amplitude, offset), r = _linear_part(lorentzian(u, c, w), ys)
    logger.debug(
        "Lorentzian fit: center %.9g Hz, fwhm %.6g Hz, %d evaluations",
        origin + c * span,
        w * span,
        res.nfev,
    )
    return LorentzianFit(
        center=float(origin + c * span),
        fwhm=float(w * span),
        amplitude=float(amplitude * scale),
        offset=float(offset * scale),
        residual_norm=float(np.linalg.norm(r) * scale),
        evaluations=int(res.nfev),
    )
