import logging

import numpy as np

from ..errors import DegenerateDataError, ParameterError, UnderSpannedError
from ..units import TWO_PI
from ._simplex import simplex_minimize
from ._trace import FitResult

__all__ = [
    "reflection_power",
    "fit_reflection_resonance",
]

logger = logging.getLogger(__name__)


def reflection_power(f, f_a, kappa, gamma):
    """
    Reflected power ``|S11|**2`` of a single-port resonator.

    Parameters
    ----------
    f : float or ndarray of float
        Frequency, in Hz.
    f_a : float
        Resonance frequency, in Hz.
    kappa, gamma : float
        External and intrinsic rates divided by 2 pi, in Hz.

    Returns
    -------
    float or ndarray of float
        ``(delta**2 + (kappa - gamma)**2 / 4)
        / (delta**2 + (kappa + gamma)**2 / 4)``.

    """
    d2 = (np.asarray(f) - f_a) ** 2
    return (d2 + 0.25 * (kappa - gamma) ** 2) / (
        d2 + 0.25 * (kappa + gamma) ** 2
    )


def _initial_guess(f, y):
    i = int(np.argmin(y))
    floor = y[i]
    if not floor < 1:
        raise DegenerateDataError("trace has no resonance dip below unity")
    floor = max(floor, 0.0)
    level = 0.5 * (1.0 + floor)
    below = np.flatnonzero(y <= level)
    # contiguous run of samples around the minimum
    lo = hi = np.searchsorted(below, i)
    while lo > 0 and below[lo - 1] == below[lo] - 1:
        lo -= 1
    while hi < len(below) - 1 and below[hi + 1] == below[hi] + 1:
        hi += 1
    step = np.min(np.diff(f))
    linewidth = max(f[below[hi]] - f[below[lo]], step)
    root = np.sqrt(floor)
    return f[i], linewidth, 0.5 * (1 + root), 0.5 * (1 - root)


def fit_reflection_resonance(
    trace, coupling="over", margin=3.0, maxfev=2000, strict=True
):
    """
    Fit resonance frequency and rates to a reflection power spectrum.

    The model is the reflection of the microwave cavity alone,
    ``|1 - kappa_a chi_a|**2``. It is symmetric under exchange of
    ``kappa_a`` and ``gamma_a``, so `coupling` decides which of the two
    fitted rates is the external one.

    Parameters
    ----------
    trace : MeasuredTrace
        Reflected power. Decibel traces are converted to linear power.
    coupling : {"over", "under"}, optional
        Assign the larger rate to ``kappa_a`` (over-coupled) or the
        smaller one (under-coupled).
    margin : float, optional
        Required span on either side of the dip, in linewidths.
    maxfev : int, optional
        Evaluation cap of each simplex run.
    strict : bool, optional
        Raise :class:`ConvergenceError` if the fit does not converge.

    Returns
    -------
    FitResult
        ``omega_a``, ``kappa_a`` and ``gamma_a`` in rad/s.

    Raises
    ------
    UnderSpannedError
        If the trace extends less than `margin` linewidths beyond the
        dip on either side.

    """
    if coupling not in ("over", "under"):
        raise ParameterError("coupling must be 'over' or 'under'")
    f = trace.freq
    y = trace.linear()
    f0, lw0, k0, g0 = _initial_guess(f, y)
    if f0 - f[0] < margin * lw0 or f[-1] - f0 < margin * lw0:
        raise UnderSpannedError(
            "trace must extend {:g} linewidths ({:.6g} Hz) beyond the "
            "dip at {:.9g} Hz on both sides".format(margin, lw0, f0)
        )

    def unpack(p):
        return f0 + p[0] * lw0, lw0 * np.exp(p[1]), lw0 * np.exp(p[2])

    def cost(p):
        r = reflection_power(f, *unpack(p)) - y
        return r @ r

    x0 = np.array([0.0, np.log(k0), np.log(max(g0, 1e-3))])
    out = simplex_minimize(cost, x0, maxfev=maxfev, strict=strict)
    f_a, r1, r2 = unpack(out.x)
    kappa, gamma = (max(r1, r2), min(r1, r2))
    if coupling == "under":
        kappa, gamma = gamma, kappa
    residuals = reflection_power(f, f_a, kappa, gamma) - y
    rms = float(np.sqrt(np.mean(residuals**2)))
    logger.info(
        "resonance %.9g Hz, kappa/2pi %.6g Hz, gamma/2pi %.6g Hz, rms %.3g",
        f_a,
        kappa,
        gamma,
        rms,
    )
    return FitResult(
        params={
            "omega_a": TWO_PI * f_a,
            "kappa_a": TWO_PI * kappa,
            "gamma_a": TWO_PI * gamma,
        },
        units={"omega_a": "rad/s", "kappa_a": "rad/s", "gamma_a": "rad/s"},
        residual_rms=rms,
        iterations=out.nit,
        converged=out.converged,
        history=out.history,
        x=f.copy(),
        residuals=residuals,
    )
