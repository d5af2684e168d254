"""Mode enumeration and inversion of the dispersion in the bias field."""

import dataclasses
import logging

import numpy as np
import scipy.optimize

from ..errors import OutOfBandError, ParameterError
from ..units import rad_to_hz
from ._dispersion import mode_frequency, standing_wave_k
from ._geometry import Family, MagnetostaticMode

__all__ = [
    "FIELD_BOUNDS",
    "FIELD_LIMITS",
    "field_for_frequency",
    "resolve_mode",
    "mode_catalog",
    "coupling_profile",
]

logger = logging.getLogger(__name__)

FIELD_BOUNDS = (1e-3, 2.0)
FIELD_LIMITS = (1e-6, 10.0)


def field_for_frequency(
    target_omega,
    mode,
    geom,
    bounds=FIELD_BOUNDS,
    limits=FIELD_LIMITS,
    xtol=1e-12,
    maxiter=200,
):
    """
    Bias field at which a mode reaches a target frequency.

    The dispersion of every mode is strictly increasing in the bias
    field, so the root is found by bisection. The bracket starts at
    `bounds` and is widened geometrically, a factor of two per step,
    until it holds the root or reaches `limits`.

    Parameters
    ----------
    target_omega : float
        Target frequency, in rad/s.
    mode : MagnetostaticMode
        Mode to tune.
    geom : MaterialGeometry
        Flake geometry.
    bounds : (float, float), optional
        Initial bracket for the bias field, in T.
    limits : (float, float), optional
        Widest bracket, in T. Pass ``limits=bounds`` to search
        `bounds` only.
    xtol : float, optional
        Absolute tolerance on the field, in T.
    maxiter : int, optional
        Iteration cap of the bisection.

    Returns
    -------
    float
        Bias field, in T.

    Raises
    ------
    OutOfBandError
        If the target lies outside the band reachable within `limits`.

    """
    lo, hi = bounds
    if not (np.isfinite(target_omega) and target_omega > 0):
        raise ParameterError("target frequency must be finite and positive")
    lo_limit, hi_limit = limits
    if not 0 < lo_limit <= lo < hi <= hi_limit:
        raise ParameterError(
            "field bounds must satisfy 0 < limit <= lo < hi <= limit"
        )

    def residual(h):
        return mode_frequency(mode, h, geom) - target_omega

    f_lo = residual(lo)
    while f_lo > 0 and lo > lo_limit:
        lo = max(0.5 * lo, lo_limit)
        f_lo = residual(lo)
    f_hi = residual(hi)
    while f_hi < 0 and hi < hi_limit:
        hi = min(2.0 * hi, hi_limit)
        f_hi = residual(hi)
    if (lo, hi) != tuple(bounds):
        logger.debug("bracket widened to [%g, %g] T", lo, hi)
    if f_lo > 0 or f_hi < 0:
        raise OutOfBandError(
            "{} cannot reach {:.6g} Hz for fields in [{:g}, {:g}] T "
            "(band {:.6g} to {:.6g} Hz)".format(
                mode.label,
                rad_to_hz(target_omega),
                lo,
                hi,
                rad_to_hz(f_lo + target_omega),
                rad_to_hz(f_hi + target_omega),
            )
        )
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    h0 = scipy.optimize.bisect(residual, lo, hi, xtol=xtol, maxiter=maxiter)
    logger.debug(
        "%s at %.6g Hz needs H0 = %.9g T",
        mode.label,
        rad_to_hz(target_omega),
        h0,
    )
    return h0


def resolve_mode(mode, H0, geom):
    """Return a copy of `mode` carrying its wavevector and frequency."""
    return dataclasses.replace(
        mode,
        k=standing_wave_k(mode, geom),
        omega=float(mode_frequency(mode, H0, geom)),
    )


def mode_catalog(geom, H0, family, max_index):
    """
    Enumerate the standing modes of one family at a bias field.

    Parameters
    ----------
    geom : MaterialGeometry
        Flake geometry.
    H0 : float
        Bias field, in T.
    family : Family or str
        Spin-wave family.
    max_index : int
        Largest mode number ``n2`` (MSSW) or ``n1`` (BVMSW).

    Returns
    -------
    list of MagnetostaticMode
        Resolved modes, ascending in frequency for MSSW and descending
        for BVMSW, i.e. in order of increasing mode number.

    """
    family = Family(family)
    if max_index < 1:
        raise ParameterError("max_index must be at least 1")
    if family is Family.MSSW:
        modes = [MagnetostaticMode.mssw(n) for n in range(1, max_index + 1)]
    else:
        modes = [MagnetostaticMode.bvmsw(n) for n in range(1, max_index + 1)]
    modes = [resolve_mode(mode, H0, geom) for mode in modes]
    return sorted(
        modes, key=lambda m: m.omega, reverse=family is Family.BVMSW
    )


def coupling_profile(mode, g_ma, profile="inverse"):
    """
    Microwave coupling rate of a mode relative to the fundamental.

    Parameters
    ----------
    mode : MagnetostaticMode
        Mode to weight.
    g_ma : float
        Coupling rate of the fundamental mode.
    profile : {"inverse", "constant"}, optional
        ``"inverse"`` scales BVMSW couplings as ``1 / n1`` and keeps
        MSSW couplings constant; ``"constant"`` keeps all equal.

    Returns
    -------
    float
        Coupling rate, in the units of `g_ma`.

    """
    if profile == "constant":
        return g_ma
    if profile == "inverse":
        if mode.family is Family.BVMSW:
            return g_ma / mode.n1
        return g_ma
    raise ParameterError("unknown coupling profile {!r}".format(profile))
