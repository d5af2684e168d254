"""Dispersion of magnetostatic surface and backward volume waves."""

import numpy as np

from ..errors import ParameterError
from ._geometry import Family, Wavevector

__all__ = [
    "standing_wave_k",
    "mssw_frequency",
    "bvmsw_frequency",
    "dispersion",
    "mode_frequency",
]


def standing_wave_k(mode, geom):
    """
    Quantized wavevector of a standing mode.

    Parameters
    ----------
    mode : MagnetostaticMode
        Mode whose numbers set ``k_par = n1 pi / l1`` and
        ``k_perp = n2 pi / l2``.
    geom : MaterialGeometry
        Flake geometry.

    Returns
    -------
    float
        ``k_perp`` for MSSW and ``k_par`` for BVMSW, or
        ``hypot(k_par, k_perp)`` if ``geom.wavevector`` is ``NORM``.

    """
    k_par = mode.n1 * np.pi / geom.l1
    k_perp = mode.n2 * np.pi / geom.l2
    if geom.wavevector is Wavevector.NORM:
        return float(np.hypot(k_par, k_perp))
    if mode.family is Family.MSSW:
        return k_perp
    return k_par


def _arguments(k, H0, geom):
    k = np.asarray(k, dtype=float)
    H0 = np.asarray(H0, dtype=float)
    if not np.all(np.isfinite(k)) or np.any(k < 0):
        raise ParameterError("wavevector must be finite and non-negative")
    if not np.all(np.isfinite(H0)) or np.any(H0 <= 0):
        raise ParameterError("bias field must be finite and positive")
    return k * geom.d, geom.omega_0(H0), geom.omega_M


def _out(x):
    return np.asarray(x)[()] if np.ndim(x) == 0 else x


def mssw_frequency(k, H0, geom):
    """
    Frequency of a magnetostatic surface wave.

    Parameters
    ----------
    k : float or ndarray of float
        Wavevector, in rad/m.
    H0 : float or ndarray of float
        Bias field, in T.
    geom : MaterialGeometry
        Flake geometry and magnetic constants.

    Returns
    -------
    float or ndarray of float
        ``sqrt(w0 (w0 + wM) + wM**2 / 4 (1 - exp(-2 k d)))``, in rad/s.

    """
    kd, w0, wm = _arguments(k, H0, geom)
    return _out(np.sqrt(w0 * (w0 + wm) - 0.25 * wm**2 * np.expm1(-2 * kd)))


def bvmsw_frequency(k, H0, geom):
    """
    Frequency of a backward volume magnetostatic wave.

    Parameters
    ----------
    k : float or ndarray of float
        Wavevector, in rad/m.
    H0 : float or ndarray of float
        Bias field, in T.
    geom : MaterialGeometry
        Flake geometry and magnetic constants.

    Returns
    -------
    float or ndarray of float
        ``sqrt(w0 (w0 + wM (1 - exp(-k d)) / (k d)))``, in rad/s. At
        ``k = 0`` the ratio takes its limit 1.

    """
    kd, w0, wm = _arguments(k, H0, geom)
    positive = kd > 0
    ratio = np.where(
        positive, -np.expm1(-kd) / np.where(positive, kd, 1.0), 1.0
    )
    return _out(np.sqrt(w0 * (w0 + wm * ratio)))


def dispersion(family):
    """Dispersion function of a spin-wave family."""
    family = Family(family)
    if family is Family.MSSW:
        return mssw_frequency
    return bvmsw_frequency


def mode_frequency(mode, H0, geom):
    """Frequency (rad/s) of a standing mode at bias field `H0` (T)."""
    return dispersion(mode.family)(standing_wave_k(mode, geom), H0, geom)
