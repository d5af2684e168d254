from typing import NamedTuple

from ..errors import ParameterError
from ..units import HBAR, SPEED_OF_LIGHT, TWO_PI

__all__ = [
    "CavityFigures",
    "cavity_figures",
    "fsr_from_finesse",
    "photon_flux",
]


class CavityFigures(NamedTuple):
    finesse: float
    quality: float


def _linewidth_hz(optical):
    linewidth = optical.linewidth / TWO_PI
    if not linewidth > 0:
        raise ParameterError("optical linewidth must be positive")
    return linewidth


def cavity_figures(fsr, optical, wavelength):
    """
    Finesse and quality factor of the optical cavity.

    Parameters
    ----------
    fsr : float
        Free spectral range, in Hz.
    optical : OscillatorParams
        Optical mode. Only its total linewidth is used.
    wavelength : float
        Optical wavelength, in m.

    Returns
    -------
    CavityFigures
        ``fsr / linewidth`` and ``(c / wavelength) / linewidth``, with the
        linewidth ``(kappa_b + gamma_b) / 2 pi`` in Hz.

    """
    if not (fsr > 0 and wavelength > 0):
        raise ParameterError("fsr and wavelength must be positive")
    linewidth = _linewidth_hz(optical)
    return CavityFigures(
        fsr / linewidth, (SPEED_OF_LIGHT / wavelength) / linewidth
    )


def fsr_from_finesse(finesse, optical):
    """Free spectral range (Hz) implied by a finesse and a linewidth."""
    if not finesse > 0:
        raise ParameterError("finesse must be positive")
    return finesse * _linewidth_hz(optical)


def photon_flux(power, omega):
    """
    Photon flux carried by a monochromatic beam.

    Parameters
    ----------
    power : float
        Power, in W.
    omega : float
        Angular frequency, in rad/s.

    Returns
    -------
    float
        ``power / (hbar omega)``, in photons/s.

    """
    if not power >= 0:
        raise ParameterError("power must be non-negative")
    if not omega > 0:
        raise ParameterError("frequency must be positive")
    return power / (HBAR * omega)
