"""Closed-form susceptibilities and conversion efficiencies.

Every function accepts a scalar or an array of probe frequencies and
returns a result of the same shape.

"""

from typing import NamedTuple

import numpy as np

from ..errors import ParameterError, StokesInstabilityError
from ._params import Process

__all__ = [
    "STOKES_INSTABILITY",
    "optical_center",
    "inverse_susceptibilities",
    "susceptibilities",
    "efficiency",
    "eta_antistokes",
    "eta_stokes",
    "process_gap",
    "stokes_margin",
    "InternalEfficiency",
    "eta_internal",
    "infer_xi_a",
    "polariton_frequencies",
]

STOKES_INSTABILITY = 1e-6


def _probe(probe_omega):
    w = np.asarray(probe_omega, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ParameterError("probe frequency must be finite")
    return w


def _out(x):
    return np.asarray(x)[()] if np.ndim(x) == 0 else x


def optical_center(cfg, process=None, on_resonance=True):
    """Probe frequency at which the optical susceptibility peaks."""
    if on_resonance:
        return cfg.magnon.omega_m
    process = cfg.process if process is None else Process(process)
    return process.detuning_sign * cfg.detuning


def inverse_susceptibilities(
    probe_omega, cfg, process=None, on_resonance=True
):
    """
    Inverse susceptibilities of the microwave, magnon, and optical modes.

    Parameters
    ----------
    probe_omega : float or ndarray of float
        Probe frequency, in rad/s.
    cfg : TransducerConfig
        Transducer parameters.
    process : Process, optional
        Overrides ``cfg.process`` for the optical susceptibility.
    on_resonance : bool, optional
        If True (default), the optical susceptibility is centred at
        the magnon frequency, which holds on triple resonance. If
        False, it is centred at the actual sideband detuning.

    Returns
    -------
    inv_a, inv_m, inv_b : complex or ndarray of complex
        Inverse susceptibilities, in 1/s.

    """
    w = _probe(probe_omega)
    center_b = optical_center(cfg, process, on_resonance)
    inv_a = -1j * (w - cfg.microwave.omega) + 0.5 * cfg.microwave.linewidth
    inv_m = -1j * (w - cfg.magnon.omega_m) + 0.5 * cfg.magnon.gamma_m
    inv_b = -1j * (w - center_b) + 0.5 * cfg.optical.linewidth
    return _out(inv_a), _out(inv_m), _out(inv_b)


def susceptibilities(probe_omega, cfg, process=None, on_resonance=True):
    """
    Susceptibilities of the microwave, magnon, and optical modes.

    Parameters
    ----------
    probe_omega : float or ndarray of float
        Probe frequency, in rad/s.
    cfg : TransducerConfig
        Transducer parameters.
    process : Process, optional
        Overrides ``cfg.process`` for the optical susceptibility.
    on_resonance : bool, optional
        Centre the optical susceptibility at the magnon frequency
        (default) or at the actual sideband detuning.

    Returns
    -------
    chi_a, chi_m, chi_b : complex or ndarray of complex
        Susceptibilities, in s. Their real parts are positive.

    """
    inv = inverse_susceptibilities(probe_omega, cfg, process, on_resonance)
    return tuple(1.0 / x for x in inv)


def _denominators(probe_omega, cfg, process, on_resonance):
    inv_a, inv_m, inv_b = inverse_susceptibilities(
        probe_omega, cfg, process, on_resonance
    )
    bare = inv_a * inv_b * inv_m
    x = bare + cfg.g_ma**2 * inv_b
    y = cfg.g_mb**2 * inv_a
    return bare, x, y


def efficiency(
    probe_omega,
    cfg,
    process=None,
    on_resonance=True,
    instability=STOKES_INSTABILITY,
):
    """
    Photon-number conversion efficiency from the closed form.

    Parameters
    ----------
    probe_omega : float or ndarray of float
        Probe frequency, in rad/s.
    cfg : TransducerConfig
        Transducer parameters.
    process : Process or str, optional
        Scattering process. Default is ``cfg.process``.
    on_resonance : bool, optional
        Centre the optical susceptibility at the magnon frequency
        (default) or at the actual sideband detuning. The latter
        reproduces the steady-state linear solve exactly.
    instability : float, optional
        Stokes evaluations whose denominator is smaller than this
        fraction of the bare product of inverse susceptibilities are
        rejected.

    Returns
    -------
    float or ndarray of float
        Conversion efficiency.

    Raises
    ------
    StokesInstabilityError
        If any Stokes evaluation is near the parametric threshold.

    """
    process = cfg.process if process is None else Process(process)
    bare, x, y = _denominators(probe_omega, cfg, process, on_resonance)
    if process is Process.ANTI_STOKES:
        den = x + y
    else:
        den = x - y
        if np.any(np.abs(den) < instability * np.abs(bare)):
            raise StokesInstabilityError(
                "Stokes denominator is within {:g} of the parametric "
                "threshold".format(instability)
            )
    num = (
        cfg.g_ma
        * cfg.g_mb
        * np.sqrt(cfg.microwave.kappa_ext * cfg.optical.kappa_ext)
    )
    eta = np.abs(num / den) ** 2
    assert np.all(eta >= 0)
    return _out(eta)


def eta_antistokes(probe_omega, cfg, on_resonance=True):
    """Anti-Stokes conversion efficiency. ``cfg.process`` is ignored."""
    return efficiency(probe_omega, cfg, Process.ANTI_STOKES, on_resonance)


def eta_stokes(
    probe_omega, cfg, on_resonance=True, instability=STOKES_INSTABILITY
):
    """Stokes conversion efficiency. ``cfg.process`` is ignored."""
    return efficiency(
        probe_omega, cfg, Process.STOKES, on_resonance, instability
    )


def process_gap(probe_omega, cfg, on_resonance=True):
    """
    Relative gap ``(eta_s - eta_as) / eta_as`` between the processes.

    With ``X = 1/(chi_a chi_b chi_m) + g_ma**2/chi_b`` and
    ``Y = g_mb**2/chi_a``, the gap equals
    ``4 Re(X conj(Y)) / |X - Y|**2``, which keeps full relative
    precision however small ``g_mb`` is.

    """
    bare, x, y = _denominators(
        probe_omega, cfg, Process.ANTI_STOKES, on_resonance
    )
    return _out(4.0 * np.real(x * np.conj(y)) / np.abs(x - y) ** 2)


def stokes_margin(probe_omega, cfg, on_resonance=True):
    """
    Distance of the Stokes denominator from the parametric threshold.

    Returns
    -------
    float or ndarray of float
        ``|X - Y|`` relative to the bare product of inverse
        susceptibilities. Evaluations below :data:`STOKES_INSTABILITY`
        are rejected by :func:`efficiency`.

    """
    bare, x, y = _denominators(probe_omega, cfg, Process.STOKES, on_resonance)
    return _out(np.abs(x - y) / np.abs(bare))


class InternalEfficiency(NamedTuple):
    eta_int: float
    xi_a: float
    xi_b: float


def eta_internal(eta, cfg):
    """
    Conversion efficiency with the port extraction factored out.

    Parameters
    ----------
    eta : float or ndarray of float
        Conversion efficiency.
    cfg : TransducerConfig
        Transducer parameters.

    Returns
    -------
    InternalEfficiency
        ``eta / (xi_a xi_b)`` together with the extraction efficiencies
        ``xi_i = kappa_i / (kappa_i + gamma_i)``.

    """
    if np.any(np.asarray(eta) < 0):
        raise ParameterError("efficiency must be non-negative")
    if cfg.microwave.kappa_ext == 0 or cfg.optical.kappa_ext == 0:
        raise ParameterError(
            "extraction efficiency is undefined for an uncoupled port"
        )
    xi_a = cfg.microwave.extraction
    xi_b = cfg.optical.extraction
    return InternalEfficiency(eta / (xi_a * xi_b), xi_a, xi_b)


def infer_xi_a(eta, eta_int, xi_b):
    """Back-infer the microwave extraction efficiency from a reported
    efficiency pair and the optical extraction efficiency."""
    if not (eta >= 0 and eta_int > 0 and 0 < xi_b <= 1):
        raise ParameterError(
            "need eta >= 0, eta_int > 0 and 0 < xi_b <= 1"
        )
    return eta / (eta_int * xi_b)


def polariton_frequencies(omega_a, omega_m, g_ma):
    """
    Eigenfrequencies of two lossless coupled oscillators.

    Returns
    -------
    lower, upper : float or ndarray of float
        ``(omega_a + omega_m)/2 -+ sqrt(((omega_a - omega_m)/2)**2
        + g_ma**2)``.

    """
    mean = 0.5 * (np.asarray(omega_a) + np.asarray(omega_m))
    half = np.hypot(0.5 * (np.asarray(omega_a) - np.asarray(omega_m)), g_ma)
    return _out(mean - half), _out(mean + half)
