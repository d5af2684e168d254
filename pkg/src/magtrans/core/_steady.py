"""Steady state of the driven chain from a direct linear solve.

The Fourier-transformed Langevin equations are assembled into a dense
complex system with unknowns ordered as ``[a, m, b, s_1, ..., s_k]``,
where ``b`` stands for ``b^dagger`` in the Stokes process and ``s_j``
are spectator magnon modes coupled to the microwave cavity only.

"""

import logging

import numpy as np

from .. import linalg
from ..errors import ParameterError
from ._params import ModeAmplitudes
from ._response import optical_center

__all__ = [
    "system_matrix",
    "drive_vector",
    "steady_state_batch",
    "steady_state_solve",
    "reflection_s11",
    "oracle_efficiency",
]

logger = logging.getLogger(__name__)


def system_matrix(probe_omega, cfg, spectators=()):
    """
    Coefficient matrices of the steady-state equations.

    Parameters
    ----------
    probe_omega : float or (N,) ndarray of float
        Probe frequency, in rad/s.
    cfg : TransducerConfig
        Transducer parameters. The optical susceptibility is centred at
        the actual sideband detuning.
    spectators : sequence of Spectator, optional
        Additional magnon modes coupled to the microwave cavity only.

    Returns
    -------
    (3 + k, 3 + k) or (N, 3 + k, 3 + k) ndarray of complex
        Coefficient matrix for each probe frequency.

    """
    w = np.asarray(probe_omega, dtype=float)
    if not np.all(np.isfinite(w)):
        raise ParameterError("probe frequency must be finite")
    n = 3 + len(spectators)
    a = np.zeros(w.shape + (n, n), dtype=complex)
    sign = cfg.process.sign
    center_b = optical_center(cfg, on_resonance=False)
    a[..., 0, 0] = -1j * (w - cfg.microwave.omega) + 0.5 * (
        cfg.microwave.linewidth
    )
    a[..., 0, 1] = 1j * cfg.g_ma
    a[..., 1, 0] = 1j * cfg.g_ma
    a[..., 1, 1] = -1j * (w - cfg.magnon.omega_m) + 0.5 * cfg.magnon.gamma_m
    a[..., 1, 2] = 1j * cfg.g_mb
    a[..., 2, 1] = sign * 1j * cfg.g_mb
    a[..., 2, 2] = -1j * (w - center_b) + 0.5 * cfg.optical.linewidth
    for j, s in enumerate(spectators, start=3):
        a[..., 0, j] = 1j * s.g_ma
        a[..., j, 0] = 1j * s.g_ma
        a[..., j, j] = -1j * (w - s.omega_m) + 0.5 * s.gamma_m
    return a


def drive_vector(cfg, drive=(1.0, 0.0), n=3):
    """Right-hand side for microwave and optical input amplitudes."""
    a_i, b_i = (complex(x) for x in drive)
    if not (np.isfinite(a_i) and np.isfinite(b_i)):
        raise ParameterError("drive amplitudes must be finite")
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = np.sqrt(cfg.microwave.kappa_ext) * a_i
    rhs[2] = np.sqrt(cfg.optical.kappa_ext) * b_i
    return rhs


def steady_state_batch(
    probe_omega,
    cfg,
    drive=(1.0, 0.0),
    spectators=(),
    max_cond=linalg.MAX_CONDITION,
):
    """
    Solve the steady state at many probe frequencies at once.

    Parameters
    ----------
    probe_omega : (N,) ndarray of float
        Probe frequencies, in rad/s.
    cfg : TransducerConfig
        Transducer parameters.
    drive : (complex, complex), optional
        Input amplitudes ``(a_i, b_i)``.
    spectators : sequence of Spectator, optional
        Additional magnon modes coupled to the microwave cavity only.
    max_cond : float, optional
        Largest acceptable condition number.

    Returns
    -------
    x : (N, 3 + k) ndarray of complex
        Mode amplitudes. Rows of rejected systems are NaN.
    cond : (N,) ndarray of float
        Condition number of each system.

    """
    w = np.atleast_1d(np.asarray(probe_omega, dtype=float))
    assert w.ndim == 1
    a = system_matrix(w, cfg, spectators)
    rhs = drive_vector(cfg, drive, a.shape[-1])
    b = np.broadcast_to(rhs, a.shape[:-1])
    x, cond = linalg.checked_solve(a, b, max_cond)
    rejected = np.count_nonzero(~(cond <= max_cond))
    if rejected:
        logger.debug(
            "%d of %d systems rejected as singular", rejected, len(w)
        )
    return x, cond


def steady_state_solve(
    probe_omega,
    cfg,
    drive=(1.0, 0.0),
    spectators=(),
    max_cond=linalg.MAX_CONDITION,
):
    """
    Steady-state amplitudes and output fields at one probe frequency.

    Parameters
    ----------
    probe_omega : float
        Probe frequency, in rad/s.
    cfg : TransducerConfig
        Transducer parameters. The Stokes set of equations is used if
        ``cfg.process`` is Stokes.
    drive : (complex, complex), optional
        Input amplitudes ``(a_i, b_i)``. For the Stokes process the
        optical input and output refer to the conjugate field.
    spectators : sequence of Spectator, optional
        Additional magnon modes coupled to the microwave cavity only.
    max_cond : float, optional
        Largest acceptable condition number.

    Returns
    -------
    ModeAmplitudes
        Intracavity amplitudes and output fields
        ``a_out = sqrt(kappa_a) a - a_i``,
        ``b_out = sqrt(kappa_b) b - b_i``.

    Raises
    ------
    SingularSystemError
        If the condition number exceeds `max_cond`.

    """
    if np.ndim(probe_omega) != 0:
        raise ParameterError("probe frequency must be a scalar")
    a = system_matrix(probe_omega, cfg, spectators)
    rhs = drive_vector(cfg, drive, a.shape[-1])
    x, _ = linalg.checked_solve(a, rhs, max_cond)
    a_i, b_i = (complex(v) for v in drive)
    return ModeAmplitudes(
        a=complex(x[0]),
        m=complex(x[1]),
        b_or_bdag=complex(x[2]),
        a_out=complex(np.sqrt(cfg.microwave.kappa_ext) * x[0] - a_i),
        b_out=complex(np.sqrt(cfg.optical.kappa_ext) * x[2] - b_i),
        spectators=tuple(complex(v) for v in x[3:]),
    )


def reflection_s11(probe_omega, cfg, spectators=()):
    """
    Microwave reflection coefficient ``a_out / a_i`` with no optical input.

    Parameters
    ----------
    probe_omega : float or (N,) ndarray of float
        Probe frequency, in rad/s.
    cfg : TransducerConfig
        Transducer parameters.
    spectators : sequence of Spectator, optional
        Additional magnon modes coupled to the microwave cavity only.

    Returns
    -------
    complex or (N,) ndarray of complex
        Reflection coefficient. An empty far-detuned cavity gives -1.

    """
    if np.ndim(probe_omega) == 0:
        amp = steady_state_solve(probe_omega, cfg, spectators=spectators)
        return amp.a_out
    w = np.asarray(probe_omega, dtype=float)
    x, cond = steady_state_batch(w, cfg, spectators=spectators)
    if not np.all(cond <= linalg.MAX_CONDITION):
        # raises SingularSystemError for the first rejected system
        bad = np.flatnonzero(~(cond <= linalg.MAX_CONDITION))[0]
        steady_state_solve(w[bad], cfg, spectators=spectators)
    return np.sqrt(cfg.microwave.kappa_ext) * x[:, 0] - 1.0


def oracle_efficiency(probe_omega, cfg, spectators=()):
    """Conversion efficiency ``|b_out / a_i|**2`` from the linear solve.

    Rejected systems give NaN when `probe_omega` is an array.

    """
    if np.ndim(probe_omega) == 0:
        amp = steady_state_solve(probe_omega, cfg, spectators=spectators)
        return abs(amp.b_out) ** 2
    x, _ = steady_state_batch(probe_omega, cfg, spectators=spectators)
    return np.abs(np.sqrt(cfg.optical.kappa_ext) * x[:, 2]) ** 2
