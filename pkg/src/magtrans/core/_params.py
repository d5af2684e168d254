"""Parameter containers for the microwave-magnon-optical chain.

All frequencies and rates are angular (rad/s). The ``from_hz``
constructors are the boundary where ordinary frequencies enter.

"""

import dataclasses
import enum
import math
import numbers
from typing import NamedTuple, Optional, Tuple

from ..errors import ParameterError
from ..units import hz_to_rad

__all__ = [
    "Process",
    "OscillatorParams",
    "MagnonParams",
    "Spectator",
    "TransducerConfig",
    "ModeAmplitudes",
]


class Process(enum.Enum):
    """Brillouin scattering process converting the microwave signal."""

    ANTI_STOKES = "antistokes"
    STOKES = "stokes"

    @property
    def sign(self):
        """Sign of the ``g_mb**2`` term in the conversion denominator."""
        return 1 if self is Process.ANTI_STOKES else -1

    @property
    def detuning_sign(self):
        """Sign of the sideband detuning at triple resonance."""
        return 1 if self is Process.ANTI_STOKES else -1


def _require(condition, message):
    if not condition:
        raise ParameterError(message)


def _finite(name, value):
    _require(
        isinstance(value, numbers.Real) and math.isfinite(value),
        "{} must be a finite real number, got {!r}".format(name, value),
    )


@dataclasses.dataclass(frozen=True)
class OscillatorParams:
    """
    A driven cavity mode.

    Parameters
    ----------
    omega : float
        Resonance frequency, in rad/s.
    kappa_ext : float
        External (port) coupling rate, in rad/s.
    gamma_int : float
        Intrinsic dissipation rate, in rad/s.

    """

    omega: float
    kappa_ext: float
    gamma_int: float

    def __post_init__(self):
        for name in ("omega", "kappa_ext", "gamma_int"):
            _finite(name, getattr(self, name))
        _require(self.omega > 0, "omega must be positive")
        _require(self.kappa_ext >= 0, "kappa_ext must be non-negative")
        _require(self.gamma_int >= 0, "gamma_int must be non-negative")
        _require(self.linewidth > 0, "total linewidth must be positive")

    @property
    def linewidth(self):
        """Total linewidth ``kappa_ext + gamma_int``."""
        return self.kappa_ext + self.gamma_int

    @property
    def extraction(self):
        """Port extraction efficiency ``kappa_ext / linewidth``."""
        return self.kappa_ext / self.linewidth

    @classmethod
    def from_hz(cls, frequency, kappa_ext, gamma_int):
        """Construct from ordinary frequencies in Hz."""
        return cls(
            hz_to_rad(frequency), hz_to_rad(kappa_ext), hz_to_rad(gamma_int)
        )


@dataclasses.dataclass(frozen=True)
class MagnonParams:
    """
    The magnon mode. It has no port of its own.

    Parameters
    ----------
    omega_m : float
        Magnon frequency, in rad/s.
    gamma_m : float
        Dissipation rate, in rad/s.

    """

    omega_m: float
    gamma_m: float

    def __post_init__(self):
        _finite("omega_m", self.omega_m)
        _finite("gamma_m", self.gamma_m)
        _require(self.omega_m > 0, "omega_m must be positive")
        _require(self.gamma_m > 0, "gamma_m must be positive")

    @classmethod
    def from_hz(cls, frequency, gamma_m):
        """Construct from ordinary frequencies in Hz."""
        return cls(hz_to_rad(frequency), hz_to_rad(gamma_m))


class Spectator(NamedTuple):
    """Extra magnon mode coupled to the microwave cavity only (rad/s)."""

    omega_m: float
    gamma_m: float
    g_ma: float


@dataclasses.dataclass(frozen=True)
class TransducerConfig:
    """
    Microwave cavity, magnon, and optical sideband mode, in the frame
    rotating at the pump frequency.

    Parameters
    ----------
    microwave : OscillatorParams
        Microwave cavity mode (omega_a, kappa_a, gamma_a).
    magnon : MagnonParams
        Magnon mode (omega_m, gamma_m).
    optical : OscillatorParams
        Optical sideband mode (omega_b, kappa_b, gamma_b).
    pump_omega : float
        Pump frequency, in rad/s.
    g_ma : float
        Magnon-microwave coupling rate, in rad/s.
    g_mb : float, optional
        Pump-enhanced optomagnonic coupling rate, in rad/s. If None,
        it is computed as ``g_mb_single * pump_amplitude``.
    g_mb_single : float, optional
        Single-photon optomagnonic coupling rate, in rad/s.
    pump_amplitude : float, optional
        Real pump amplitude beta.
    process : Process or str, optional
        Scattering process. Default is anti-Stokes.

    """

    microwave: OscillatorParams
    magnon: MagnonParams
    optical: OscillatorParams
    pump_omega: float
    g_ma: float
    g_mb: Optional[float] = None
    g_mb_single: Optional[float] = None
    pump_amplitude: Optional[float] = None
    process: Process = Process.ANTI_STOKES

    def __post_init__(self):
        object.__setattr__(self, "process", Process(self.process))
        _finite("pump_omega", self.pump_omega)
        _finite("g_ma", self.g_ma)
        _require(self.pump_omega > 0, "pump_omega must be positive")
        _require(self.g_ma >= 0, "g_ma must be non-negative")
        pumped = None
        if self.g_mb_single is not None and self.pump_amplitude is not None:
            _finite("g_mb_single", self.g_mb_single)
            _finite("pump_amplitude", self.pump_amplitude)
            pumped = self.g_mb_single * self.pump_amplitude
        if self.g_mb is None:
            _require(
                pumped is not None,
                "g_mb requires either a value or both g_mb_single and "
                "pump_amplitude",
            )
            object.__setattr__(self, "g_mb", pumped)
        else:
            _finite("g_mb", self.g_mb)
            _require(
                pumped is None
                or math.isclose(self.g_mb, pumped, rel_tol=1e-12),
                "g_mb must equal g_mb_single * pump_amplitude",
            )
        _require(self.g_mb >= 0, "g_mb must be non-negative")

    @property
    def detuning(self):
        """Sideband detuning ``Delta_b = omega_b - omega_p``, in rad/s."""
        return self.optical.omega - self.pump_omega

    def is_triple_resonant(self, rtol=1e-9):
        """Whether ``Delta_b = +omega_m`` (anti-Stokes) or ``-omega_m``."""
        target = self.process.detuning_sign * self.magnon.omega_m
        return abs(self.detuning - target) <= rtol * self.magnon.omega_m

    def replace(self, **changes):
        """Return a copy with some fields replaced.

        Replacing ``g_mb`` drops ``g_mb_single`` and ``pump_amplitude``
        unless they are replaced too; replacing either of those
        recomputes ``g_mb``.

        """
        pumped = {"g_mb_single", "pump_amplitude"}
        if "g_mb" in changes and not pumped & changes.keys():
            changes.update(g_mb_single=None, pump_amplitude=None)
        elif pumped & changes.keys() and "g_mb" not in changes:
            changes["g_mb"] = None
        return dataclasses.replace(self, **changes)

    def with_detuning(self, delta):
        """Move the pump so that the sideband detuning equals `delta`."""
        return self.replace(pump_omega=self.optical.omega - delta)

    def with_fsr(self, fsr, process=None):
        """Place the pump one free spectral range (Hz) from the sideband.

        The sign follows the process: the anti-Stokes sideband sits
        above the pump, the Stokes sideband below.

        """
        process = self.process if process is None else Process(process)
        delta = process.detuning_sign * hz_to_rad(fsr)
        return self.replace(
            pump_omega=self.optical.omega - delta, process=process
        )

    @classmethod
    def from_hz(
        cls,
        microwave,
        magnon,
        optical,
        fsr,
        g_ma,
        g_mb,
        process=Process.ANTI_STOKES,
    ):
        """
        Construct from ordinary frequencies in Hz.

        Parameters
        ----------
        microwave, optical : (3,) tuple of float
            ``(frequency, kappa_ext, gamma_int)`` in Hz.
        magnon : (2,) tuple of float
            ``(frequency, gamma_m)`` in Hz.
        fsr : float
            Magnitude of the sideband detuning, in Hz.
        g_ma, g_mb : float
            Coupling rates, in Hz.
        process : Process or str, optional
            Scattering process.

        """
        process = Process(process)
        optical = OscillatorParams.from_hz(*optical)
        return cls(
            microwave=OscillatorParams.from_hz(*microwave),
            magnon=MagnonParams.from_hz(*magnon),
            optical=optical,
            pump_omega=optical.omega - process.detuning_sign * hz_to_rad(fsr),
            g_ma=hz_to_rad(g_ma),
            g_mb=hz_to_rad(g_mb),
            process=process,
        )


@dataclasses.dataclass(frozen=True)
class ModeAmplitudes:
    """
    Steady-state amplitudes of the chain.

    Attributes
    ----------
    a : complex
        Microwave intracavity amplitude.
    m : complex
        Amplitude of the magnon mode carrying the optical coupling.
    b_or_bdag : complex
        Optical amplitude, ``b`` for anti-Stokes and ``b^dagger`` for
        Stokes.
    a_out, b_out : complex
        Output fields, ``sqrt(kappa) * amplitude - input``.
    spectators : tuple of complex
        Amplitudes of the spectator magnon modes, if any.

    """

    a: complex
    m: complex
    b_or_bdag: complex
    a_out: complex
    b_out: complex
    spectators: Tuple[complex, ...] = ()
