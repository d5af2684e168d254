import dataclasses
import enum
import math
from typing import Optional

from ..errors import ParameterError
from ..units import TWO_PI

__all__ = [
    "Family",
    "Wavevector",
    "MaterialGeometry",
    "MagnetostaticMode",
]


class Family(enum.Enum):
    """Magnetostatic spin-wave family of an in-plane magnetized flake."""

    MSSW = "mssw"
    BVMSW = "bvmsw"


class Wavevector(enum.Enum):
    """Reduction of the quantized wavevector to the dispersion argument.

    ``AXIS`` keeps the component along the propagation axis of the
    family; ``NORM`` uses the magnitude of both components.

    """

    AXIS = "axis"
    NORM = "norm"


@dataclasses.dataclass(frozen=True)
class MaterialGeometry:
    """
    Dimensions and magnetic constants of a rectangular flake.

    Parameters
    ----------
    d : float
        Thickness, in m.
    l1 : float
        In-plane length along the bias field, in m.
    l2 : float
        In-plane length transverse to the bias field, in m.
    mu0_HM : float, optional
        Saturation magnetization expressed as a field, in T.
    gyro_over_2pi : float, optional
        Magnitude of the gyromagnetic ratio over 2 pi, in Hz/T.
    wavevector : Wavevector or str, optional
        How the two quantized wavevector components are reduced.

    """

    d: float
    l1: float
    l2: float
    mu0_HM: float = 0.175
    gyro_over_2pi: float = 28e9
    wavevector: Wavevector = Wavevector.AXIS

    def __post_init__(self):
        object.__setattr__(self, "wavevector", Wavevector(self.wavevector))
        for name in ("d", "l1", "l2", "mu0_HM", "gyro_over_2pi"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(
                    "{} must be positive, got {!r}".format(name, value)
                )

    @property
    def omega_M(self):
        """Magnetization frequency ``2 pi gyro mu0_HM``, in rad/s."""
        return TWO_PI * self.gyro_over_2pi * self.mu0_HM

    def omega_0(self, H0):
        """Larmor frequency ``2 pi gyro H0`` for a bias field in T."""
        return TWO_PI * self.gyro_over_2pi * H0


@dataclasses.dataclass(frozen=True)
class MagnetostaticMode:
    """
    A standing spin-wave mode of the flake.

    Parameters
    ----------
    family : Family or str
        Spin-wave family.
    n1, n2 : int
        Mode numbers along and transverse to the bias field. MSSW modes
        have ``n1 = 1`` and BVMSW modes have ``n2 = 1``.
    k : float, optional
        Wavevector used in the dispersion relation, in rad/m.
    omega : float, optional
        Frequency at the bias field the mode was resolved at, in rad/s.

    """

    family: Family
    n1: int
    n2: int
    k: Optional[float] = None
    omega: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        for name in ("n1", "n2"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ParameterError(
                    "{} must be a positive integer, got {!r}".format(
                        name, value
                    )
                )
            object.__setattr__(self, name, int(value))
        if self.family is Family.MSSW and self.n1 != 1:
            raise ParameterError("MSSW modes have n1 = 1")
        if self.family is Family.BVMSW and self.n2 != 1:
            raise ParameterError("BVMSW modes have n2 = 1")
        if self.k is not None and not self.k > 0:
            raise ParameterError("wavevector must be positive")

    @classmethod
    def mssw(cls, n2):
        return cls(Family.MSSW, 1, n2)

    @classmethod
    def bvmsw(cls, n1):
        return cls(Family.BVMSW, n1, 1)

    @property
    def index(self):
        """The mode number that varies within the family."""
        return self.n2 if self.family is Family.MSSW else self.n1

    @property
    def label(self):
        return "{}({},{})".format(self.family.name, self.n1, self.n2)
