import dataclasses
import enum
import math
from typing import Optional

import numpy as np

from ..core import Process
from ..errors import ParameterError

__all__ = [
    "SweepAxis",
    "MapKind",
    "SpectrumMap",
    "ScanResult",
]


@dataclasses.dataclass(frozen=True)
class SweepAxis:
    """
    Evenly spaced sample points of one swept quantity.

    Parameters
    ----------
    name : str
        Label of the swept quantity.
    start, stop : float
        First and last sample, in `unit`.
    points : int
        Number of samples, at least 2.
    unit : str, optional
        Unit of the samples, e.g. ``"T"`` or ``"Hz"``.

    """

    name: str
    start: float
    stop: float
    points: int
    unit: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ParameterError(
                "axis {!r} bounds must be finite".format(self.name)
            )
        if not self.stop > self.start:
            raise ParameterError(
                "axis {!r} needs stop > start".format(self.name)
            )
        if int(self.points) != self.points or self.points < 2:
            raise ParameterError(
                "axis {!r} needs at least 2 points".format(self.name)
            )
        object.__setattr__(self, "points", int(self.points))
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "stop", float(self.stop))

    @property
    def values(self):
        return np.linspace(self.start, self.stop, self.points)

    @property
    def step(self):
        return (self.stop - self.start) / (self.points - 1)


class MapKind(enum.Enum):
    """Quantity stored in a :class:`SpectrumMap`."""

    REFLECTION = "reflection"
    CONVERSION_AS = "conversion_as"
    CONVERSION_S = "conversion_s"

    @property
    def is_complex(self):
        return self is MapKind.REFLECTION

    @property
    def process(self):
        """Scattering process of a conversion map, None for reflection."""
        if self is MapKind.CONVERSION_AS:
            return Process.ANTI_STOKES
        if self is MapKind.CONVERSION_S:
            return Process.STOKES
        return None


@dataclasses.dataclass(eq=False)
class SpectrumMap:
    """
    Sweep results on a rectangular grid.

    Parameters
    ----------
    x_axis : SweepAxis
        Outer axis, usually the bias field.
    y_axis : SweepAxis
        Inner axis, usually the probe frequency.
    values : (x_axis.points, y_axis.points) array-like
        Complex reflection coefficients or real efficiencies. Row ``i``
        holds the results at ``x_axis.values[i]``.
    kind : MapKind or str
        Quantity stored in `values`.
    valid : (x_axis.points, y_axis.points) array-like of bool, optional
        Validity of each cell. Invalid cells hold NaN.

    """

    x_axis: SweepAxis
    y_axis: SweepAxis
    values: np.ndarray
    kind: MapKind
    valid: Optional[np.ndarray] = None

    def __post_init__(self):
        self.kind = MapKind(self.kind)
        shape = (self.x_axis.points, self.y_axis.points)
        dtype = complex if self.kind.is_complex else float
        self.values = np.array(self.values, dtype=dtype).reshape(shape)
        if self.valid is None:
            self.valid = np.isfinite(self.values)
        else:
            self.valid = np.array(self.valid, dtype=bool).reshape(shape)
        if not np.all(np.isfinite(self.values[self.valid])):
            raise ParameterError("valid map cells must be finite")
        self.values[~self.valid] = np.nan

    @property
    def shape(self):
        return self.values.shape

    @property
    def poisoned(self):
        """Number of invalid cells."""
        return int(np.count_nonzero(~self.valid))

    def __eq__(self, other):
        if not isinstance(other, SpectrumMap):
            return NotImplemented
        return (
            self.x_axis == other.x_axis
            and self.y_axis == other.y_axis
            and self.kind is other.kind
            and np.array_equal(self.valid, other.valid)
            and np.array_equal(
                self.values[self.valid], other.values[other.valid]
            )
        )


@dataclasses.dataclass(eq=False)
class ScanResult:
    """
    Peak conversion efficiency along a scanned parameter.

    Parameters
    ----------
    parameter : str
        Label of the scanned parameter.
    values : (N,) ndarray of float
        Scanned values, in `unit`.
    peak_efficiency : (N,) ndarray of float
        Peak efficiency over probe frequency at each value.
    peak_frequency : (N,) ndarray of float
        Probe frequency of each peak, in Hz.
    valid : (N,) ndarray of bool, optional
        False for samples that could not be evaluated.
    unit : str, optional
        Unit of `values`.
    bandwidth_3db : float, optional
        Width of the efficiency envelope at half maximum, in `unit`.
    extra : dict of str to (N,) ndarray, optional
        Additional per-sample columns.

    """

    parameter: str
    values: np.ndarray
    peak_efficiency: np.ndarray
    peak_frequency: np.ndarray
    valid: Optional[np.ndarray] = None
    unit: str = ""
    bandwidth_3db: Optional[float] = None
    extra: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.peak_efficiency = np.array(self.peak_efficiency, dtype=float)
        self.peak_frequency = np.array(self.peak_frequency, dtype=float)
        n = len(self.values)
        if n == 0:
            raise ParameterError("scan has no samples")
        if self.valid is None:
            self.valid = np.isfinite(self.peak_efficiency)
        self.valid = np.asarray(self.valid, dtype=bool)
        assert self.peak_efficiency.shape == (n,)
        assert self.peak_frequency.shape == (n,)
        assert self.valid.shape == (n,)
        self.peak_efficiency[~self.valid] = np.nan
        self.peak_frequency[~self.valid] = np.nan
        self.extra = {
            key: np.asarray(value, dtype=float)
            for key, value in self.extra.items()
        }
        for value in self.extra.values():
            assert value.shape == (n,)
        assert np.all(self.peak_efficiency[self.valid] >= 0)

    @property
    def samples(self):
        """List of ``(value, peak_efficiency, peak_frequency)``."""
        return list(
            zip(
                self.values.tolist(),
                self.peak_efficiency.tolist(),
                self.peak_frequency.tolist(),
            )
        )

    def best(self):
        """Index of the largest valid peak efficiency, lowest on ties."""
        eta = np.where(self.valid, self.peak_efficiency, -np.inf)
        return int(np.argmax(eta))
