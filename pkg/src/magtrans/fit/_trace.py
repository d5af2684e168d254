import dataclasses
import enum
from typing import Dict, List, Optional

import numpy as np

from ..errors import ParameterError
from ..units import to_linear

__all__ = [
    "Scale",
    "MeasuredTrace",
    "FitResult",
]


class Scale(enum.Enum):
    """How the values of a trace are expressed."""

    LINEAR = "linear"
    DECIBEL = "decibel"


@dataclasses.dataclass(eq=False)
class MeasuredTrace:
    """
    A power spectrum sampled at increasing frequencies.

    Parameters
    ----------
    freq : (N,) array-like of float
        Strictly increasing frequencies, in Hz. At least 8 samples.
    value : (N,) array-like of float
        Power quantity such as ``|S11|**2``, linear or in decibels.
    scale : Scale or str, optional
        Scale of `value`. Decibels are ``10 log10`` of the power.

    """

    freq: np.ndarray
    value: np.ndarray
    scale: Scale = Scale.LINEAR

    def __post_init__(self):
        self.scale = Scale(self.scale)
        self.freq = np.array(self.freq, dtype=float)
        self.value = np.array(self.value, dtype=float)
        if self.freq.ndim != 1 or self.freq.shape != self.value.shape:
            raise ParameterError("freq and value must have equal length")
        if len(self.freq) < 8:
            raise ParameterError("a trace needs at least 8 samples")
        if not (
            np.all(np.isfinite(self.freq)) and np.all(np.isfinite(self.value))
        ):
            raise ParameterError("trace samples must be finite")
        if not np.all(np.diff(self.freq) > 0):
            raise ParameterError("trace frequencies must strictly increase")

    def linear(self):
        """Values as a linear power quantity."""
        if self.scale is Scale.DECIBEL:
            return to_linear(self.value)
        return self.value.copy()


@dataclasses.dataclass
class FitResult:
    """
    Outcome of a spectrum fit.

    Attributes
    ----------
    params : dict of str to float
        Fitted values, angular rates in rad/s.
    units : dict of str to str
        Unit of each entry of `params`.
    residual_rms : float
        Root mean square of the residuals.
    iterations : int
        Simplex iterations over all runs.
    converged : bool
        Whether the final run met its tolerance.
    history : list of float
        Best cost after each iteration; never increases.
    x : ndarray of float, optional
        Abscissa of each residual (Hz for traces, T for maps).
    residuals : ndarray of float, optional
        Model minus data at each point of `x`.

    """

    params: Dict[str, float]
    units: Dict[str, str]
    residual_rms: float
    iterations: int
    converged: bool
    history: List[float] = dataclasses.field(default_factory=list)
    x: Optional[np.ndarray] = None
    residuals: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.converged and not np.isfinite(self.residual_rms):
            raise ParameterError("a converged fit has a finite residual")

    def __getitem__(self, name):
        return self.params[name]
