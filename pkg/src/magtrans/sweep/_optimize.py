import logging
import warnings
from typing import NamedTuple, Tuple

import numpy as np

from ..core import MagnonParams, Process
from ..errors import (
    BoundaryWarning,
    NumericalError,
    OutOfBandError,
    ParameterError,
)
from ..magnetostatics import field_for_frequency, mode_frequency
from ..units import TWO_PI, rad_to_hz
from ._peak import peak_efficiency
from ._search import coordinate_search

__all__ = [
    "TripleResonanceOptimum",
    "optimize_triple_resonance",
]

logger = logging.getLogger(__name__)


class TripleResonanceOptimum(NamedTuple):
    best_fsr: float
    best_field: float
    best_eta: float
    mismatch: float
    on_boundary: Tuple[bool, bool]
    evaluations: int


def optimize_triple_resonance(
    cfg_template,
    geom,
    mode,
    fsr_bounds,
    field_bounds,
    process=None,
    mismatch_width=5.0,
    rounds=5,
    points=21,
):
    """
    Free spectral range and bias field that maximize the efficiency.

    The sideband detuning is set by the free spectral range and the
    magnon frequency by the bias field; the optical susceptibility is
    centred at the actual detuning. The search alternates golden-
    section line searches along the triple-resonance line, where the
    magnon frequency equals the free spectral range, and across it in
    the frequency mismatch ``f_m(H0) - FSR``.

    Parameters
    ----------
    cfg_template : TransducerConfig
        Transducer parameters.
    geom : MaterialGeometry
        Flake geometry.
    mode : MagnetostaticMode
        Magnon mode carrying the conversion.
    fsr_bounds : (float, float)
        Free spectral range interval, in Hz.
    field_bounds : (float, float)
        Bias field interval, in T.
    process : Process or str, optional
        Scattering process. Default is ``cfg_template.process``.
    mismatch_width : float, optional
        Half-width of the mismatch interval in units of the larger of
        the optical linewidth and ``g_ma``.
    rounds, points : int, optional
        Alternations and coarse samples per line search.

    Returns
    -------
    TripleResonanceOptimum
        Best free spectral range (Hz), bias field (T), efficiency,
        mismatch (Hz), boundary flags for the free spectral range and
        the field, and the number of evaluations.

    Raises
    ------
    ParameterError
        If no free spectral range in the bounds is reachable by the
        mode within the field bounds.

    """
    process = cfg_template.process if process is None else Process(process)
    f_lo, f_hi = fsr_bounds
    h_lo, h_hi = field_bounds
    if not (0 < f_lo < f_hi and 0 < h_lo < h_hi):
        raise ParameterError("bounds must satisfy 0 < lo < hi")
    band = (
        rad_to_hz(float(mode_frequency(mode, h_lo, geom))),
        rad_to_hz(float(mode_frequency(mode, h_hi, geom))),
    )
    if f_hi < band[0] or f_lo > band[1]:
        raise ParameterError(
            "infeasible bounds: {} spans {:.6g} to {:.6g} Hz in the field "
            "bounds, outside the FSR bounds".format(mode.label, *band)
        )
    width = mismatch_width * rad_to_hz(
        max(cfg_template.optical.linewidth, cfg_template.g_ma)
    )
    gamma_m = cfg_template.magnon.gamma_m
    fields = {}

    def objective(fsr, mismatch):
        try:
            h = field_for_frequency(
                TWO_PI * (fsr + mismatch),
                mode,
                geom,
                bounds=(h_lo, h_hi),
                limits=(h_lo, h_hi),
            )
            omega_m = float(mode_frequency(mode, h, geom))
            cfg = cfg_template.replace(
                magnon=MagnonParams(omega_m, gamma_m)
            ).with_fsr(fsr, process)
            eta = peak_efficiency(cfg, process, on_resonance=False).eta
        except (OutOfBandError, NumericalError, ParameterError):
            return -np.inf
        fields[fsr, mismatch] = h
        return eta

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryWarning)
        found = coordinate_search(
            objective,
            (f_lo, f_hi),
            (-width, width),
            rounds=rounds,
            points=points,
        )
    if not np.isfinite(found.value):
        raise ParameterError("no feasible operating point within bounds")
    field = fields[found.x, found.y]
    on_boundary = (
        found.on_boundary[0],
        min(field - h_lo, h_hi - field) <= 1e-6 * (h_hi - h_lo),
    )
    if any(on_boundary):
        warnings.warn(
            "triple-resonance optimum lies on the search bounds",
            BoundaryWarning,
            stacklevel=2,
        )
    logger.info(
        "optimum FSR %.9g Hz, H0 %.9g T, eta %.6g (%d evaluations)",
        found.x,
        field,
        found.value,
        found.evaluations,
    )
    return TripleResonanceOptimum(
        found.x, field, found.value, found.y, on_boundary, found.evaluations
    )
