"""One-dimensional parameter scans of the peak conversion efficiency."""

import logging
import warnings
from typing import NamedTuple

import numpy as np

from ..core import MagnonParams, OscillatorParams, Process, process_gap
from ..errors import (
    NumericalError,
    OutOfBandError,
    StokesInstabilityError,
    UnimodalityWarning,
)
from ..magnetostatics import field_for_frequency
from ..units import TWO_PI, rad_to_hz
from ._axes import ScanResult
from ._peak import bandwidth_3db, peak_efficiency
from ._search import golden_section_max

__all__ = [
    "fsr_scan",
    "is_unimodal",
    "KappaOptimum",
    "optimize_kappa_a",
    "gmb_scan",
]

logger = logging.getLogger(__name__)


def _envelope_width(values, eta, valid):
    if np.count_nonzero(valid) < 3:
        return None
    return bandwidth_3db(values[valid], eta[valid])


def fsr_scan(cfg_template, geom, mode, fsr_axis, process=None):
    """
    Peak efficiency on triple resonance across free spectral ranges.

    For each free spectral range the bias field is retuned so that the
    magnon frequency equals it, and the pump is placed one free
    spectral range away from the optical sideband.

    Parameters
    ----------
    cfg_template : TransducerConfig
        Transducer parameters.
    geom : MaterialGeometry
        Flake geometry.
    mode : MagnetostaticMode
        Magnon mode tuned into resonance.
    fsr_axis : SweepAxis
        Free spectral ranges, in Hz.
    process : Process or str, optional
        Scattering process. Default is ``cfg_template.process``.

    Returns
    -------
    ScanResult
        Peak efficiency and its probe frequency at each free spectral
        range, the 3 dB width of the envelope, and the bias field in
        ``extra["field"]``. Free spectral ranges the mode cannot reach
        are flagged invalid.

    """
    process = cfg_template.process if process is None else Process(process)
    fsrs = fsr_axis.values
    n = len(fsrs)
    eta = np.full(n, np.nan)
    peak = np.full(n, np.nan)
    field = np.full(n, np.nan)
    valid = np.zeros(n, dtype=bool)
    for i, fsr in enumerate(fsrs):
        omega_m = TWO_PI * fsr
        try:
            field[i] = field_for_frequency(omega_m, mode, geom)
            cfg = cfg_template.replace(
                magnon=MagnonParams(omega_m, cfg_template.magnon.gamma_m)
            ).with_fsr(fsr, process)
            p = peak_efficiency(cfg, process)
        except (OutOfBandError, NumericalError) as e:
            logger.warning("FSR %.6g Hz flagged: %s", fsr, e)
            continue
        eta[i], peak[i], valid[i] = p.eta, rad_to_hz(p.omega), True
    width = _envelope_width(fsrs, eta, valid)
    logger.info(
        "FSR scan of %s: %d of %d samples valid, 3 dB width %s Hz",
        mode.label,
        np.count_nonzero(valid),
        n,
        "n/a" if width is None else "{:.6g}".format(width),
    )
    return ScanResult(
        "fsr",
        fsrs,
        eta,
        peak,
        valid,
        unit="Hz",
        bandwidth_3db=width,
        extra={"field": field},
    )


def is_unimodal(y):
    """Whether a sampled curve rises and then falls, ignoring flat runs."""
    d = np.sign(np.diff(np.asarray(y, dtype=float)))
    d = d[d != 0]
    return not np.any((d[:-1] < 0) & (d[1:] > 0))


class KappaOptimum(NamedTuple):
    best_kappa: float
    best_eta: float
    curve: ScanResult
    unimodal: bool


def optimize_kappa_a(cfg_template, kappa_range, process=None):
    """
    Microwave external coupling rate that maximizes the peak efficiency.

    Parameters
    ----------
    cfg_template : TransducerConfig
        Transducer parameters, all but ``kappa_a`` fixed.
    kappa_range : SweepAxis
        External coupling rates ``kappa_a / 2 pi`` to scan, in Hz.
    process : Process or str, optional
        Scattering process. Default is ``cfg_template.process``.

    Returns
    -------
    KappaOptimum
        Best ``kappa_a`` in rad/s after golden-section refinement
        around the best scan sample, its peak efficiency, the scan
        curve, and whether the curve is unimodal. A non-unimodal curve
        also raises :class:`UnimodalityWarning`.

    """
    process = cfg_template.process if process is None else Process(process)
    microwave = cfg_template.microwave

    def peak_at(kappa_hz):
        cfg = cfg_template.replace(
            microwave=OscillatorParams(
                microwave.omega, TWO_PI * kappa_hz, microwave.gamma_int
            )
        )
        return peak_efficiency(cfg, process)

    kappas = kappa_range.values
    peaks = [peak_at(k) for k in kappas]
    curve = ScanResult(
        "kappa_a",
        kappas,
        [p.eta for p in peaks],
        [rad_to_hz(p.omega) for p in peaks],
        unit="Hz",
    )
    unimodal = is_unimodal(curve.peak_efficiency)
    if not unimodal:
        warnings.warn(
            "efficiency versus kappa_a has more than one local maximum",
            UnimodalityWarning,
            stacklevel=2,
        )
    i = curve.best()
    a = kappas[max(i - 1, 0)]
    b = kappas[min(i + 1, len(kappas) - 1)]
    k, eta = golden_section_max(lambda v: peak_at(v).eta, a, b)
    if eta < curve.peak_efficiency[i]:
        k, eta = kappas[i], curve.peak_efficiency[i]
    logger.info("optimal kappa_a/2pi = %.6g Hz, eta = %.6g", k, eta)
    return KappaOptimum(TWO_PI * float(k), float(eta), curve, unimodal)


def gmb_scan(cfg_template, gmb_axis):
    """
    Peak efficiency of both processes across optomagnonic couplings.

    Parameters
    ----------
    cfg_template : TransducerConfig
        Transducer parameters on triple resonance.
    gmb_axis : SweepAxis
        Couplings ``g_mb / 2 pi``, in Hz.

    Returns
    -------
    curve_as, curve_s : ScanResult
        Anti-Stokes and Stokes curves. Both carry the relative gap
        ``(eta_s - eta_as) / eta_as`` at the anti-Stokes peak in
        ``extra["relative_gap"]``. Stokes samples near the parametric
        threshold are flagged invalid.

    """
    gmbs = gmb_axis.values
    n = len(gmbs)
    eta = {p: np.full(n, np.nan) for p in Process}
    peak = {p: np.full(n, np.nan) for p in Process}
    gap = np.full(n, np.nan)
    for i, g in enumerate(gmbs):
        cfg = cfg_template.replace(g_mb=TWO_PI * g)
        for process in Process:
            try:
                p = peak_efficiency(cfg, process)
            except StokesInstabilityError as e:
                logger.warning("g_mb %.6g Hz flagged: %s", g, e)
                continue
            eta[process][i] = p.eta
            peak[process][i] = rad_to_hz(p.omega)
        if np.isfinite(peak[Process.ANTI_STOKES][i]):
            gap[i] = process_gap(
                TWO_PI * peak[Process.ANTI_STOKES][i], cfg
            )
    return tuple(
        ScanResult(
            "g_mb",
            gmbs,
            eta[process],
            peak[process],
            unit="Hz",
            extra={"relative_gap": gap},
        )
        for process in (Process.ANTI_STOKES, Process.STOKES)
    )
