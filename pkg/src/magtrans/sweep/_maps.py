import concurrent.futures
import logging
import os

import numpy as np

from .. import linalg
from ..core import (
    STOKES_INSTABILITY,
    MagnonParams,
    Process,
    Spectator,
    steady_state_batch,
    stokes_margin,
)
from ..errors import ParameterError, TransducerError
from ..magnetostatics import coupling_profile, mode_frequency
from ..units import TWO_PI, rad_to_hz
from ._axes import MapKind, SpectrumMap

__all__ = [
    "column_config",
    "map_2d",
]

logger = logging.getLogger(__name__)


def column_config(
    cfg_template,
    geom,
    mode_set,
    H0,
    selected=0,
    profile="inverse",
):
    """
    Transducer and spectator modes at one bias field.

    The selected mode becomes the magnon of the chain and carries the
    optomagnonic coupling; the other modes couple to the microwave
    cavity only. Every mode keeps the magnon damping of the template
    and a microwave coupling scaled by `profile`.

    Returns
    -------
    cfg : TransducerConfig
    spectators : list of Spectator

    """
    gamma_m = cfg_template.magnon.gamma_m
    g_ma = cfg_template.g_ma
    omegas = [float(mode_frequency(mode, H0, geom)) for mode in mode_set]
    main = mode_set[selected]
    cfg = cfg_template.replace(
        magnon=MagnonParams(omegas[selected], gamma_m),
        g_ma=coupling_profile(main, g_ma, profile),
    )
    spectators = [
        Spectator(omega, gamma_m, coupling_profile(mode, g_ma, profile))
        for j, (mode, omega) in enumerate(zip(mode_set, omegas))
        if j != selected
    ]
    return cfg, spectators


def map_2d(
    cfg_template,
    geom,
    mode_set,
    field_axis,
    freq_axis,
    kind,
    selected=0,
    profile="inverse",
    threads=1,
    instability=STOKES_INSTABILITY,
):
    """
    Reflection or conversion map over bias field and probe frequency.

    Every cell is evaluated by the steady-state linear solve, one batch
    per field column. A cell whose system is rejected, or a column
    whose parameters are invalid, is marked invalid instead of failing
    the whole map.

    Parameters
    ----------
    cfg_template : TransducerConfig
        Transducer parameters. The magnon frequency is replaced by the
        dispersion of the selected mode at each field.
    geom : MaterialGeometry
        Flake geometry.
    mode_set : sequence of MagnetostaticMode
        Magnon modes coupled to the microwave cavity.
    field_axis : SweepAxis
        Bias field, in T.
    freq_axis : SweepAxis
        Probe frequency, in Hz.
    kind : MapKind or str
        Quantity to compute. Conversion maps use the process of the
        kind, with the pump moved to the matching side of the optical
        sideband at the same free spectral range; reflection maps use
        the process and pump of `cfg_template`.
    selected : int, optional
        Index into `mode_set` of the mode carrying ``g_mb``.
    profile : {"inverse", "constant"}, optional
        Coupling profile across the modes.
    threads : int, optional
        Number of worker threads over columns; 0 uses all CPUs. The
        result does not depend on it.
    instability : float, optional
        Stokes conversion cells whose denominator lies within this
        fraction of the parametric threshold are marked invalid.

    Returns
    -------
    SpectrumMap

    """
    kind = MapKind(kind)
    mode_set = list(mode_set)
    if not mode_set:
        raise ParameterError("mode_set must not be empty")
    if not 0 <= selected < len(mode_set):
        raise ParameterError("selected mode index out of range")
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads < 0:
        raise ParameterError("threads must be non-negative")
    if kind.process is not None:
        fsr = rad_to_hz(abs(cfg_template.detuning))
        cfg_template = cfg_template.with_fsr(fsr, kind.process)
    fields = field_axis.values
    w = TWO_PI * freq_axis.values
    dtype = complex if kind.is_complex else float
    values = np.full((len(fields), len(w)), np.nan, dtype=dtype)
    valid = np.zeros((len(fields), len(w)), dtype=bool)

    def column(i):
        try:
            cfg, spectators = column_config(
                cfg_template,
                geom,
                mode_set,
                fields[i],
                selected,
                profile,
            )
            x, cond = steady_state_batch(w, cfg, spectators=spectators)
        except TransducerError as e:
            logger.warning(
                "column %d (H0 = %.6g T) poisoned: %s", i, fields[i], e
            )
            return
        if kind.is_complex:
            out = np.sqrt(cfg.microwave.kappa_ext) * x[:, 0] - 1.0
        else:
            out = np.abs(np.sqrt(cfg.optical.kappa_ext) * x[:, 2]) ** 2
        ok = (cond <= linalg.MAX_CONDITION) & np.isfinite(out)
        if kind.process is Process.STOKES:
            unstable = stokes_margin(w, cfg, on_resonance=False) < instability
            if np.any(unstable):
                logger.warning(
                    "column %d (H0 = %.6g T): %d cells near the Stokes "
                    "threshold",
                    i,
                    fields[i],
                    np.count_nonzero(unstable),
                )
            ok &= ~unstable
        values[i, ok] = out[ok]
        valid[i] = ok

    if threads == 1:
        for i in range(len(fields)):
            column(i)
    else:
        with concurrent.futures.ThreadPoolExecutor(threads) as pool:
            list(pool.map(column, range(len(fields))))
    result = SpectrumMap(field_axis, freq_axis, values, kind, valid)
    if result.poisoned:
        logger.warning(
            "%d of %d map cells poisoned", result.poisoned, values.size
        )
    logger.info(
        "%s map: %d fields x %d frequencies, %d modes",
        kind.value,
        len(fields),
        len(w),
        len(mode_set),
    )
    return result
