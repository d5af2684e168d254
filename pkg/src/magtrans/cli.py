"""Command line interface.

Every command reads one configuration document and writes its results
as text files into the output directory::

    magtrans map2d --config planar.ini --out results/

Logging goes to standard error. A failing command removes the files it
has written and exits with the code of its error class:

====  ==========================================
code  error
====  ==========================================
0     success
1     unexpected internal error
2     configuration (:class:`ConfigError`)
3     physical parameters (:class:`ParameterError`)
4     numerics (:class:`NumericalError`)
5     field out of band (:class:`OutOfBandError`)
6     fitting (:class:`FitError`)
7     artifact I/O (:class:`ArtifactError`)
====  ==========================================

"""

import argparse
import logging
import os
from pathlib import Path

import numpy as np
from more_itertools import zip_equal

from . import __version__
from .config import load_config
from .core import (
    Process,
    cavity_figures,
    efficiency,
    eta_internal,
    fsr_from_finesse,
    infer_xi_a,
    photon_flux,
    reflection_s11,
)
from .errors import (
    ArtifactError,
    MissingBlockError,
    ParameterError,
    RangeViolationError,
    TransducerError,
)
from .fit import fit_avoided_crossing, fit_reflection_resonance
from .magnetostatics import Family, MagnetostaticMode, mode_catalog
from .serialize import (
    SCHEMA_VERSION,
    format_float,
    mask_path,
    parse_map,
    read_trace,
    serialize_map,
    write_fit,
    write_report,
    write_scan,
    write_table,
)
from .sweep import (
    MapKind,
    SweepAxis,
    fsr_scan,
    gmb_scan,
    map_2d,
    optimize_kappa_a,
    optimize_triple_resonance,
    peak_efficiency,
)
from .units import TWO_PI, rad_to_hz

__all__ = [
    "COMMANDS",
    "OUT_ENV",
    "Artifacts",
    "run_command",
    "main",
]

logger = logging.getLogger(__name__)

OUT_ENV = "MAGTRANS_OUT"


class Artifacts:
    """Files written by one command, removed again if it fails."""

    def __init__(self, out_dir):
        self.out_dir = Path(out_dir)
        self.paths = []

    def path(self, name):
        path = self.out_dir / name
        self.add(path)
        return path

    def add(self, path):
        self.paths.append(Path(path))

    def __enter__(self):
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ArtifactError(
                "cannot create {}: {}".format(self.out_dir, e)
            ) from None
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            for path in self.paths:
                if path.exists():
                    logger.info("removing partial output %s", path)
                    path.unlink()
        return False


def _header():
    return ["schema_version: {}".format(SCHEMA_VERSION)]


def _axis(block, prefix, name, unit):
    return SweepAxis(
        name,
        block[prefix + "start"],
        block[prefix + "stop"],
        block[prefix + "points"],
        unit,
    )


def _simulate(run, artifacts, threads):
    block = run.block("simulate")
    cfg = run.transducer()
    fsr = run.value("pump", "fsr")
    freq = _axis(block, "", "frequency", "Hz").values
    w = TWO_PI * freq
    eta = {
        process: efficiency(w, cfg.with_fsr(fsr, process), on_resonance=False)
        for process in Process
    }
    if cfg.microwave.kappa_ext > 0 and cfg.optical.kappa_ext > 0:
        eta_int = eta_internal(eta[cfg.process], cfg).eta_int
    else:
        eta_int = np.full(len(freq), np.nan)
    s11 = np.abs(reflection_s11(w, cfg))
    rows = [
        [format_float(v) for v in row]
        for row in zip_equal(
            freq,
            eta[Process.ANTI_STOKES],
            eta[Process.STOKES],
            eta_int,
            s11,
        )
    ]
    write_table(
        artifacts.path("simulate.csv"),
        ["frequency", "eta_as", "eta_s", "eta_int", "s11_abs"],
        rows,
        _header() + ["process: {}".format(cfg.process.value)],
    )


def _map_modes(run):
    block = run.block("map2d")
    modes = [
        MagnetostaticMode.mssw(n) for n in range(1, block["mssw_modes"] + 1)
    ]
    modes += [
        MagnetostaticMode.bvmsw(n) for n in range(1, block["bvmsw_modes"] + 1)
    ]
    selected = run.mode("map2d")
    if selected not in modes:
        raise RangeViolationError(
            "selected mode {} is not among the mapped modes".format(
                selected.label
            ),
            key="map2d.index",
            line=run.line("map2d", "index") or run.line("map2d"),
        )
    return modes, modes.index(selected)


def _map2d(run, artifacts, threads):
    block = run.block("map2d")
    kind = MapKind(block["kind"])
    modes, selected = _map_modes(run)
    smap = map_2d(
        run.transducer(),
        run.geometry(),
        modes,
        _axis(block, "field_", "field", "T"),
        _axis(block, "freq_", "frequency", "Hz"),
        kind,
        selected=selected,
        profile=run.value("coupling", "profile"),
        threads=threads,
    )
    path = artifacts.path("map2d.csv")
    artifacts.add(mask_path(path))
    serialize_map(smap, path)


def _fsrscan(run, artifacts, threads):
    block = run.block("fsrscan")
    scan = fsr_scan(
        run.transducer(),
        run.geometry(),
        run.mode("fsrscan"),
        _axis(block, "", "fsr", "Hz"),
    )
    write_scan(scan, artifacts.path("fsrscan.csv"))


def _window(block, low, high):
    if low in block and high in block:
        return (block[low], block[high])
    return None


def _fit(run, artifacts, threads):
    block = run.block("fit")
    source = run.resolve_path(block["input"])
    if block["mode"] == "resonance":
        trace = read_trace(source, block["scale"])
        result = fit_reflection_resonance(trace, coupling=block["coupling"])
    else:
        result = fit_avoided_crossing(
            parse_map(source),
            field_window=_window(block, "field_min", "field_max"),
            freq_window=_window(block, "freq_min", "freq_max"),
        )
    write_fit(
        result,
        artifacts.path("fit.txt"),
        artifacts.path("fit_residuals.csv"),
    )


def _optimize(run, artifacts, threads):
    block = run.block("optimize")
    cfg = run.transducer()
    target = block["target"]
    entries = [("target", target), ("process", cfg.process.value)]
    if target == "triple":
        best = optimize_triple_resonance(
            cfg,
            run.geometry(),
            run.mode("optimize"),
            (
                run.value("optimize", "fsr_min"),
                run.value("optimize", "fsr_max"),
            ),
            (
                run.value("optimize", "field_min"),
                run.value("optimize", "field_max"),
            ),
        )
        entries += [
            ("best_fsr", best.best_fsr),
            ("best_field", best.best_field),
            ("best_eta", best.best_eta),
            ("mismatch", best.mismatch),
            ("fsr_on_boundary", bool(best.on_boundary[0])),
            ("field_on_boundary", bool(best.on_boundary[1])),
            ("evaluations", best.evaluations),
        ]
    elif target == "kappa":
        axis = SweepAxis(
            "kappa_a",
            run.value("optimize", "kappa_start"),
            run.value("optimize", "kappa_stop"),
            run.value("optimize", "kappa_points"),
            "Hz",
        )
        best = optimize_kappa_a(cfg, axis)
        entries += [
            ("best_kappa_a", rad_to_hz(best.best_kappa)),
            ("best_eta", best.best_eta),
            ("unimodal", bool(best.unimodal)),
        ]
        write_scan(best.curve, artifacts.path("optimize_curve.csv"))
    else:
        axis = SweepAxis(
            "g_mb",
            run.value("optimize", "gmb_start"),
            run.value("optimize", "gmb_stop"),
            run.value("optimize", "gmb_points"),
            "Hz",
        )
        curve_as, curve_s = gmb_scan(cfg, axis)
        gap = curve_as.extra["relative_gap"]
        entries += [
            ("largest_relative_gap", float(np.nanmax(np.abs(gap)))),
            ("stokes_flagged", int(np.count_nonzero(~curve_s.valid))),
        ]
        write_scan(curve_as, artifacts.path("optimize_antistokes.csv"))
        write_scan(curve_s, artifacts.path("optimize_stokes.csv"))
    write_report(artifacts.path("optimize.txt"), entries)


def _dispersion(run, artifacts, threads):
    block = run.block("dispersion")
    geom = run.geometry()
    if block["family"] == "both":
        families = list(Family)
    else:
        families = [Family(block["family"])]
    rows = []
    for family in families:
        for mode in mode_catalog(
            geom, block["field"], family, block["max_index"]
        ):
            rows.append(
                [
                    family.value,
                    mode.n1,
                    mode.n2,
                    format_float(mode.k),
                    format_float(rad_to_hz(mode.omega)),
                ]
            )
    write_table(
        artifacts.path("dispersion.csv"),
        ["family", "n1", "n2", "k", "frequency"],
        rows,
        _header() + ["field: {}".format(format_float(block["field"]))],
    )


def _report(run, artifacts, threads):
    cfg = run.transducer()
    fsr = run.value("pump", "fsr")
    figures = cavity_figures(
        fsr, cfg.optical, run.value("optical", "wavelength")
    )
    peak = peak_efficiency(cfg, on_resonance=False)
    entries = [
        ("process", cfg.process.value),
        ("triple_resonant", cfg.is_triple_resonant()),
        ("finesse", figures.finesse),
        ("quality", figures.quality),
        ("xi_a", cfg.microwave.extraction),
        ("xi_b", cfg.optical.extraction),
        ("peak_eta", peak.eta),
        ("peak_frequency", rad_to_hz(peak.omega)),
    ]
    if cfg.microwave.kappa_ext > 0 and cfg.optical.kappa_ext > 0:
        entries.append(("peak_eta_int", eta_internal(peak.eta, cfg).eta_int))
    block = run.sections.get("report", {})
    if "eta" in block or "eta_int" in block:
        entries.append(
            (
                "inferred_xi_a",
                infer_xi_a(
                    run.value("report", "eta"),
                    run.value("report", "eta_int"),
                    cfg.optical.extraction,
                ),
            )
        )
    if "finesse" in block:
        fsr_implied = fsr_from_finesse(block["finesse"], cfg.optical)
        entries.append(("fsr_from_finesse", fsr_implied))
    if "power" in block:
        entries.append(
            ("pump_photon_flux", photon_flux(block["power"], cfg.pump_omega))
        )
    write_report(artifacts.path("report.txt"), entries)


COMMANDS = {
    "simulate": _simulate,
    "map2d": _map2d,
    "fsrscan": _fsrscan,
    "fit": _fit,
    "optimize": _optimize,
    "dispersion": _dispersion,
    "report": _report,
}


def run_command(run, command, out_dir, threads=1):
    """
    Run one command and write its artifacts.

    Parameters
    ----------
    run : RunConfig
        Validated configuration.
    command : str
        One of :data:`COMMANDS`.
    out_dir : path-like
        Directory receiving the artifacts; created if missing.
    threads : int, optional
        Worker threads for map evaluation; 0 uses all CPUs.

    Returns
    -------
    list of Path
        Artifacts written.

    Raises
    ------
    TransducerError
        On any failure, after removing the artifacts written so far.

    """
    if command not in COMMANDS:
        raise ParameterError("unknown command {!r}".format(command))
    if command not in ("simulate", "report") and not run.has(command):
        raise MissingBlockError(
            "[{}] block is required by the {} command".format(
                command, command
            ),
            key=command,
        )
    if threads < 0:
        raise ParameterError("threads must be non-negative")
    logger.info("running %s", command)
    with Artifacts(out_dir) as artifacts:
        COMMANDS[command](run, artifacts, threads)
    written = [path for path in artifacts.paths if path.exists()]
    for path in written:
        logger.info("wrote %s", path)
    return written


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", required=True, type=Path, help="configuration document"
    )
    common.add_argument(
        "--out",
        type=Path,
        default=None,
        help="output directory (default: ${} or the current directory)".format(
            OUT_ENV
        ),
    )
    common.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker threads for maps, 0 for all CPUs",
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument(
        "--quiet", action="store_true", help="log warnings and errors only"
    )
    verbosity.add_argument(
        "--verbose", action="store_true", help="log debugging detail"
    )

    parser = argparse.ArgumentParser(
        prog="magtrans",
        description="Magnon-mediated microwave-to-optics conversion.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True
    helps = {
        "simulate": "efficiency and reflection spectra",
        "map2d": "reflection or conversion map over field and frequency",
        "fsrscan": "peak efficiency across free spectral ranges",
        "fit": "fit a reflection trace or an avoided crossing",
        "optimize": "optimize FSR and field, kappa_a, or scan g_mb",
        "dispersion": "catalog of magnetostatic modes",
        "report": "cavity figures and efficiency bookkeeping",
    }
    for name in COMMANDS:
        commands.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv=None):
    """Entry point of the ``magtrans`` command; returns the exit code."""
    args = _parser().parse_args(argv)
    if args.quiet:
        level = logging.WARNING
    elif args.verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    out_dir = args.out
    if out_dir is None:
        out_dir = Path(os.environ.get(OUT_ENV, "."))
    try:
        run = load_config(args.config)
        run_command(run, args.command, out_dir, threads=args.threads)
    except TransducerError as e:
        logger.error("%s: %s: %s", args.command, type(e).__name__, e)
        return e.exit_code
    except Exception:
        logger.exception("%s: unexpected error", args.command)
        return 1
    return 0
