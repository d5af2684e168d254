"""Run configuration documents.

A configuration is an INI document read with :mod:`configparser`.
Sections group the parameters of each mode, the coupling, the pump
and the flake, followed by one optional block per command::

    [meta]
    schema_version = 1

    [microwave]
    frequency = 4.6 GHz
    kappa = 2 MHz
    gamma = 1 MHz

Every dimensioned value carries a unit suffix separated by white
space; a bare number is rejected. Values are stored in SI base units
(Hz, T, m, W) and converted to angular frequencies only when the core
parameter objects are built. Unknown sections and keys are rejected.

"""

import configparser
import dataclasses
import math
import re
from pathlib import Path
from typing import Any, Dict, NamedTuple, Optional, Tuple

from .core import MagnonParams, OscillatorParams, Process, TransducerConfig
from .errors import (
    ConfigError,
    MissingBlockError,
    ParameterError,
    RangeViolationError,
    UnitError,
    UnknownKeyError,
)
from .magnetostatics import MagnetostaticMode, MaterialGeometry
from .units import BASE_UNITS, UNITS, hz_to_rad, parse_quantity

__all__ = [
    "SCHEMA_VERSION",
    "Key",
    "SCHEMA",
    "REQUIRED_SECTIONS",
    "RunConfig",
    "parse_config",
    "load_config",
    "serialize_config",
]

SCHEMA_VERSION = 1


class Key(NamedTuple):
    """Schema entry of one configuration key.

    `kind` is a dimension of :data:`magtrans.units.UNITS`, or one of
    ``"int"``, ``"float"``, ``"choice"`` and ``"path"``.

    """

    kind: str
    required: bool = False
    default: Any = None
    low: Optional[float] = None
    positive: bool = False
    choices: Tuple[str, ...] = ()


def _positive(kind, required=True, default=None):
    return Key(kind, required, default, positive=True)


def _rate(required=True):
    return Key("frequency", required, low=0.0)


def _choice(choices, default=None):
    return Key("choice", default is None, default, choices=choices)


_FAMILY = _choice(("mssw", "bvmsw"), "mssw")
_INDEX = Key("int", False, 1, low=1)
_POINTS = Key("int", True, low=2)

SCHEMA = {
    "meta": {"schema_version": Key("int", True)},
    "microwave": {
        "frequency": _positive("frequency"),
        "kappa": _rate(),
        "gamma": _rate(),
    },
    "magnon": {
        "frequency": _positive("frequency", required=False),
        "gamma": _positive("frequency"),
    },
    "optical": {
        "frequency": _positive("frequency"),
        "kappa": _rate(),
        "gamma": _rate(),
        "wavelength": _positive("length", False, 1.55e-6),
    },
    "coupling": {
        "g_ma": _rate(),
        "g_mb": _rate(required=False),
        "g_mb_single": _rate(required=False),
        "pump_amplitude": Key("float", low=0.0),
        "profile": _choice(("inverse", "constant"), "inverse"),
    },
    "pump": {
        "fsr": _positive("frequency"),
        "process": _choice(("antistokes", "stokes"), "antistokes"),
    },
    "geometry": {
        "d": _positive("length"),
        "l1": _positive("length"),
        "l2": _positive("length"),
        "mu0_HM": _positive("field", False, 0.175),
        "gyro_over_2pi": _positive("gyro", False, 28e9),
        "wavevector": _choice(("axis", "norm"), "axis"),
    },
    "simulate": {
        "start": _positive("frequency"),
        "stop": _positive("frequency"),
        "points": _POINTS,
    },
    "map2d": {
        "field_start": _positive("field"),
        "field_stop": _positive("field"),
        "field_points": _POINTS,
        "freq_start": _positive("frequency"),
        "freq_stop": _positive("frequency"),
        "freq_points": _POINTS,
        "kind": _choice(
            ("reflection", "conversion_as", "conversion_s"), "reflection"
        ),
        "mssw_modes": Key("int", False, 1, low=0),
        "bvmsw_modes": Key("int", False, 0, low=0),
        "family": _FAMILY,
        "index": _INDEX,
    },
    "fsrscan": {
        "start": _positive("frequency"),
        "stop": _positive("frequency"),
        "points": _POINTS,
        "family": _FAMILY,
        "index": _INDEX,
    },
    "fit": {
        "mode": _choice(("resonance", "crossing")),
        "input": Key("path", True),
        "scale": _choice(("linear", "decibel"), "linear"),
        "coupling": _choice(("over", "under"), "over"),
        "field_min": _positive("field", required=False),
        "field_max": _positive("field", required=False),
        "freq_min": _positive("frequency", required=False),
        "freq_max": _positive("frequency", required=False),
    },
    "optimize": {
        "target": _choice(("triple", "kappa", "gmb")),
        "family": _FAMILY,
        "index": _INDEX,
        "fsr_min": _positive("frequency", required=False),
        "fsr_max": _positive("frequency", required=False),
        "field_min": _positive("field", required=False),
        "field_max": _positive("field", required=False),
        "kappa_start": _rate(required=False),
        "kappa_stop": _rate(required=False),
        "kappa_points": Key("int", low=2),
        "gmb_start": _rate(required=False),
        "gmb_stop": _rate(required=False),
        "gmb_points": Key("int", low=2),
    },
    "dispersion": {
        "field": _positive("field"),
        "family": _choice(("mssw", "bvmsw", "both"), "both"),
        "max_index": Key("int", True, low=1),
    },
    "report": {
        "eta": Key("float", low=0.0),
        "eta_int": Key("float", positive=True),
        "finesse": Key("float", positive=True),
        "power": Key("power", low=0.0),
    },
}

REQUIRED_SECTIONS = (
    "meta",
    "microwave",
    "magnon",
    "optical",
    "coupling",
    "pump",
)

# (section, lower key, upper key) pairs that must be strictly ordered
_ORDERED = (
    ("simulate", "start", "stop"),
    ("map2d", "field_start", "field_stop"),
    ("map2d", "freq_start", "freq_stop"),
    ("fsrscan", "start", "stop"),
    ("fit", "field_min", "field_max"),
    ("fit", "freq_min", "freq_max"),
    ("optimize", "fsr_min", "fsr_max"),
    ("optimize", "field_min", "field_max"),
    ("optimize", "kappa_start", "kappa_stop"),
    ("optimize", "gmb_start", "gmb_stop"),
)

# field names of the parameter objects, by config key
_MODE_KEYS = {
    "omega": "frequency",
    "omega_m": "frequency",
    "kappa_ext": "kappa",
    "total": "kappa",
    "gamma_int": "gamma",
    "gamma_m": "gamma",
}
_CHAIN_KEYS = {
    "pump_omega": "pump.fsr",
    "g_ma": "coupling.g_ma",
    "g_mb": "coupling.g_mb",
    "g_mb_single": "coupling.g_mb_single",
    "pump_amplitude": "coupling.pump_amplitude",
}

_SECTION_RE = re.compile(r"\[(?P<name>.+)\]")
_KEY_RE = re.compile(r"(?P<key>[^=:\s][^=:]*?)\s*[=:]")


def _key_lines(text):
    lines = {}
    section = None
    for n, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped[0] in "#;" or raw[0].isspace():
            continue
        m = _SECTION_RE.match(stripped)
        if m:
            section = m.group("name")
            lines.setdefault((section, None), n)
            continue
        m = _KEY_RE.match(raw)
        if m and section is not None:
            lines.setdefault((section, m.group("key")), n)
    return lines


def _convert(spec, text, name, line):
    text = text.strip()
    if spec.kind in UNITS:
        parts = text.split()
        if len(parts) != 2 or parts[1] not in UNITS[spec.kind]:
            raise UnitError(
                "'{}' needs a unit suffix, one of {}".format(
                    text, ", ".join(UNITS[spec.kind])
                ),
                name,
                line,
            )
        try:
            value = parse_quantity(text, spec.kind)
        except ValueError as e:
            raise ConfigError(str(e), name, line) from None
    elif spec.kind == "int":
        try:
            value = int(text)
        except ValueError:
            raise ConfigError(
                "'{}' is not an integer".format(text), name, line
            ) from None
    elif spec.kind == "float":
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(
                "'{}' is not a number".format(text), name, line
            ) from None
        if not math.isfinite(value):
            raise ConfigError("value must be finite", name, line)
    elif spec.kind == "choice":
        if text not in spec.choices:
            raise RangeViolationError(
                "'{}' is not one of {}".format(text, ", ".join(spec.choices)),
                name,
                line,
            )
        value = text
    else:
        if not text:
            raise ConfigError("empty path", name, line)
        value = text
    if spec.low is not None and not value >= spec.low:
        raise RangeViolationError(
            "value must be at least {:g}".format(spec.low), name, line
        )
    if spec.positive and not value > 0:
        raise RangeViolationError("value must be positive", name, line)
    return value


def _format(spec, value):
    if spec.kind in UNITS:
        return "{!r} {}".format(float(value), BASE_UNITS[spec.kind])
    if spec.kind == "float":
        return repr(float(value))
    return str(value)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    A validated configuration document.

    Attributes
    ----------
    sections : dict of str to dict of str to value
        Parsed values per section, dimensioned values in SI base units.
    lines : dict
        1-based line of each ``(section, key)`` and ``(section, None)``
        in the source document. Not part of equality.
    source : Path, optional
        File the document was read from. Relative paths in the
        document are resolved against its directory.

    """

    sections: Dict[str, Dict[str, Any]]
    lines: Dict[Tuple[str, Optional[str]], int] = dataclasses.field(
        default_factory=dict, compare=False, repr=False
    )
    source: Optional[Path] = dataclasses.field(default=None, compare=False)

    def has(self, section):
        return section in self.sections

    def line(self, section, key=None):
        return self.lines.get((section, key))

    def block(self, section):
        """Values of a section, raising if the section is absent."""
        if section not in self.sections:
            raise MissingBlockError(
                "[{}] block is required".format(section), key=section
            )
        return self.sections[section]

    def value(self, section, key):
        """A single value, raising if it is absent."""
        block = self.block(section)
        if key not in block:
            raise MissingBlockError(
                "key is required",
                key="{}.{}".format(section, key),
                line=self.line(section),
            )
        return block[key]

    def resolve_path(self, path):
        path = Path(path)
        if self.source is not None and not path.is_absolute():
            return Path(self.source).parent / path
        return path

    def _range_error(self, error, section, aliases=None):
        # parameter objects name the offending field first
        field = str(error).split(" ", 1)[0]
        key = (aliases or {}).get(field, field)
        if "." in key:
            section, key = key.split(".")
        if key not in self.sections.get(section, {}):
            return RangeViolationError(
                str(error), key=section, line=self.line(section)
            )
        return RangeViolationError(
            str(error),
            key="{}.{}".format(section, key),
            line=self.line(section, key) or self.line(section),
        )

    def _checked(self, section, build, *args, aliases=_MODE_KEYS):
        try:
            return build(*args)
        except ParameterError as e:
            raise self._range_error(e, section, aliases) from None

    def transducer(self):
        """Build the transducer parameters, converting Hz to rad/s."""
        mw = self.block("microwave")
        magnon = self.block("magnon")
        optical = self.block("optical")
        coupling = self.block("coupling")
        fsr = self.value("pump", "fsr")
        g_mb = coupling.get("g_mb")
        single = coupling.get("g_mb_single")
        beta = coupling.get("pump_amplitude")
        pumped = single is not None and beta is not None
        if g_mb is None and not pumped:
            raise MissingBlockError(
                "g_mb, or both g_mb_single and pump_amplitude, is required",
                key="coupling.g_mb",
                line=self.line("coupling"),
            )
        process = Process(self.value("pump", "process"))
        microwave = self._checked(
            "microwave",
            OscillatorParams.from_hz,
            mw["frequency"],
            mw["kappa"],
            mw["gamma"],
        )
        optical = self._checked(
            "optical",
            OscillatorParams.from_hz,
            optical["frequency"],
            optical["kappa"],
            optical["gamma"],
        )
        magnon = self._checked(
            "magnon",
            MagnonParams.from_hz,
            magnon.get("frequency", fsr),
            magnon["gamma"],
        )
        return self._checked(
            "coupling",
            TransducerConfig,
            microwave,
            magnon,
            optical,
            optical.omega - process.detuning_sign * hz_to_rad(fsr),
            hz_to_rad(coupling["g_ma"]),
            None if g_mb is None else hz_to_rad(g_mb),
            hz_to_rad(single) if pumped else None,
            beta if pumped else None,
            process,
            aliases=_CHAIN_KEYS,
        )

    def geometry(self):
        """Build the flake geometry."""
        geom = self.block("geometry")
        try:
            return MaterialGeometry(
                d=geom["d"],
                l1=geom["l1"],
                l2=geom["l2"],
                mu0_HM=geom["mu0_HM"],
                gyro_over_2pi=geom["gyro_over_2pi"],
                wavevector=geom["wavevector"],
            )
        except ParameterError as e:
            raise self._range_error(e, "geometry") from None

    def mode(self, section):
        """Magnetostatic mode selected by ``family`` and ``index``."""
        block = self.block(section)
        if block["family"] == "mssw":
            return MagnetostaticMode.mssw(block["index"])
        return MagnetostaticMode.bvmsw(block["index"])


def parse_config(text, source=None):
    """
    Parse and validate a configuration document.

    Parameters
    ----------
    text : str
        INI document.
    source : path-like, optional
        File the document came from.

    Returns
    -------
    RunConfig

    Raises
    ------
    ConfigError
        On any syntax, unit, schema or range violation. The error names
        the offending key and its line.

    """
    lines = _key_lines(text)
    parser = configparser.ConfigParser(
        interpolation=None,
        strict=True,
        inline_comment_prefixes=("#", ";"),
        empty_lines_in_values=False,
    )
    parser.optionxform = str
    try:
        parser.read_string(text, source="<config>")
    except configparser.DuplicateSectionError as e:
        raise ConfigError(
            "duplicate section", key=e.section, line=e.lineno
        ) from None
    except configparser.DuplicateOptionError as e:
        raise ConfigError(
            "duplicate key",
            key="{}.{}".format(e.section, e.option),
            line=e.lineno,
        ) from None
    except configparser.MissingSectionHeaderError as e:
        raise ConfigError("key outside of a section", line=e.lineno) from None
    except configparser.ParsingError as e:
        raise ConfigError("malformed line", line=e.errors[0][0]) from None
    if parser.defaults():
        raise UnknownKeyError(
            "[DEFAULT] section is not supported",
            key=parser.default_section,
            line=lines.get((parser.default_section, None)),
        )

    sections = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise UnknownKeyError(
                "unknown section", key=section, line=lines.get((section, None))
            )
        schema = SCHEMA[section]
        values = {}
        for key, text_value in parser.items(section):
            name = "{}.{}".format(section, key)
            line = lines.get((section, key))
            if key not in schema:
                raise UnknownKeyError("unknown key", key=name, line=line)
            values[key] = _convert(schema[key], text_value, name, line)
        for key, spec in schema.items():
            if key in values:
                continue
            if spec.required:
                raise MissingBlockError(
                    "key is required",
                    key="{}.{}".format(section, key),
                    line=lines.get((section, None)),
                )
            if spec.default is not None:
                values[key] = spec.default
        sections[section] = values
    for section in REQUIRED_SECTIONS:
        if section not in sections:
            raise MissingBlockError(
                "[{}] block is required".format(section), key=section
            )
    version = sections["meta"]["schema_version"]
    if version != SCHEMA_VERSION:
        raise ConfigError(
            "unsupported schema_version {}".format(version),
            key="meta.schema_version",
            line=lines.get(("meta", "schema_version")),
        )
    for section, low, high in _ORDERED:
        block = sections.get(section, {})
        if low in block and high in block and not block[high] > block[low]:
            raise RangeViolationError(
                "must exceed {}".format(low),
                key="{}.{}".format(section, high),
                line=lines.get((section, high)),
            )

    run = RunConfig(
        sections,
        lines,
        None if source is None else Path(source),
    )
    run.transducer()
    if run.has("geometry"):
        run.geometry()
    return run


def load_config(path):
    """Read and parse a configuration file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("cannot read {}: {}".format(path, e)) from None
    return parse_config(text, source=path)


def serialize_config(run):
    """
    Write a configuration in canonical form.

    Sections and keys follow schema order, dimensioned values are
    written in SI base units with the shortest round-tripping decimal,
    and defaults are written out explicitly.

    """
    out = []
    for section, schema in SCHEMA.items():
        if section not in run.sections:
            continue
        block = run.sections[section]
        out.append("[{}]".format(section))
        for key, spec in schema.items():
            if key in block:
                out.append("{} = {}".format(key, _format(spec, block[key])))
        out.append("")
    return "\n".join(out)
