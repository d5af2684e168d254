from pathlib import Path

import numpy as np
import pytest

from magtrans.config import (
    SCHEMA,
    load_config,
    parse_config,
    serialize_config,
)
from magtrans.core import Process
from magtrans.errors import (
    ConfigError,
    MissingBlockError,
    RangeViolationError,
    UnitError,
    UnknownKeyError,
)
from magtrans.units import BASE_UNITS, TWO_PI, UNITS

BUNDLED = Path(__file__).parents[1] / "configs" / "planar.ini"

MINIMAL = """\
[meta]
schema_version = 1

[microwave]
frequency = 4.6 GHz
kappa = 10 MHz
gamma = 5 MHz

[magnon]
gamma = 1 MHz

[optical]
frequency = 193414.489 GHz
kappa = 6.56 MHz  # coated flake
gamma = 25.14 MHz

[coupling]
g_ma = 30 MHz
g_mb = 8 kHz

[pump]
fsr = 5.45 GHz
process = stokes
"""


def with_line(text, old, new):
    assert old in text
    return text.replace(old, new, 1)


def test_minimal():
    run = parse_config(MINIMAL)
    assert run.value("microwave", "kappa") == 10e6
    assert run.value("optical", "wavelength") == 1.55e-6
    assert run.value("coupling", "profile") == "inverse"
    cfg = run.transducer()
    assert cfg.optical.kappa_ext == pytest.approx(TWO_PI * 6.56e6)
    assert cfg.process is Process.STOKES
    assert cfg.is_triple_resonant()


def test_explicit_magnon_frequency():
    text = with_line(
        MINIMAL, "gamma = 1 MHz", "gamma = 1 MHz\nfrequency = 5 GHz"
    )
    cfg = parse_config(text).transducer()
    assert cfg.magnon.omega_m == pytest.approx(TWO_PI * 5e9)
    assert not cfg.is_triple_resonant()


def test_pumped_coupling():
    text = with_line(
        MINIMAL,
        "g_mb = 8 kHz",
        "g_mb_single = 10 Hz\npump_amplitude = 800",
    )
    cfg = parse_config(text).transducer()
    assert cfg.g_mb == pytest.approx(TWO_PI * 8e3)
    assert cfg.pump_amplitude == 800.0


def test_missing_coupling():
    with pytest.raises(MissingBlockError, match="coupling.g_mb"):
        parse_config(with_line(MINIMAL, "g_mb = 8 kHz", ""))


def test_bundled_config():
    run = load_config(BUNDLED)
    assert run.source == BUNDLED
    assert run.value("map2d", "field_start") == pytest.approx(0.07)
    assert run.geometry().d == pytest.approx(0.5e-3)
    assert run.mode("fsrscan").label == "MSSW(1,1)"
    assert run.resolve_path("trace.csv") == BUNDLED.parent / "trace.csv"


def test_round_trip():
    run = load_config(BUNDLED)
    text = serialize_config(run)
    again = parse_config(text)
    assert again == run
    assert serialize_config(again) == text


def test_unit_suffix_is_required():
    text = with_line(MINIMAL, "kappa = 6.56 MHz", "kappa = 6.56")
    with pytest.raises(UnitError) as info:
        parse_config(text)
    assert info.value.key == "optical.kappa"
    assert info.value.line == 14


def test_wrong_dimension():
    text = with_line(MINIMAL, "fsr = 5.45 GHz", "fsr = 5.45 mT")
    with pytest.raises(UnitError, match="pump.fsr"):
        parse_config(text)


def test_negative_rate():
    text = with_line(MINIMAL, "gamma = 1 MHz", "gamma = -1 MHz")
    with pytest.raises(RangeViolationError) as info:
        parse_config(text)
    assert info.value.key == "magnon.gamma"
    assert "line 10" in str(info.value)


def test_zero_magnon_damping():
    text = with_line(MINIMAL, "gamma = 1 MHz", "gamma = 0 MHz")
    with pytest.raises(RangeViolationError) as info:
        parse_config(text)
    assert info.value.key == "magnon.gamma"
    assert info.value.line == 10


def test_inconsistent_pumped_coupling():
    text = with_line(
        MINIMAL,
        "g_mb = 8 kHz",
        "g_mb = 8 kHz\ng_mb_single = 1 Hz\npump_amplitude = 3",
    )
    with pytest.raises(RangeViolationError) as info:
        parse_config(text)
    assert info.value.key == "coupling.g_mb"
    assert info.value.line == 19


def test_unknown_key():
    text = with_line(
        MINIMAL, "g_ma = 30 MHz", "g_ma = 30 MHz\ng_ab = 1 MHz"
    )
    with pytest.raises(UnknownKeyError) as info:
        parse_config(text)
    assert info.value.key == "coupling.g_ab"
    assert info.value.line == 19


def test_unknown_section():
    with pytest.raises(UnknownKeyError, match="cavity"):
        parse_config(MINIMAL + "\n[cavity]\nq = 1\n")


def test_duplicate_key():
    text = with_line(
        MINIMAL, "g_ma = 30 MHz", "g_ma = 30 MHz\ng_ma = 3 MHz"
    )
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config(text)


def test_missing_section():
    text = MINIMAL.replace("[pump]\nfsr = 5.45 GHz\nprocess = stokes\n", "")
    with pytest.raises(MissingBlockError, match="pump"):
        parse_config(text)


@pytest.mark.parametrize(
    "old,new",
    [
        ("schema_version = 1", "schema_version = 2"),
        ("schema_version = 1", "schema_version = one"),
        ("kappa = 10 MHz", "kappa = ten MHz"),
    ],
)
def test_malformed_values(old, new):
    with pytest.raises(ConfigError):
        parse_config(with_line(MINIMAL, old, new))


def test_bad_choice():
    text = with_line(MINIMAL, "process = stokes", "process = raman")
    with pytest.raises(RangeViolationError, match="pump.process"):
        parse_config(text)


def test_reversed_range():
    text = MINIMAL + "[simulate]\nstart = 6 GHz\nstop = 5 GHz\npoints = 3\n"
    with pytest.raises(RangeViolationError, match="simulate.stop"):
        parse_config(text)


def test_missing_block():
    run = parse_config(MINIMAL)
    with pytest.raises(MissingBlockError):
        run.block("map2d")
    with pytest.raises(MissingBlockError):
        run.geometry()


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.ini")


def _dimensioned_keys(run):
    for section, block in run.sections.items():
        for key in block:
            if SCHEMA[section][key].kind in UNITS:
                yield section, key


def test_random_units_round_trip():
    rng = np.random.default_rng(0)
    run = load_config(BUNDLED)
    for _ in range(50):
        lines = []
        for section, schema in SCHEMA.items():
            if section not in run.sections:
                continue
            lines.append("[{}]".format(section))
            for key, value in run.sections[section].items():
                kind = schema[key].kind
                if kind in UNITS:
                    unit = rng.choice(list(UNITS[kind]))
                    scaled = value / UNITS[kind][unit]
                    lines.append("{} = {!r} {}".format(key, scaled, unit))
                else:
                    lines.append("{} = {}".format(key, value))
        parsed = parse_config("\n".join(lines))
        for section, key in _dimensioned_keys(run):
            assert parsed.sections[section][key] == pytest.approx(
                run.sections[section][key], rel=1e-12
            )
        assert parse_config(serialize_config(parsed)) == parsed


def test_random_suffix_removal():
    rng = np.random.default_rng(1)
    run = load_config(BUNDLED)
    text = serialize_config(run)
    keys = list(_dimensioned_keys(run))
    for k in rng.choice(len(keys), size=20, replace=False):
        section, key = keys[k]
        line = [
            ln
            for ln in text.splitlines()
            if ln.startswith(key + " = ")
            and ln.endswith(BASE_UNITS[SCHEMA[section][key].kind])
        ]
        assert line
        bare = line[0].rsplit(" ", 1)[0]
        broken = text.replace(line[0], bare, 1)
        with pytest.raises(UnitError):
            parse_config(broken)
