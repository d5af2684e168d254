import numpy as np
import pytest

from magtrans.errors import OutOfBandError, ParameterError
from magtrans.magnetostatics import (
    Family,
    MagnetostaticMode,
    MaterialGeometry,
    bvmsw_frequency,
    coupling_profile,
    dispersion,
    field_for_frequency,
    mode_catalog,
    mode_frequency,
    mssw_frequency,
    resolve_mode,
    standing_wave_k,
)
from magtrans.units import TWO_PI

GEOM = MaterialGeometry(d=0.5e-3, l1=3e-3, l2=3e-3)


def test_shared_long_wavelength_limit():
    for H0 in (0.05, 0.1, 0.3):
        w0 = GEOM.omega_0(H0)
        kittel = np.sqrt(w0 * (w0 + GEOM.omega_M))
        assert mssw_frequency(0.0, H0, GEOM) == pytest.approx(kittel)
        assert bvmsw_frequency(0.0, H0, GEOM) == pytest.approx(kittel)
        np.testing.assert_allclose(
            mssw_frequency(1e-6, H0, GEOM),
            bvmsw_frequency(1e-6, H0, GEOM),
            rtol=1e-9,
        )


def test_surface_wave_short_wavelength_limit():
    H0 = 0.1
    k = 50 / GEOM.d
    expected = GEOM.omega_0(H0) + 0.5 * GEOM.omega_M
    np.testing.assert_allclose(
        mssw_frequency(k, H0, GEOM), expected, rtol=1e-6
    )


def test_volume_wave_short_wavelength_limit():
    H0 = 0.1
    w0 = GEOM.omega_0(H0)
    wm = GEOM.omega_M
    np.testing.assert_allclose(
        bvmsw_frequency(50 / GEOM.d, H0, GEOM),
        w0 * np.sqrt(1 + wm / (50 * w0)),
        rtol=1e-12,
    )
    np.testing.assert_allclose(
        bvmsw_frequency(1e6 / GEOM.d, H0, GEOM), w0, rtol=1e-5
    )


def test_dispersion_is_monotone_in_wavevector():
    # exp(-2 kd) underflows the spacing of the MSSW branch past kd ~ 15
    k = np.linspace(1e-3, 10, 1000) / GEOM.d
    assert np.all(np.diff(mssw_frequency(k, 0.1, GEOM)) > 0)
    assert np.all(np.diff(bvmsw_frequency(k, 0.1, GEOM)) < 0)


def test_dispersion_is_monotone_in_field():
    H0 = np.linspace(0.01, 1.0, 500)
    for mode in (MagnetostaticMode.mssw(2), MagnetostaticMode.bvmsw(3)):
        assert np.all(np.diff(mode_frequency(mode, H0, GEOM)) > 0)


def test_volume_wave_value():
    # an independent evaluation of the volume-wave dispersion
    H0 = 0.15
    gamma = 28e9
    w0 = 2 * np.pi * gamma * H0
    wm = 2 * np.pi * gamma * 0.175
    kd = np.pi / 3e-3 * 0.5e-3
    expected = np.sqrt(w0 * (w0 + wm * (1 - np.exp(-kd)) / kd))
    mode = MagnetostaticMode.bvmsw(1)
    assert mode_frequency(mode, H0, GEOM) == pytest.approx(expected)


def test_dispersion_selector():
    assert dispersion("mssw") is mssw_frequency
    assert dispersion(Family.BVMSW) is bvmsw_frequency
    with pytest.raises(ValueError):
        dispersion("exchange")


def test_vectorized_dispersion():
    k = np.array([1e2, 1e3, 1e4])
    out = mssw_frequency(k, 0.1, GEOM)
    assert out.shape == (3,)
    np.testing.assert_array_equal(
        out, [mssw_frequency(x, 0.1, GEOM) for x in k]
    )


@pytest.mark.parametrize("k,H0", [(-1.0, 0.1), (1.0, 0.0), (np.nan, 0.1)])
def test_invalid_dispersion_arguments(k, H0):
    with pytest.raises(ParameterError):
        mssw_frequency(k, H0, GEOM)


class TestStandingWaves:
    def test_axis_wavevector(self):
        geom = MaterialGeometry(d=0.5e-3, l1=2e-3, l2=4e-3)
        assert standing_wave_k(
            MagnetostaticMode.mssw(3), geom
        ) == pytest.approx(3 * np.pi / 4e-3)
        assert standing_wave_k(
            MagnetostaticMode.bvmsw(3), geom
        ) == pytest.approx(3 * np.pi / 2e-3)

    def test_norm_wavevector(self):
        geom = MaterialGeometry(
            d=0.5e-3, l1=2e-3, l2=4e-3, wavevector="norm"
        )
        assert standing_wave_k(
            MagnetostaticMode.mssw(2), geom
        ) == pytest.approx(np.hypot(np.pi / 2e-3, 2 * np.pi / 4e-3))

    @pytest.mark.parametrize(
        "family,n1,n2",
        [("mssw", 2, 1), ("bvmsw", 1, 2), ("mssw", 1, 0), ("bvmsw", 1.5, 1)],
    )
    def test_invalid_mode_numbers(self, family, n1, n2):
        with pytest.raises(ParameterError):
            MagnetostaticMode(family, n1, n2)

    def test_labels(self):
        assert MagnetostaticMode.mssw(2).label == "MSSW(1,2)"
        assert MagnetostaticMode.bvmsw(4).index == 4

    @pytest.mark.parametrize("name", ["d", "l1", "l2", "mu0_HM"])
    def test_invalid_geometry(self, name):
        kwargs = dict(d=1e-3, l1=1e-3, l2=1e-3)
        kwargs[name] = -1.0
        with pytest.raises(ParameterError):
            MaterialGeometry(**kwargs)


class TestFieldInversion:
    @pytest.mark.parametrize(
        "mode", [MagnetostaticMode.mssw(1), MagnetostaticMode.bvmsw(2)]
    )
    @pytest.mark.parametrize("H0", [0.02, 0.114, 0.9])
    def test_round_trip(self, mode, H0):
        target = mode_frequency(mode, H0, GEOM)
        assert abs(field_for_frequency(target, mode, GEOM) - H0) <= 1e-6

    def test_out_of_band(self):
        mode = MagnetostaticMode.mssw(1)
        with pytest.raises(OutOfBandError):
            field_for_frequency(TWO_PI * 500e9, mode, GEOM)
        with pytest.raises(OutOfBandError):
            field_for_frequency(TWO_PI * 1e6, mode, GEOM)

    def test_custom_limits(self):
        mode = MagnetostaticMode.mssw(1)
        target = mode_frequency(mode, 0.3, GEOM)
        with pytest.raises(OutOfBandError):
            field_for_frequency(
                target, mode, GEOM, bounds=(0.01, 0.2), limits=(0.01, 0.2)
            )

    @pytest.mark.parametrize("H0", [0.004, 0.3, 5.0])
    def test_bracket_is_widened(self, H0):
        mode = MagnetostaticMode.bvmsw(1)
        target = mode_frequency(mode, H0, GEOM)
        h = field_for_frequency(target, mode, GEOM, bounds=(0.01, 0.2))
        assert h == pytest.approx(H0, rel=1e-9)

    def test_invalid_target(self):
        with pytest.raises(ParameterError):
            field_for_frequency(-1.0, MagnetostaticMode.mssw(1), GEOM)


class TestCatalog:
    def test_surface_modes_ascend(self):
        modes = mode_catalog(GEOM, 0.1, "mssw", 5)
        assert [m.n2 for m in modes] == [1, 2, 3, 4, 5]
        assert np.all(np.diff([m.omega for m in modes]) > 0)

    def test_volume_modes_descend(self):
        modes = mode_catalog(GEOM, 0.1, "bvmsw", 5)
        assert [m.n1 for m in modes] == [1, 2, 3, 4, 5]
        assert np.all(np.diff([m.omega for m in modes]) < 0)

    def test_resolved_mode(self):
        mode = resolve_mode(MagnetostaticMode.mssw(2), 0.1, GEOM)
        assert mode.k == pytest.approx(2 * np.pi / 3e-3)
        assert mode.omega == pytest.approx(
            mode_frequency(MagnetostaticMode.mssw(2), 0.1, GEOM)
        )

    def test_max_index(self):
        with pytest.raises(ParameterError):
            mode_catalog(GEOM, 0.1, "mssw", 0)


class TestCouplingProfile:
    def test_inverse(self):
        g = TWO_PI * 30e6
        assert coupling_profile(MagnetostaticMode.bvmsw(3), g) == g / 3
        assert coupling_profile(MagnetostaticMode.mssw(3), g) == g

    def test_constant(self):
        g = TWO_PI * 30e6
        mode = MagnetostaticMode.bvmsw(3)
        assert coupling_profile(mode, g, "constant") == g

    def test_unknown(self):
        with pytest.raises(ParameterError):
            coupling_profile(MagnetostaticMode.mssw(1), 1.0, "gaussian")
