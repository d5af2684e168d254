import numpy as np
import pytest
from scipy.signal import find_peaks

from magtrans.core import (
    MagnonParams,
    OscillatorParams,
    Process,
    Spectator,
    TransducerConfig,
    cavity_figures,
    efficiency,
    eta_antistokes,
    eta_internal,
    eta_stokes,
    fsr_from_finesse,
    infer_xi_a,
    oracle_efficiency,
    photon_flux,
    polariton_frequencies,
    process_gap,
    reflection_s11,
    steady_state_solve,
    stokes_margin,
    susceptibilities,
)
from magtrans.errors import (
    ParameterError,
    SingularSystemError,
    StokesInstabilityError,
)
from magtrans.sweep import lorentzian_fwhm_fit
from magtrans.units import SPEED_OF_LIGHT, TWO_PI

# float spacing at the pump is 0.25 rad/s, so detunings that are
# multiples of 0.25 are represented exactly
PUMP = 2.0**50


def random_config(rng, process):
    def rate():
        return TWO_PI * 10 ** rng.uniform(3, 8)

    kappa_a, gamma_a, gamma_m, kappa_b, gamma_b, g_ma, g_mb = (
        rate() for _ in range(7)
    )
    if Process(process) is Process.STOKES:
        g_mb = min(g_mb, 0.15 * np.sqrt(gamma_m * (kappa_b + gamma_b)))
    scale = max(kappa_a + gamma_a, gamma_m, kappa_b + gamma_b, g_ma, g_mb)
    omega_m = np.round(4 * TWO_PI * rng.uniform(4e9, 8e9)) / 4
    omega_a = omega_m + rng.uniform(-3, 3) * scale
    sign = Process(process).detuning_sign
    cfg = TransducerConfig(
        microwave=OscillatorParams(omega_a, kappa_a, gamma_a),
        magnon=MagnonParams(omega_m, gamma_m),
        optical=OscillatorParams(PUMP + sign * omega_m, kappa_b, gamma_b),
        pump_omega=PUMP,
        g_ma=g_ma,
        g_mb=g_mb,
        process=process,
    )
    probe = omega_m + rng.uniform(-3, 3) * scale
    return cfg, probe


def resonant_config(g_ma_hz=10e6, g_mb_hz=1e3, process="antistokes"):
    return TransducerConfig.from_hz(
        microwave=(6e9, 1e6, 1e6),
        magnon=(6e9, 1e6),
        optical=(193e12, 6.56e6, 25.14e6),
        fsr=6e9,
        g_ma=g_ma_hz,
        g_mb=g_mb_hz,
        process=process,
    )


@pytest.mark.parametrize("process", ["antistokes", "stokes"])
def test_closed_form_matches_linear_solve(process):
    rng = np.random.default_rng(0 if process == "antistokes" else 1)
    for _ in range(500):
        cfg, probe = random_config(rng, process)
        assert cfg.is_triple_resonant(rtol=0.0)
        if process == "antistokes":
            eta = eta_antistokes(probe, cfg)
        else:
            eta = eta_stokes(probe, cfg)
        np.testing.assert_allclose(
            oracle_efficiency(probe, cfg), eta, rtol=1e-9
        )


def test_scalar_frequency_gives_scalars():
    cfg = resonant_config(g_mb_hz=1e6)
    w = cfg.magnon.omega_m
    chi = susceptibilities(w, cfg)
    assert all(np.ndim(x) == 0 and x.real > 0 for x in chi)
    for value in (
        efficiency(w, cfg),
        eta_antistokes(w, cfg),
        eta_stokes(w, cfg),
        process_gap(w, cfg),
        stokes_margin(w, cfg),
    ):
        assert np.ndim(value) == 0
        assert float(value) > 0
    assert eta_antistokes(w, cfg) == pytest.approx(
        eta_antistokes(np.array([w]), cfg)[0], rel=1e-14
    )


def test_reciprocal_symmetry():
    rng = np.random.default_rng(4)
    for _ in range(100):
        cfg, _ = random_config(rng, "antistokes")
        omega_m = cfg.magnon.omega_m
        cfg = cfg.replace(
            microwave=OscillatorParams(
                omega_m, cfg.microwave.kappa_ext, cfg.microwave.gamma_int
            )
        )
        swapped = cfg.replace(
            microwave=OscillatorParams(
                omega_m, cfg.optical.kappa_ext, cfg.optical.gamma_int
            ),
            optical=OscillatorParams(
                cfg.optical.omega,
                cfg.microwave.kappa_ext,
                cfg.microwave.gamma_int,
            ),
            g_ma=cfg.g_mb,
            g_mb=cfg.g_ma,
        )
        np.testing.assert_allclose(
            eta_antistokes(omega_m, swapped),
            eta_antistokes(omega_m, cfg),
            rtol=1e-12,
        )



@pytest.mark.parametrize("process", ["antistokes", "stokes"])
def test_closed_form_off_resonance_matches_linear_solve(process):
    rng = np.random.default_rng(2)
    for _ in range(50):
        cfg, probe = random_config(rng, process)
        cfg = cfg.with_detuning(
            cfg.detuning + rng.uniform(-2, 2) * cfg.optical.linewidth
        )
        assert not cfg.is_triple_resonant(rtol=0.0)
        np.testing.assert_allclose(
            oracle_efficiency(probe, cfg),
            efficiency(probe, cfg, on_resonance=False),
            rtol=1e-9,
        )


def test_efficiency_vectorizes():
    cfg = resonant_config()
    w = cfg.magnon.omega_m + TWO_PI * np.linspace(-50e6, 50e6, 11)
    eta = efficiency(w, cfg)
    assert eta.shape == (11,)
    np.testing.assert_allclose(eta, [efficiency(x, cfg) for x in w])
    np.testing.assert_allclose(
        oracle_efficiency(w, cfg), eta, rtol=1e-9
    )


def test_susceptibilities_have_positive_real_part():
    cfg = resonant_config()
    w = cfg.magnon.omega_m + TWO_PI * np.linspace(-1e9, 1e9, 101)
    for chi in susceptibilities(w, cfg):
        assert np.all(chi.real > 0)


def test_process_argument_overrides_config():
    cfg = resonant_config(process="stokes")
    w = cfg.magnon.omega_m
    assert eta_antistokes(w, cfg) == efficiency(w, cfg, "antistokes")
    assert eta_stokes(w, cfg) == efficiency(w, cfg)


def test_zero_optomagnonic_coupling_gives_zero():
    cfg = resonant_config(g_mb_hz=0.0)
    w = cfg.magnon.omega_m + TWO_PI * np.linspace(-50e6, 50e6, 11)
    assert np.all(eta_antistokes(w, cfg) == 0)
    assert np.all(eta_stokes(w, cfg) == 0)


def test_process_gap_scales_quadratically():
    g_mb = np.logspace(0, 3, 7)
    gaps = []
    for g in g_mb:
        cfg = resonant_config(g_ma_hz=10e6, g_mb_hz=g)
        gaps.append(process_gap(cfg.magnon.omega_m, cfg))
    slope, _ = np.polyfit(np.log(g_mb), np.log(gaps), 1)
    assert abs(slope - 2.0) <= 0.01


def test_process_gap_agrees_with_direct_difference():
    cfg = resonant_config(g_ma_hz=10e6, g_mb_hz=1e6)
    w = cfg.magnon.omega_m
    eta_as = eta_antistokes(w, cfg)
    eta_s = eta_stokes(w, cfg)
    np.testing.assert_allclose(
        process_gap(w, cfg), (eta_s - eta_as) / eta_as, rtol=1e-9
    )


def test_stokes_exceeds_antistokes_at_strong_coupling():
    cfg = resonant_config(g_ma_hz=10e6, g_mb_hz=1e6)
    w = cfg.magnon.omega_m
    assert eta_stokes(w, cfg) > eta_antistokes(w, cfg)


def test_stokes_threshold_is_rejected():
    cfg = resonant_config(g_ma_hz=0.0, g_mb_hz=0.0)
    threshold = 0.5 * np.sqrt(cfg.magnon.gamma_m * cfg.optical.linewidth)
    cfg = cfg.replace(g_mb=threshold, process="stokes")
    with pytest.raises(StokesInstabilityError):
        eta_stokes(cfg.magnon.omega_m, cfg)


def test_internal_efficiency_identity():
    rng = np.random.default_rng(3)
    for _ in range(100):
        cfg, probe = random_config(rng, "antistokes")
        eta = eta_antistokes(probe, cfg)
        internal = eta_internal(eta, cfg)
        np.testing.assert_allclose(
            internal.eta_int * internal.xi_a * internal.xi_b,
            eta,
            rtol=1e-14,
        )


def test_extraction_back_inference():
    optical = OscillatorParams.from_hz(
        SPEED_OF_LIGHT / 1550e-9, 6.56e6, 25.14e6
    )
    assert optical.extraction == pytest.approx(0.2069, abs=1e-4)
    xi_a = infer_xi_a(1.75e-8, 1.28e-7, optical.extraction)
    assert 0.63 <= xi_a <= 0.70


def test_internal_efficiency_needs_coupled_ports():
    cfg = resonant_config()
    cfg = cfg.replace(
        microwave=OscillatorParams(cfg.microwave.omega, 0.0, 1.0)
    )
    with pytest.raises(ParameterError):
        eta_internal(1e-9, cfg)


def test_optical_figures_of_merit():
    optical = OscillatorParams.from_hz(
        SPEED_OF_LIGHT / 1550e-9, 6.56e6, 25.14e6
    )
    figures = cavity_figures(5.49e9, optical, 1550e-9)
    assert figures.quality == pytest.approx(6.09e6, rel=0.01)
    assert fsr_from_finesse(173.3, optical) == pytest.approx(5.49e9, rel=0.01)
    assert figures.finesse == pytest.approx(
        5.49e9 / fsr_from_finesse(1.0, optical)
    )


def test_photon_flux():
    omega = TWO_PI * SPEED_OF_LIGHT / 1550e-9
    assert photon_flux(1e-3, omega) == pytest.approx(7.80e15, rel=1e-3)
    with pytest.raises(ParameterError):
        photon_flux(-1.0, omega)


def test_polariton_splitting():
    lower, upper = polariton_frequencies(5.0, 5.0, 0.25)
    assert upper - lower == pytest.approx(0.5)
    lower, upper = polariton_frequencies(
        np.array([4.0, 5.0]), np.array([5.0, 4.0]), 0.0
    )
    np.testing.assert_array_equal(lower, [4.0, 4.0])
    np.testing.assert_array_equal(upper, [5.0, 5.0])


def test_reflection_of_detuned_empty_cavity():
    cfg = resonant_config(g_ma_hz=0.0, g_mb_hz=0.0)
    far = cfg.microwave.omega + TWO_PI * 10e9
    assert abs(reflection_s11(far, cfg) + 1) < 1e-3


def test_critically_coupled_cavity_absorbs():
    cfg = resonant_config(g_ma_hz=0.0, g_mb_hz=0.0)
    assert abs(reflection_s11(cfg.microwave.omega, cfg)) < 1e-12
    w = cfg.microwave.omega + TWO_PI * np.array([-1e6, 0.0, 1e6])
    s11 = reflection_s11(w, cfg)
    assert s11.shape == (3,)
    assert abs(s11[1]) < 1e-12
    assert abs(s11[0]) == pytest.approx(abs(s11[2]))


def test_reflection_dip_is_lorentzian():
    cfg = resonant_config(g_ma_hz=0.0, g_mb_hz=0.0).replace(
        microwave=OscillatorParams.from_hz(6e9, 10e6, 5e6)
    )
    kappa, gamma = cfg.microwave.kappa_ext, cfg.microwave.gamma_int
    f = 6e9 + np.linspace(-150e6, 150e6, 1201)
    delta = TWO_PI * (f - 6e9)
    absorbed = 1 - np.abs(reflection_s11(TWO_PI * f, cfg)) ** 2
    np.testing.assert_allclose(
        absorbed,
        kappa * gamma / ((0.5 * (kappa + gamma)) ** 2 + delta**2),
        rtol=1e-9,
        atol=1e-14,
    )
    fit = lorentzian_fwhm_fit(f, absorbed)
    assert fit.fwhm == pytest.approx(15e6, rel=1e-3)
    assert fit.center == pytest.approx(6e9, abs=1e4)


def test_polariton_dips():
    cfg = resonant_config(g_ma_hz=20e6, g_mb_hz=0.0)
    f = 6e9 + np.linspace(-60e6, 60e6, 12001)
    s11 = np.abs(reflection_s11(TWO_PI * f, cfg))
    dips, _ = find_peaks(-s11, prominence=0.1)
    assert len(dips) == 2
    assert f[dips[1]] - f[dips[0]] == pytest.approx(40e6, abs=0.2e6)


def test_no_drive_gives_no_response():
    cfg = resonant_config()
    amp = steady_state_solve(cfg.magnon.omega_m, cfg, drive=(0.0, 0.0))
    assert amp.a == amp.m == amp.b_or_bdag == 0
    assert amp.a_out == amp.b_out == 0


def test_decoupled_cavity_amplitude():
    cfg = resonant_config(g_ma_hz=0.0, g_mb_hz=0.0).replace(
        microwave=OscillatorParams.from_hz(6e9, 3e6, 1e6)
    )
    kappa, gamma = cfg.microwave.kappa_ext, cfg.microwave.gamma_int
    amp = steady_state_solve(cfg.microwave.omega, cfg)
    assert amp.a == pytest.approx(2 * np.sqrt(kappa) / (kappa + gamma))
    assert amp.m == 0
    assert amp.b_or_bdag == 0



def test_input_output_relation():
    cfg = resonant_config()
    amp = steady_state_solve(cfg.magnon.omega_m, cfg, drive=(1.0, 0.5))
    kappa_a = cfg.microwave.kappa_ext
    kappa_b = cfg.optical.kappa_ext
    assert amp.a_out == pytest.approx(np.sqrt(kappa_a) * amp.a - 1.0)
    assert amp.b_out == pytest.approx(np.sqrt(kappa_b) * amp.b_or_bdag - 0.5)


def test_uncoupled_spectator_changes_nothing():
    cfg = resonant_config()
    w = cfg.magnon.omega_m + TWO_PI * 3e6
    spectator = Spectator(
        cfg.magnon.omega_m + TWO_PI * 50e6, TWO_PI * 1e6, 0.0
    )
    amp = steady_state_solve(w, cfg, spectators=[spectator])
    assert amp.spectators == (0j,)
    assert oracle_efficiency(w, cfg, [spectator]) == pytest.approx(
        oracle_efficiency(w, cfg), rel=1e-12
    )


def test_coupled_spectator_adds_a_dip():
    cfg = resonant_config(g_mb_hz=0.0)
    offset = TWO_PI * 50e6
    spectator = Spectator(
        cfg.microwave.omega + offset, TWO_PI * 1e6, TWO_PI * 20e6
    )
    w = cfg.microwave.omega + offset
    w = w + TWO_PI * np.linspace(-20e6, 20e6, 801)
    bare = np.abs(reflection_s11(w, cfg)) ** 2
    dressed = np.abs(reflection_s11(w, cfg, [spectator])) ** 2
    assert np.min(bare) > 0.99
    assert np.min(dressed) < 0.9


def test_singular_system_is_refused():
    cfg = resonant_config()
    with pytest.raises(SingularSystemError):
        steady_state_solve(cfg.magnon.omega_m, cfg, max_cond=1.0)


class TestTransducerConfig:
    def test_pumped_coupling(self):
        cfg = resonant_config().replace(
            g_mb_single=TWO_PI * 10.0, pump_amplitude=300.0
        )
        assert cfg.g_mb == pytest.approx(TWO_PI * 3000.0)

    def test_inconsistent_pumped_coupling(self):
        cfg = resonant_config()
        with pytest.raises(ParameterError):
            cfg.replace(
                g_mb=1.0, g_mb_single=TWO_PI * 10.0, pump_amplitude=300.0
            )

    def test_replacing_g_mb_drops_pumped_coupling(self):
        cfg = resonant_config().replace(
            g_mb_single=TWO_PI * 10.0, pump_amplitude=300.0
        )
        cfg = cfg.replace(g_mb=TWO_PI * 5.0)
        assert cfg.g_mb_single is None and cfg.pump_amplitude is None

    def test_missing_coupling(self):
        cfg = resonant_config()
        with pytest.raises(ParameterError):
            cfg.replace(g_mb=None)

    @pytest.mark.parametrize(
        "field,value",
        [("g_ma", -1.0), ("pump_omega", 0.0), ("g_ma", float("nan"))],
    )
    def test_invalid_values(self, field, value):
        with pytest.raises(ParameterError):
            resonant_config().replace(**{field: value})

    def test_invalid_modes(self):
        with pytest.raises(ParameterError):
            MagnonParams(1.0, -1.0)
        with pytest.raises(ParameterError):
            OscillatorParams(1.0, 0.0, 0.0)
        with pytest.raises(ParameterError):
            OscillatorParams(1.0, -1.0, 2.0)

    @pytest.mark.parametrize("process", ["antistokes", "stokes"])
    def test_fsr_placement(self, process):
        cfg = resonant_config(process=process)
        assert cfg.is_triple_resonant()
        sign = Process(process).detuning_sign
        assert cfg.detuning == pytest.approx(sign * TWO_PI * 6e9)
        moved = cfg.with_fsr(6.1e9)
        assert not moved.is_triple_resonant()
        assert moved.detuning == pytest.approx(sign * TWO_PI * 6.1e9)

    def test_fsr_placement_switches_process(self):
        cfg = resonant_config().with_fsr(6e9, "stokes")
        assert cfg.process is Process.STOKES
        assert cfg.is_triple_resonant()

    def test_process_signs(self):
        assert Process.ANTI_STOKES.sign == 1
        assert Process.STOKES.sign == -1
        assert Process("stokes") is Process.STOKES
