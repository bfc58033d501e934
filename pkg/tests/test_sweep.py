import math

import numpy as np
import pytest

from app.core.units import CONSTANTS, wavenumber
from app.schemas import AtomParams, Cavity, FreeSpace, GeneralPeriodicMotion, Mirror, SHOMotion, SweepAxis
from app.schemas.run_config import RunConfig
from app.services import oracle_service, rate_service, sweep_service
from app.services.exceptions import DomainException, IntegrityException
from app.services.specfun import bessel_j


@pytest.fixture(scope="module")
def default_fig2():
    return sweep_service.fig2_surface()


@pytest.fixture(scope="module")
def default_fig3():
    return sweep_service.fig3_surface()


def test_fig2_default_shape_and_metadata(default_fig2):
    assert default_fig2.grid.shape == (512, 30)
    assert default_fig2.metadata["normalization"] == "prefactor_omitted"
    assert default_fig2.metadata["preset"] == "fig2"
    assert "version" in default_fig2.metadata


def test_fig2_cells_equal_direct_calls(default_fig2):
    rng = np.random.default_rng(7)
    a_tilde = default_fig2.grid.axis1.values
    orders = default_fig2.grid.axis2.values
    for _ in range(154):
        i, j = int(rng.integers(len(a_tilde))), int(rng.integers(len(orders)))
        assert default_fig2.values[i][j] == bessel_j(int(orders[j]), a_tilde[i]) ** 2


def test_fig2_global_maximum_location():
    result = sweep_service.fig2_surface(np.linspace(0.0, 6.0, 601), range(1, 31))
    values = np.array(result.values)
    i, j = np.unravel_index(np.argmax(values), values.shape)
    assert result.grid.axis2.values[j] == 1
    assert 1.83 <= result.grid.axis1.values[i] <= 1.85
    assert values[i, j] == pytest.approx(0.3386, rel=1e-2)


def test_fig2_negligible_until_order_n(default_fig2):
    values = np.array(default_fig2.values)
    a_tilde = np.array(default_fig2.grid.axis1.values)
    peak = values.max()
    for j, n in enumerate(default_fig2.grid.axis2.values):
        if n < 6:
            continue
        below = a_tilde < n / 2
        assert np.all(values[below, j] < 1e-3 * peak)


def test_fig2_threshold_is_monotone(default_fig2):
    values = np.array(default_fig2.values)
    a_tilde = default_fig2.grid.axis1.values
    level = 1e-3 * values.max()
    thresholds = [a_tilde[int(np.argmax(values[:, j] > level))] for j in range(values.shape[1])]
    assert all(b >= a for a, b in zip(thresholds, thresholds[1:]))


def test_fig2_absolute_mode():
    atom = AtomParams(omega0=0.5, g=0.3)
    result = sweep_service.fig2_surface([0.5, 1.8], [1, 2], atom=atom, Omega=1.0)
    assert result.metadata["normalization"] == "absolute_hz"
    assert result.values[1][0] == pytest.approx(2 * math.pi * 0.09 * bessel_j(1, 1.8) ** 2, rel=1e-12)


def test_fig2_rejects_negative_amplitude():
    with pytest.raises(DomainException):
        sweep_service.fig2_surface([-1.0, 0.0], [1])


def test_fig3_default_grid(default_fig3):
    assert default_fig3.grid.shape == (128, 128)
    assert default_fig3.exact is not None
    assert not any(any(row) for row in default_fig3.flags)


def test_fig3_contains_cqed_decade(default_fig3):
    values = np.array(default_fig3.values)
    assert np.any((values >= 1e-4) & (values < 1e-3))


def test_fig3_approximation_tracks_exact(default_fig3):
    values = np.array(default_fig3.values)
    exact = np.array(default_fig3.exact)
    mask = exact > 0
    assert np.all(np.abs(values[mask] - exact[mask]) / exact[mask] < 1e-2)


def test_fig3_flags_large_amplitudes():
    Omega = 2 * math.pi * 1e10
    a_large = 0.2 / wavenumber(Omega / 2)
    result = sweep_service.fig3_surface([1e-9, a_large], [0.2, 0.5], Omega)
    assert result.flags == [[False, False], [True, True]]
    assert result.values[1][0] > 0


def test_spectrum_with_verification():
    atom = AtomParams(omega0=0.5, g=0.2)
    k = wavenumber(0.5)
    motion = SHOMotion(amplitude=1.5 / k, Omega=1.0)
    lines = sweep_service.spectrum(atom, motion, Mirror(z0=7.3 / k), 5, verify=True)
    assert [line.n for line in lines] == [1, 2, 3, 4, 5]
    for line in lines:
        assert line.oracle_rate is not None
        assert line.oracle_rate == pytest.approx(line.rate, rel=1e-6, abs=1e-6 * 8 * math.pi * 0.04)


def test_spectrum_cavity_single_line():
    length = 0.1
    omega_1 = math.pi * CONSTANTS.c / length
    atom = AtomParams(omega0=1e9, g=1e8)
    motion = SHOMotion(amplitude=1e-3, Omega=(omega_1 + atom.omega0) / 2)
    lines = sweep_service.spectrum(atom, motion, Cavity(length=length, z0=0.03), 3, verify=True)
    assert len(lines) == 1
    assert (lines[0].n, lines[0].m) == (2, 1)


def test_verification_detects_disagreement(monkeypatch):
    atom = AtomParams(omega0=0.5, g=0.2)
    motion = SHOMotion(amplitude=1.0 / wavenumber(0.5), Omega=1.0)
    monkeypatch.setattr(rate_service, "free_space_formula", lambda g, Omega, n, a: 1.0)
    with pytest.raises(IntegrityException):
        sweep_service.spectrum(atom, motion, FreeSpace(), 2, verify=True)


def test_custom_surface_over_amplitude_and_coupling(cqed_config_text):
    config = RunConfig.loads(cqed_config_text)
    result = sweep_service.custom_surface(
        config,
        SweepAxis(name="motion.amplitude", values=[1e-9, 2e-9]),
        SweepAxis(name="atom.alpha", values=[0.2, 0.4]),
        n=1,
        workers=2,
    )
    assert result.grid.shape == (2, 2)
    assert result.values[1][0] == pytest.approx(4 * result.values[0][0], rel=1e-6)
    assert result.values[0][1] == pytest.approx(4 * result.values[0][0], rel=1e-12)
    assert result.values[0][0] == pytest.approx(1.084e-5, rel=1e-2)


def test_custom_surface_counts_silent_cells_as_zero(cqed_config_text):
    config = RunConfig.loads(cqed_config_text)
    result = sweep_service.custom_surface(
        config,
        SweepAxis(name="atom.omega0_hz", values=[5e9, 2e10]),
        SweepAxis(name="motion.amplitude", values=[1e-9]),
        n=1,
    )
    assert result.values[0][0] > 0
    assert result.values[1][0] == 0.0


def test_surface_from_config_fig3_range(cqed_config_text):
    text = cqed_config_text + "sweep__preset=fig3\nsweep__axis1_max=5e-9\nsweep__axis1_points=4\nsweep__axis2_min=0.2\nsweep__axis2_max=0.8\nsweep__axis2_points=3\n"
    result = sweep_service.surface_from_config(RunConfig.loads(text))
    assert result.grid.shape == (4, 3)
    assert result.grid.axis1.values[-1] == pytest.approx(5e-9)


def test_sweeps_are_deterministic_across_worker_counts():
    one = sweep_service.fig2_surface(np.linspace(0.0, 14.0, 57), range(1, 9), workers=1)
    many = sweep_service.fig2_surface(np.linspace(0.0, 14.0, 57), range(1, 9), workers=8)
    assert one.values == many.values


def _two_harmonic_path(k: float, size: int = 64) -> GeneralPeriodicMotion:
    amplitude = 1.2 / k
    tau = 2 * math.pi * np.arange(size) / size
    samples = amplitude * np.sin(tau) + amplitude / 3 * np.sin(2 * tau)
    return GeneralPeriodicMotion(Omega=1.0, samples=list(samples))


def test_general_spectrum_verification_uses_dense_trapezoid():
    atom = AtomParams(omega0=0.5, g=1.0)
    traj = _two_harmonic_path(wavenumber(0.5))
    lines = sweep_service.spectrum(atom, traj, FreeSpace(), 3, verify=True)
    assert [line.n for line in lines] == [1, 2, 3]
    for line in lines:
        independent = oracle_service.dense_trapezoid_rate(atom, traj, FreeSpace(), line)
        assert line.oracle_rate == independent
        assert line.oracle_rate == pytest.approx(line.rate, rel=1e-8)


def test_general_spectrum_verification_detects_disagreement(monkeypatch):
    atom = AtomParams(omega0=0.5, g=1.0)
    traj = _two_harmonic_path(wavenumber(0.5))
    monkeypatch.setattr(oracle_service, "dense_trapezoid_rate", lambda atom, traj, geom, line: 2 * line.rate)
    with pytest.raises(IntegrityException):
        sweep_service.spectrum(atom, traj, FreeSpace(), 3, verify=True)
    with pytest.raises(IntegrityException):
        sweep_service.rate_lines(atom, traj, FreeSpace(), 1, verify=True)


def test_general_rate_lines_verification_near_mirror():
    atom = AtomParams(omega0=0.5, g=1.0)
    k = wavenumber(0.5)
    traj = _two_harmonic_path(k)
    geom = Mirror(z0=7.0 / k)
    lines = sweep_service.rate_lines(atom, traj, geom, 1, verify=True)
    assert len(lines) == 1
    assert lines[0].oracle_rate == pytest.approx(lines[0].rate, rel=1e-8, abs=1e-12)
