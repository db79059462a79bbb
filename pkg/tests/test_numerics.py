"""Spectral machinery: grids, operator application, propagation, tracking.

Plane waves commensurate with the periodic grid are exact eigenfunctions of
the momentum factors, so they serve as the oracle for operator application.
The split-step propagator is checked against stationary states and against
the exact translate-and-rephase action of a linear operator on a Gaussian.
"""

import csv as csv_module
import math

import numpy as np
import pytest

import nswp.analytic as an
import nswp.numerics as nm
import nswp.scenarios as sc
from nswp.numerics import (
    Grid,
    PropagatorConfig,
    UnsupportedOperatorError,
    WaveFunction,
    Window,
)
from nswp.opalg import QuadOp
from nswp.scenarios import FreeAiry, PhysicalParams, ShoDisplaced

UNITS = PhysicalParams()


def plane_wave(grid: Grid, mode: int) -> np.ndarray:
    k = 2.0 * math.pi * mode / (grid.x_max - grid.x_min)
    return np.exp(1j * k * grid.points), k


def gaussian(grid: Grid, center: float, sigma: float, momentum: float = 0.0):
    x = grid.points
    envelope = np.exp(-((x - center) ** 2) / (4.0 * sigma * sigma))
    norm = (2.0 * math.pi * sigma * sigma) ** -0.25
    return norm * envelope * np.exp(1j * momentum * x)


class TestGrid:
    def test_basic_properties(self):
        grid = Grid(-10.0, 10.0, 256)
        assert grid.dx == 20.0 / 256
        assert len(grid.points) == 256
        assert grid.points[0] == -10.0
        # right endpoint excluded: the grid is periodic
        assert grid.points[-1] == pytest.approx(10.0 - grid.dx)

    def test_wavenumber_layout(self):
        grid = Grid(0.0, 2.0 * math.pi, 256)
        k = grid.wavenumbers
        assert k[0] == 0.0
        assert k[1] == pytest.approx(1.0)
        assert k[-1] == pytest.approx(-1.0)
        assert np.max(k) == pytest.approx(128 - 1)
        assert np.min(k) == pytest.approx(-128)

    def test_validation(self):
        with pytest.raises(ValueError):
            Grid(-1.0, -2.0, 256)  # reversed bounds
        with pytest.raises(ValueError):
            Grid(-1.0, 1.0, 300)  # not a power of two
        with pytest.raises(ValueError):
            Grid(-1.0, 1.0, 128)  # too coarse
        with pytest.raises(ValueError):
            Grid(float("-inf"), 1.0, 256)

    def test_points_read_only(self):
        grid = Grid(-1.0, 1.0, 256)
        with pytest.raises(ValueError):
            grid.points[0] = 5.0


class TestWaveFunction:
    def test_copies_and_freezes(self):
        grid = Grid(-1.0, 1.0, 256)
        raw = np.ones(256, dtype=complex)
        psi = WaveFunction(grid=grid, samples=raw, time=0.0)
        raw[0] = 7.0
        assert psi.samples[0] == 1.0
        with pytest.raises(ValueError):
            psi.samples[0] = 3.0

    def test_rejects_bad_shape(self):
        grid = Grid(-1.0, 1.0, 256)
        with pytest.raises(ValueError):
            WaveFunction(grid=grid, samples=np.ones(255), time=0.0)

    def test_rejects_non_finite(self):
        grid = Grid(-1.0, 1.0, 256)
        samples = np.ones(256, dtype=complex)
        samples[3] = complex(float("nan"), 0.0)
        with pytest.raises(ValueError):
            WaveFunction(grid=grid, samples=samples, time=0.0)


class TestWindow:
    def test_validation(self):
        with pytest.raises(ValueError):
            Window(2.0, 1.0)
        with pytest.raises(ValueError):
            Window(0.0, float("inf"))

    def test_window_must_fit_grid(self):
        grid = Grid(-5.0, 5.0, 256)
        psi = WaveFunction(grid=grid, samples=np.ones(256), time=0.0)
        with pytest.raises(ValueError):
            nm.windowed_error(psi, psi, Window(-6.0, 0.0))


class TestApplyQuadop:
    def test_plane_wave_momentum(self):
        grid = Grid(-10.0, 10.0, 512)
        samples, k = plane_wave(grid, 12)
        psi = WaveFunction(grid=grid, samples=samples, time=0.0)
        op = QuadOp(c_pp=0.5, c_x=3.0, c_0=2.0)
        out = nm.apply_quadop(op, psi, UNITS).samples
        expected = (0.5 * k * k + 3.0 * grid.points + 2.0) * samples
        assert np.max(np.abs(out - expected)) < 1e-10

    def test_pure_momentum_term(self):
        grid = Grid(-10.0, 10.0, 512)
        samples, k = plane_wave(grid, -7)
        psi = WaveFunction(grid=grid, samples=samples, time=0.0)
        out = nm.apply_quadop(QuadOp(c_p=1.0), psi, UNITS).samples
        assert np.max(np.abs(out - k * samples)) < 1e-12

    def test_symmetrized_cross_term(self):
        # (x p + p x)/2 psi = (x (-i hbar psi'/psi) - i hbar/2) psi; for a
        # boosted Gaussian psi'/psi = -(x - c)/(2 sigma^2) + i k0, and the
        # state decays below roundoff before the periodic seam
        grid = Grid(-20.0, 20.0, 1024)
        c, sigma, k0 = 0.5, 1.2, 0.7
        samples = gaussian(grid, c, sigma, momentum=k0)
        psi = WaveFunction(grid=grid, samples=samples, time=0.0)
        out = nm.apply_quadop(QuadOp(c_xp=1.0), psi, UNITS).samples
        x = grid.points
        log_derivative = -(x - c) / (2.0 * sigma * sigma) + 1j * k0
        expected = (-1j * x * log_derivative - 0.5j) * samples
        assert np.max(np.abs(out - expected)) < 1e-9

    def test_oscillator_ground_state(self):
        grid = Grid(-20.0, 20.0, 1024)
        envelope = an.sho_eigenfunction(0, grid.points, UNITS, 1.0)
        psi = WaveFunction(grid=grid, samples=envelope, time=0.0)
        h = QuadOp(c_pp=0.5, c_xx=0.5)
        out = nm.apply_quadop(h, psi, UNITS).samples
        inside = np.abs(grid.points) < 8.0
        assert np.max(np.abs(out[inside] - 0.5 * envelope[inside])) < 1e-10

    def test_hbar_scaling(self):
        params = PhysicalParams(hbar=0.5)
        grid = Grid(-10.0, 10.0, 512)
        samples, k = plane_wave(grid, 4)
        psi = WaveFunction(grid=grid, samples=samples, time=0.0)
        out = nm.apply_quadop(QuadOp(c_pp=1.0), psi, params).samples
        assert np.max(np.abs(out - (0.5 * k) ** 2 * samples)) < 1e-12


class TestEigenResidual:
    def test_oscillator_eigenstate(self):
        spec = ShoDisplaced(offset=1.0, velocity=0.3)
        grid = Grid(-20.0, 20.0, 8192)
        psi = an.analytic_wavefunction(spec, grid, 0.7)
        op, energy = sc.preserving_hamiltonian(spec, 0.7)
        value = nm.eigen_residual(op, energy, psi, Window(-12.0, 12.0), spec.params)
        assert value < 1e-8

    def test_airy_state(self):
        spec = FreeAiry()
        grid = Grid(-120.0, 40.0, 8192)
        psi = an.analytic_wavefunction(spec, grid, 1.0)
        op, energy = sc.preserving_hamiltonian(spec, 1.0)
        value = nm.eigen_residual(op, energy, psi, Window(-25.0, 8.0), spec.params)
        assert value < 1e-6

    def test_wrong_eigenvalue_is_loud(self):
        spec = ShoDisplaced()
        grid = Grid(-20.0, 20.0, 2048)
        psi = an.analytic_wavefunction(spec, grid, 0.0)
        op, energy = sc.preserving_hamiltonian(spec, 0.0)
        value = nm.eigen_residual(op, energy + 0.25, psi, Window(-12.0, 12.0), spec.params)
        assert value > 1e-2

    def test_wrong_operator_is_loud(self):
        spec = ShoDisplaced()
        grid = Grid(-20.0, 20.0, 2048)
        psi = an.analytic_wavefunction(spec, grid, 0.9)
        op, energy = sc.preserving_hamiltonian(spec, 0.0)  # stale time
        value = nm.eigen_residual(op, energy, psi, Window(-12.0, 12.0), spec.params)
        assert value > 1e-2

    def test_zero_state_rejected(self):
        grid = Grid(-20.0, 20.0, 256)
        psi = WaveFunction(grid=grid, samples=np.zeros(256), time=0.0)
        with pytest.raises(ValueError):
            nm.eigen_residual(QuadOp(c_pp=0.5), 0.0, psi, Window(-5.0, 5.0))


class TestEdgeTaper:
    def test_profile(self):
        grid = Grid(-20.0, 20.0, 1024)
        weights = nm.edge_taper(grid, Window(-12.0, 12.0))
        assert weights.shape == (1024,)
        assert np.all((0.0 <= weights) & (weights <= 1.0))
        inside = np.abs(grid.points) <= 12.0
        assert np.all(weights[inside] == 1.0)
        assert weights[0] < 1e-6
        # monotone roll-off on each side
        left = weights[grid.points < -12.0]
        assert np.all(np.diff(left) >= 0.0)


class TestPropagate:
    def test_stationary_ground_state(self):
        spec = ShoDisplaced(offset=0.0)
        grid = Grid(-20.0, 20.0, 2048)
        psi0 = an.analytic_wavefunction(spec, grid, 0.0)
        cfg = PropagatorConfig(steps=2048)
        psi1 = nm.propagate(sc.hamiltonian(spec), psi0, 1.0, cfg, spec.params)
        expected = psi0.samples * np.exp(-0.5j)
        inside = np.abs(grid.points) < 12.0
        assert np.max(np.abs(psi1.samples[inside] - expected[inside])) < 1e-6
        assert psi1.time == 1.0

    def test_norm_preserved_without_mask(self):
        grid = Grid(-20.0, 20.0, 512)
        psi0 = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=0.0)
        cfg = PropagatorConfig(steps=1000, mask_fraction=0.0)
        psi1 = nm.propagate(
            sc.hamiltonian(ShoDisplaced()), psi0, 1.0, cfg, UNITS
        )
        norm0 = np.linalg.norm(psi0.samples)
        norm1 = np.linalg.norm(psi1.samples)
        assert abs(norm1 - norm0) < 1e-10 * norm0

    def test_rejects_cross_and_momentum_terms(self):
        grid = Grid(-20.0, 20.0, 256)
        psi0 = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=0.0)
        cfg = PropagatorConfig(steps=16)
        with pytest.raises(UnsupportedOperatorError):
            nm.propagate(lambda t: QuadOp(c_pp=0.5, c_xp=0.1), psi0, 1.0, cfg, UNITS)
        with pytest.raises(UnsupportedOperatorError):
            nm.propagate(lambda t: QuadOp(c_pp=0.5, c_p=0.1), psi0, 1.0, cfg, UNITS)

    def test_rejects_backward_evolution(self):
        grid = Grid(-20.0, 20.0, 256)
        psi0 = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=2.0)
        with pytest.raises(ValueError):
            nm.propagate(
                lambda t: QuadOp(c_pp=0.5), psi0, 1.0, PropagatorConfig(steps=16), UNITS
            )

    def test_free_gaussian_spreads_exactly(self):
        # sigma(t)^2 = sigma0^2 (1 + (hbar t / 2 m sigma0^2)^2)
        grid = Grid(-40.0, 40.0, 2048)
        sigma0 = 1.0
        psi0 = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, sigma0), time=0.0)
        cfg = PropagatorConfig(steps=512, mask_fraction=0.0)
        psi1 = nm.propagate(lambda t: QuadOp(c_pp=0.5), psi0, 1.0, cfg, UNITS)
        density = np.abs(psi1.samples) ** 2
        density /= np.trapezoid(density, grid.points)
        variance = np.trapezoid(density * grid.points**2, grid.points)
        expected = sigma0**2 * (1.0 + (1.0 / (2.0 * sigma0**2)) ** 2)
        assert abs(variance - expected) < 1e-10 * expected


class TestLinearStep:
    def test_zero_operator_is_identity(self):
        grid = Grid(-20.0, 20.0, 512)
        psi = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=0.0)
        out = nm.linear_step(QuadOp(), psi, 0.01, UNITS)
        assert np.max(np.abs(out.samples - psi.samples)) < 1e-14
        assert out.time == pytest.approx(0.01)

    def test_pure_phase(self):
        grid = Grid(-20.0, 20.0, 512)
        psi = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=0.0)
        dt = 0.02
        out = nm.linear_step(QuadOp(c_x=2.0, c_0=-1.0), psi, dt, UNITS)
        expected = psi.samples * np.exp(-1j * (2.0 * grid.points - 1.0) * dt)
        assert np.max(np.abs(out.samples - expected)) < 1e-13

    def test_gaussian_translate_and_rephase(self):
        # exact action of exp(-i (a p + b x + c) dt / hbar):
        # psi(x - a dt) times exp(-i (b x + c) dt / hbar + i a b dt^2 / 2 hbar)
        grid = Grid(-20.0, 20.0, 1024)
        sigma, a, b, c, dt = 1.0, 0.8, -0.6, 0.3, 0.05
        psi = WaveFunction(grid=grid, samples=gaussian(grid, -1.0, sigma), time=0.0)
        out = nm.linear_step(QuadOp(c_x=b, c_p=a, c_0=c), psi, dt, UNITS)
        shifted = gaussian(grid, -1.0 + a * dt, sigma)
        phase = np.exp(-1j * (b * grid.points + c) * dt + 0.5j * a * b * dt * dt)
        assert np.max(np.abs(out.samples - shifted * phase)) < 1e-12

    def test_rejects_quadratic_terms(self):
        grid = Grid(-20.0, 20.0, 256)
        psi = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=0.0)
        with pytest.raises(UnsupportedOperatorError):
            nm.linear_step(QuadOp(c_pp=0.5, c_x=1.0), psi, 0.01, UNITS)


class TestWindowedError:
    def test_identical_states(self):
        grid = Grid(-20.0, 20.0, 512)
        psi = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=0.0)
        assert nm.windowed_error(psi, psi, Window(-10.0, 10.0)) < 1e-15

    def test_global_phase_invisible(self):
        grid = Grid(-20.0, 20.0, 512)
        base = gaussian(grid, 0.0, 1.0)
        a = WaveFunction(grid=grid, samples=base * np.exp(0.83j), time=0.0)
        b = WaveFunction(grid=grid, samples=base, time=0.0)
        assert nm.windowed_error(a, b, Window(-10.0, 10.0)) < 1e-14

    def test_amplitude_mismatch_measured(self):
        grid = Grid(-20.0, 20.0, 512)
        base = gaussian(grid, 0.0, 1.0)
        a = WaveFunction(grid=grid, samples=base, time=0.0)
        b = WaveFunction(grid=grid, samples=2.0 * base, time=0.0)
        assert abs(nm.windowed_error(a, b, Window(-10.0, 10.0)) - 0.5) < 1e-12

    def test_grids_must_match(self):
        a = WaveFunction(grid=Grid(-20.0, 20.0, 512), samples=np.ones(512), time=0.0)
        b = WaveFunction(grid=Grid(-20.0, 20.0, 256), samples=np.ones(256), time=0.0)
        with pytest.raises(ValueError):
            nm.windowed_error(a, b, Window(-10.0, 10.0))

    def test_small_shift_grows_linearly(self):
        grid = Grid(-20.0, 20.0, 2048)
        base = WaveFunction(grid=grid, samples=gaussian(grid, 0.0, 1.0), time=0.0)
        errors = []
        for shift in (0.01, 0.02):
            moved = WaveFunction(
                grid=grid, samples=gaussian(grid, shift, 1.0), time=0.0
            )
            errors.append(nm.windowed_error(moved, base, Window(-10.0, 10.0)))
        assert errors[1] / errors[0] == pytest.approx(2.0, rel=1e-2)


class TestPeakTrack:
    def test_gaussian_off_grid_center(self):
        grid = Grid(-20.0, 20.0, 512)
        center = 1.234567  # deliberately between samples
        psi = WaveFunction(grid=grid, samples=gaussian(grid, center, 1.5), time=0.0)
        found = nm.peak_track(psi, Window(-5.0, 8.0))
        assert abs(found - center) < 1e-3 * grid.dx

    def test_airy_main_lobe(self):
        spec = FreeAiry()
        grid = Grid(-120.0, 40.0, 8192)
        psi = an.analytic_wavefunction(spec, grid, 1.0)
        found = nm.peak_track(psi, Window(-4.0, 1.0))
        expected = -1.0187929716474715 + sc.displacement(spec, 1.0).position
        assert abs(found - expected) < grid.dx

    def test_peak_on_window_edge_rejected(self):
        grid = Grid(-20.0, 20.0, 512)
        psi = WaveFunction(grid=grid, samples=gaussian(grid, 5.0, 1.0), time=0.0)
        with pytest.raises(ValueError):
            nm.peak_track(psi, Window(-10.0, 5.0))


class TestSerialization:
    def test_csv_round_trip(self, tmp_path):
        grid = Grid(-20.0, 20.0, 256)
        psi = WaveFunction(
            grid=grid, samples=gaussian(grid, 0.3, 1.0, momentum=0.7), time=0.0
        )
        path = tmp_path / "state.csv"
        nm.write_csv(psi, path)
        with open(path, newline="") as handle:
            rows = list(csv_module.reader(handle))
        assert rows[0] == ["x", "re", "im", "abs2"]
        assert len(rows) == 257
        for row, x, value in zip(rows[1:], grid.points, psi.samples):
            assert float(row[0]) == x
            assert float(row[1]) == value.real
            assert float(row[2]) == value.imag
            assert float(row[3]) == abs(value) ** 2

    def test_npz_round_trip(self, tmp_path):
        grid = Grid(-20.0, 20.0, 256)
        psi = WaveFunction(
            grid=grid, samples=gaussian(grid, -0.4, 1.2, momentum=-0.3), time=1.75
        )
        path = tmp_path / "state.npz"
        nm.save_npz(psi, path)
        back = nm.load_npz(path)
        assert back.time == psi.time
        assert back.grid.x_min == grid.x_min
        assert back.grid.x_max == grid.x_max
        assert back.grid.n == grid.n
        assert np.array_equal(back.samples, psi.samples)

    def test_npz_version_check(self, tmp_path):
        grid = Grid(-20.0, 20.0, 256)
        psi = WaveFunction(grid=grid, samples=np.ones(256), time=0.0)
        path = tmp_path / "state.npz"
        nm.save_npz(psi, path)
        payload = dict(np.load(path))
        payload["format_version"] = np.array(99)
        np.savez(path, **payload)
        with pytest.raises(ValueError):
            nm.load_npz(path)


class TestPropagatorConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            PropagatorConfig(steps=0)
        with pytest.raises(ValueError):
            PropagatorConfig(mask_fraction=0.3)
        with pytest.raises(ValueError):
            PropagatorConfig(scheme="euler")
