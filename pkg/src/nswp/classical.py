"""Classical trajectories generated by the state-changing operator.

The state-changing part of a decomposed Hamiltonian doubles as a classical
Hamiltonian: Hamilton's equations derived from its coefficients reproduce the
displacement d(t) that the quantum envelope follows.  This module integrates
those equations and quantifies the correspondence against both the closed
form and tracked packet peaks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .opalg import QuadOp, TimeQuadOp
from .scenarios import ScenarioSpec, displacement

__all__ = [
    "Trajectory",
    "ComparisonRecord",
    "hamilton_rhs",
    "integrate",
    "compare",
]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Phase-space samples (t, x, p) at uniform output times."""

    times: np.ndarray
    positions: np.ndarray
    momenta: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        positions = np.asarray(self.positions, dtype=float)
        momenta = np.asarray(self.momenta, dtype=float)
        if not (times.shape == positions.shape == momenta.shape) or times.ndim != 1:
            raise ValueError("times, positions, momenta must be 1-d arrays of equal length")
        if np.any(np.diff(times) <= 0.0):
            raise ValueError("trajectory times must be strictly increasing")
        if not all(np.all(np.isfinite(a)) for a in (times, positions, momenta)):
            raise ValueError("trajectory samples must be finite")
        for name, arr in (("times", times), ("positions", positions), ("momenta", momenta)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


@dataclass(frozen=True)
class ComparisonRecord:
    """Worst-case deviations of a trajectory from its references."""

    max_displacement_error: float
    max_peak_shift_error: float


def hamilton_rhs(hc: QuadOp, x: float, p: float, t: float = 0.0) -> tuple[float, float]:
    """Phase-space velocity (dx/dt, dp/dt) generated by ``hc``.

    Reads the derivatives straight off the coefficients:
    dx/dt = 2 c_pp p + c_xp x + c_p and dp/dt = -(2 c_xx x + c_xp p + c_x).
    The scalar c_0 never enters.  ``t`` is carried for bookkeeping only; the
    operator is already frozen at one time.
    """
    del t
    velocity = 2.0 * hc.c_pp * p + hc.c_xp * x + hc.c_p
    force = -(2.0 * hc.c_xx * x + hc.c_xp * p + hc.c_x)
    return velocity, force


def integrate(
    hc: TimeQuadOp, x0: float, p0: float, t1: float, dt: float = 1e-3
) -> Trajectory:
    """Classic fourth-order Runge-Kutta from (x0, p0) at t = 0 up to t1.

    The step is shrunk slightly if needed so the horizon is hit exactly;
    samples are recorded at every step.
    """
    if not (math.isfinite(t1) and t1 > 0.0):
        raise ValueError(f"horizon must be positive, got {t1!r}")
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError(f"dt must be positive, got {dt!r}")
    n = max(1, math.ceil(t1 / dt - 1e-12))
    step = t1 / n
    times = np.empty(n + 1)
    positions = np.empty(n + 1)
    momenta = np.empty(n + 1)
    times[0], positions[0], momenta[0] = 0.0, x0, p0
    x, p = x0, p0
    for j in range(n):
        t = j * step
        k1x, k1p = hamilton_rhs(hc(t), x, p)
        k2x, k2p = hamilton_rhs(hc(t + 0.5 * step), x + 0.5 * step * k1x, p + 0.5 * step * k1p)
        k3x, k3p = hamilton_rhs(hc(t + 0.5 * step), x + 0.5 * step * k2x, p + 0.5 * step * k2p)
        k4x, k4p = hamilton_rhs(hc(t + step), x + step * k3x, p + step * k3p)
        x += step / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        p += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        times[j + 1] = (j + 1) * step
        positions[j + 1] = x
        momenta[j + 1] = p
    return Trajectory(times=times, positions=positions, momenta=momenta)


def compare(
    traj: Trajectory,
    spec: ScenarioSpec,
    peaks: list[tuple[float, float]] | None = None,
) -> ComparisonRecord:
    """Deviation of the trajectory from d(t) and from tracked packet peaks.

    Peaks are (time, position) pairs; each time must coincide with a
    trajectory sample.  Peak positions are compared as displacements from
    their own t = 0 values, so the envelope-internal offset of the tracked
    maximum drops out.
    """
    reference = np.array([displacement(spec, t).position for t in traj.times])
    max_displacement = float(np.max(np.abs(traj.positions - reference)))
    max_peak = 0.0
    if peaks:
        base_t, base_x = peaks[0]
        index = _sample_index(traj, base_t)
        traj_base = traj.positions[index]
        for t, x_peak in peaks:
            index = _sample_index(traj, t)
            moved_traj = traj.positions[index] - traj_base
            moved_peak = x_peak - base_x
            max_peak = max(max_peak, abs(moved_traj - moved_peak))
    return ComparisonRecord(
        max_displacement_error=float(max_displacement),
        max_peak_shift_error=float(max_peak),
    )


def _sample_index(traj: Trajectory, t: float) -> int:
    index = int(np.argmin(np.abs(traj.times - t)))
    if abs(traj.times[index] - t) > 1e-9 * max(1.0, abs(t)):
        raise ValueError(f"time {t!r} is not a trajectory sample")
    return index
