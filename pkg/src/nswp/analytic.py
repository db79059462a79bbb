"""Closed-form packet solutions and the special functions they are built from.

Every scenario's exact solution has the same shape: a rigid envelope riding
the classical displacement, times a phase that is linear in x,

    psi(x, t) = envelope(x - d(t)) * exp[i (m * d'(t) * x + phi(t)) / hbar].

:func:`phase_breakdown` returns the two phase ingredients, and
:func:`analytic_wavefunction` samples the full solution on a grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import airy as _scipy_airy

from .numerics import Grid, WaveFunction
from .scenarios import (
    FreeAiry,
    LinearAiry,
    PhysicalParams,
    ScenarioSpec,
    ShoDisplaced,
    displacement,
)

__all__ = [
    "MAX_LEVEL",
    "PhaseBreakdown",
    "airy_ai",
    "sho_eigenfunction",
    "phase_breakdown",
    "analytic_wavefunction",
]

#: Highest supported oscillator level; the Hermite-function recurrence is
#: forward-stable well past this, the bound just keeps quadrature tests honest.
MAX_LEVEL = 60


def airy_ai(x):
    """Airy function Ai evaluated elementwise.

    Delegates to the library implementation, which is accurate to full double
    precision over the whole real line; the test suite pins it against an
    independent power-series oracle and the defining differential equation.
    """
    return _scipy_airy(x)[0]


def sho_eigenfunction(n: int, x, params: PhysicalParams, omega: float):
    """Unit-normalized harmonic-oscillator eigenfunction of level ``n``.

    Uses the three-term recurrence on normalized Hermite functions
    h_k = xi * sqrt(2/k) * h_{k-1} - sqrt((k-1)/k) * h_{k-2}, which keeps
    every intermediate bounded (no raw-polynomial overflow).

    Parameters
    ----------
    n : int
        Level, 0 <= n <= MAX_LEVEL.
    x : array_like
        Positions, in the same units as sqrt(hbar / (m * omega)).
    params : PhysicalParams
        Unit constants.
    omega : float
        Oscillator angular frequency, > 0.
    """
    if not (0 <= n <= MAX_LEVEL) or n != int(n):
        raise ValueError(f"level must be an integer in [0, {MAX_LEVEL}], got {n!r}")
    if not (math.isfinite(omega) and omega > 0.0):
        raise ValueError(f"omega must be positive, got {omega!r}")
    scale = math.sqrt(params.mass * omega / params.hbar)
    xi = scale * np.asarray(x, dtype=float)
    h_prev = math.pi**-0.25 * np.exp(-0.5 * xi * xi)
    if n == 0:
        return math.sqrt(scale) * h_prev
    h = math.sqrt(2.0) * xi * h_prev
    for k in range(2, n + 1):
        h, h_prev = xi * math.sqrt(2.0 / k) * h - math.sqrt((k - 1) / k) * h_prev, h
    return math.sqrt(scale) * h


@dataclass(frozen=True)
class PhaseBreakdown:
    """The two ingredients of the packet phase at one time.

    ``linear_in_x`` is the momentum-like coefficient m * d'(t) multiplying x;
    ``constant`` is the accumulated x-independent phase (action units).
    """

    linear_in_x: float
    constant: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.linear_in_x) and math.isfinite(self.constant)):
            raise ValueError("phase terms must be finite")


def phase_breakdown(spec: ScenarioSpec, t: float) -> PhaseBreakdown:
    """Evaluate the packet phase terms at time t; both vanish at t = 0."""
    m = spec.params.mass
    move = displacement(spec, t)
    linear = m * move.velocity
    if isinstance(spec, FreeAiry):
        f = spec.self_force
        return PhaseBreakdown(linear, -(f * f) * t**3 / (3.0 * m))
    if isinstance(spec, LinearAiry):
        f = spec.self_force
        drive = spec.drive
        constant = (
            -(f * f) * t**3 / (3.0 * m)
            - (f * t / m) * drive.impulse_integral(t)
            - drive.impulse_square_integral(t) / (2.0 * m)
        )
        return PhaseBreakdown(linear, constant)
    if isinstance(spec, ShoDisplaced):
        w, d0, v0 = spec.omega, spec.offset, spec.velocity
        # closed form of int_0^t (d'^2 - w^2 d^2) / 2: the integrand reduces
        # to a pure double-frequency oscillation
        wobble = 0.5 * m * (
            (v0 * v0 - w * w * d0 * d0) * math.sin(2.0 * w * t) / (2.0 * w)
            - v0 * d0 * (1.0 - math.cos(2.0 * w * t))
        )
        return PhaseBreakdown(linear, -spec.energy * t - wobble)
    raise TypeError(f"unknown scenario {spec!r}")


def analytic_wavefunction(spec: ScenarioSpec, grid: Grid, t: float) -> WaveFunction:
    """Sample the exact solution on ``grid`` at time t.

    At t = 0 this reduces exactly to the scenario's initial state: the
    envelope at displacement d(0) carrying the phase m * d'(0) * x.
    """
    move = displacement(spec, t)
    x = grid.points
    if isinstance(spec, (FreeAiry, LinearAiry)):
        envelope = airy_ai(spec.scale * (x - move.position))
    elif isinstance(spec, ShoDisplaced):
        envelope = sho_eigenfunction(
            spec.level, x - move.position, spec.params, spec.omega
        )
    else:
        raise TypeError(f"unknown scenario {spec!r}")
    phase = phase_breakdown(spec, t)
    samples = envelope * np.exp(
        1j * (phase.linear_in_x * x + phase.constant) / spec.params.hbar
    )
    return WaveFunction(grid=grid, samples=samples, time=t)
