"""The three built-in physical setups and their exact time-evolution data.

Each scenario knows its Hamiltonian family H(t), the operator that has the
initial state as an eigenfunction, the affine map describing how a Heisenberg
conjugation transports (x, p) up to time t, and the classical displacement
d(t) that the packet envelope follows:

``FreeAiry``
    An Airy-function packet under the free Hamiltonian p^2/2m.  The packet
    self-accelerates: d(t) = f t^2 / 2m with the intrinsic force constant
    f = hbar^2 b^3 / 2m set by the envelope scale b.

``LinearAiry``
    The same envelope under H(t) = p^2/2m - F(t) x with a spatially uniform,
    time-dependent drive.  The drive enters through its running impulse
    A(t) = int_0^t F and the running integral of A.

``ShoDisplaced``
    A displaced (and boosted) harmonic-oscillator eigenstate under the static
    oscillator Hamiltonian; d(t) swings along the classical oscillation.

The state-preserving operator at time t is always produced by conjugating the
t = 0 eigen-operator through the Heisenberg map, never by transcribing a
closed form; the closed forms serve as cross-checks in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
from scipy.interpolate import CubicHermiteSpline, CubicSpline

from .opalg import AffineMap, QuadOp, TimeQuadOp, conjugate, decompose

__all__ = [
    "PhysicalParams",
    "Constant",
    "Cosine",
    "Tabulated",
    "DriveSpec",
    "FreeAiry",
    "LinearAiry",
    "ShoDisplaced",
    "ScenarioSpec",
    "Displacement",
    "hamiltonian",
    "initial_eigenpair",
    "heisenberg_map",
    "impulse",
    "impulse_integral",
    "impulse_square_integral",
    "displacement",
    "preserving_hamiltonian",
    "changing_hamiltonian",
]


@dataclass(frozen=True)
class PhysicalParams:
    """Unit constants: the action scale and the particle mass."""

    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self) -> None:
        for name in ("hbar", "mass"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class Constant:
    """Time-independent drive F(t) = force."""

    force: float

    def force_at(self, t: float) -> float:
        return self.force

    def impulse(self, t: float) -> float:
        return self.force * t

    def impulse_integral(self, t: float) -> float:
        return self.force * t * t / 2.0

    def impulse_square_integral(self, t: float) -> float:
        return self.force * self.force * t**3 / 3.0


@dataclass(frozen=True)
class Cosine:
    """Oscillating drive F(t) = amplitude * cos(frequency * t)."""

    amplitude: float
    frequency: float

    def __post_init__(self) -> None:
        if self.frequency == 0.0:
            raise ValueError("frequency must be nonzero; use Constant for a static drive")

    def force_at(self, t: float) -> float:
        return self.amplitude * math.cos(self.frequency * t)

    def impulse(self, t: float) -> float:
        return self.amplitude / self.frequency * math.sin(self.frequency * t)

    def impulse_integral(self, t: float) -> float:
        w = self.frequency
        return self.amplitude / (w * w) * (1.0 - math.cos(w * t))

    def impulse_square_integral(self, t: float) -> float:
        w = self.frequency
        return (self.amplitude / w) ** 2 * (t / 2.0 - math.sin(2.0 * w * t) / (4.0 * w))


def _cumulative_uniform(y: np.ndarray, h: float) -> np.ndarray:
    """Running integral of uniformly spaced samples.

    Prefixes with an even interval count use composite Simpson; odd prefixes
    close with the 3/8 rule on the last three intervals.  The first interval
    alone is integrated from the quadratic through the first three samples.
    """
    n = len(y)
    out = np.zeros(n)
    if n < 3:
        out[1:] = h * (y[:-1] + y[1:])[: n - 1] / 2.0
        return out
    pair = (h / 3.0) * (y[:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    out[2::2] = np.cumsum(pair)
    odd = np.arange(1, n, 2)
    first = odd[0]
    out[first] = (h / 12.0) * (5.0 * y[0] + 8.0 * y[1] - y[2])
    rest = odd[1:]
    if len(rest):
        out[rest] = out[rest - 3] + (3.0 * h / 8.0) * (
            y[rest - 3] + 3.0 * y[rest - 2] + 3.0 * y[rest - 1] + y[rest]
        )
    return out


@dataclass(frozen=True, eq=False)
class Tabulated:
    """Drive given by uniform samples (t_i, F_i) starting at t = 0.

    Values between nodes come from cubic interpolation; the running integrals
    are built once per instance and reused.
    """

    times: np.ndarray
    forces: np.ndarray

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        forces = np.asarray(self.forces, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "forces", forces)
        if times.ndim != 1 or forces.shape != times.shape:
            raise ValueError("times and forces must be 1-d arrays of equal length")
        if len(times) < 2:
            raise ValueError("a tabulated drive needs at least two samples")
        if times[0] != 0.0:
            raise ValueError("tabulated drives must start at t = 0")
        steps = np.diff(times)
        if np.any(steps <= 0.0):
            raise ValueError("tabulated times must be strictly increasing")
        h = steps[0]
        if np.any(np.abs(steps - h) > 1e-9 * h):
            raise ValueError("tabulated times must be uniformly spaced")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(forces))):
            raise ValueError("tabulated samples must be finite")

    # cached_property writes straight into __dict__, which a frozen dataclass
    # permits, so the interpolants are built once per instance.
    @cached_property
    def _spacing(self) -> float:
        return float(self.times[1] - self.times[0])

    @cached_property
    def _force_spline(self) -> CubicSpline:
        return CubicSpline(self.times, self.forces)

    @cached_property
    def _impulse_nodes(self) -> np.ndarray:
        return _cumulative_uniform(self.forces, self._spacing)

    @cached_property
    def _impulse_spline(self) -> CubicHermiteSpline:
        # the derivative of the impulse is the force itself
        return CubicHermiteSpline(self.times, self._impulse_nodes, self.forces)

    @cached_property
    def _impulse_integral_spline(self) -> CubicHermiteSpline:
        nodes = _cumulative_uniform(self._impulse_nodes, self._spacing)
        return CubicHermiteSpline(self.times, nodes, self._impulse_nodes)

    @cached_property
    def _impulse_square_spline(self) -> CubicHermiteSpline:
        squares = self._impulse_nodes**2
        nodes = _cumulative_uniform(squares, self._spacing)
        return CubicHermiteSpline(self.times, nodes, squares)

    def _check_range(self, t: float) -> None:
        if t < self.times[0] or t > self.times[-1]:
            raise ValueError(
                f"time {t!r} outside the tabulated range "
                f"[{self.times[0]!r}, {self.times[-1]!r}]"
            )

    def force_at(self, t: float) -> float:
        self._check_range(t)
        return float(self._force_spline(t))

    def impulse(self, t: float) -> float:
        self._check_range(t)
        return float(self._impulse_spline(t))

    def impulse_integral(self, t: float) -> float:
        self._check_range(t)
        return float(self._impulse_integral_spline(t))

    def impulse_square_integral(self, t: float) -> float:
        self._check_range(t)
        return float(self._impulse_square_spline(t))


DriveSpec = Union[Constant, Cosine, Tabulated]


def _check_scale(scale: float) -> None:
    if scale == 0.0 or not math.isfinite(scale):
        raise ValueError(f"envelope scale must be nonzero and finite, got {scale!r}")


@dataclass(frozen=True)
class FreeAiry:
    """Airy packet of envelope scale ``scale`` in free space."""

    scale: float = 1.0
    params: PhysicalParams = field(default_factory=PhysicalParams)

    def __post_init__(self) -> None:
        _check_scale(self.scale)

    @property
    def self_force(self) -> float:
        """Intrinsic force constant hbar^2 scale^3 / 2m of the envelope."""
        p = self.params
        return p.hbar**2 * self.scale**3 / (2.0 * p.mass)


@dataclass(frozen=True, eq=False)
class LinearAiry:
    """Airy packet under a spatially uniform, time-dependent drive."""

    scale: float = 1.0
    drive: DriveSpec = field(default_factory=lambda: Constant(1.0))
    params: PhysicalParams = field(default_factory=PhysicalParams)

    def __post_init__(self) -> None:
        _check_scale(self.scale)

    @property
    def self_force(self) -> float:
        p = self.params
        return p.hbar**2 * self.scale**3 / (2.0 * p.mass)


@dataclass(frozen=True)
class ShoDisplaced:
    """Displaced and boosted harmonic-oscillator eigenstate."""

    level: int = 0
    offset: float = 1.0
    velocity: float = 0.0
    omega: float = 1.0
    params: PhysicalParams = field(default_factory=PhysicalParams)

    def __post_init__(self) -> None:
        if self.level < 0 or self.level != int(self.level):
            raise ValueError(f"level must be a non-negative integer, got {self.level!r}")
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")

    @property
    def energy(self) -> float:
        """Eigenstate energy (level + 1/2) * hbar * omega."""
        return (self.level + 0.5) * self.params.hbar * self.omega


ScenarioSpec = Union[FreeAiry, LinearAiry, ShoDisplaced]


@dataclass(frozen=True)
class Displacement:
    """Classical packet displacement and its first two time derivatives."""

    position: float
    velocity: float
    acceleration: float

    def __post_init__(self) -> None:
        for name in ("position", "velocity", "acceleration"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite, got {getattr(self, name)!r}")


def _check_time(t: float) -> None:
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"time must be finite and non-negative, got {t!r}")


def hamiltonian(spec: ScenarioSpec) -> TimeQuadOp:
    """The scenario Hamiltonian as a time family of operators."""
    m = spec.params.mass
    c_pp = 1.0 / (2.0 * m)
    if isinstance(spec, FreeAiry):
        h = QuadOp(c_pp=c_pp)
        return lambda t: h
    if isinstance(spec, LinearAiry):
        drive = spec.drive
        return lambda t: QuadOp(c_pp=c_pp, c_x=-drive.force_at(t))
    if isinstance(spec, ShoDisplaced):
        h = QuadOp(c_pp=c_pp, c_xx=0.5 * m * spec.omega**2)
        return lambda t: h
    raise TypeError(f"unknown scenario {spec!r}")


def initial_eigenpair(spec: ScenarioSpec) -> tuple[QuadOp, float]:
    """Operator with the t = 0 state as eigenfunction, and its eigenvalue.

    For the Airy scenarios the envelope solves a linear-ramp eigenproblem at
    zero eigenvalue.  For the oscillator the displaced, boosted eigenstate
    solves the correspondingly shifted oscillator operator, expanded here
    into polynomial coefficients.
    """
    m = spec.params.mass
    c_pp = 1.0 / (2.0 * m)
    if isinstance(spec, (FreeAiry, LinearAiry)):
        return QuadOp(c_pp=c_pp, c_x=spec.self_force), 0.0
    if isinstance(spec, ShoDisplaced):
        w, d0, v0 = spec.omega, spec.offset, spec.velocity
        op = QuadOp(
            c_pp=c_pp,
            c_xx=0.5 * m * w * w,
            c_x=-m * w * w * d0,
            c_p=-v0,
            c_0=0.5 * m * w * w * d0 * d0,
        )
        return op, spec.energy - 0.5 * m * v0 * v0
    raise TypeError(f"unknown scenario {spec!r}")


def heisenberg_map(spec: ScenarioSpec, t: float) -> AffineMap:
    """Affine transport of (x, p) by conjugation with the evolution up to t."""
    _check_time(t)
    m = spec.params.mass
    if isinstance(spec, FreeAiry):
        return AffineMap(a_xp=-t / m)
    if isinstance(spec, LinearAiry):
        a = spec.drive.impulse(t)
        b = spec.drive.impulse_integral(t)
        return AffineMap(a_xp=-t / m, s_x=(t * a - b) / m, s_p=-a)
    if isinstance(spec, ShoDisplaced):
        w = spec.omega
        c, s = math.cos(w * t), math.sin(w * t)
        return AffineMap(a_xx=c, a_xp=-s / (m * w), a_px=m * w * s, a_pp=c)
    raise TypeError(f"unknown scenario {spec!r}")


def impulse(spec: LinearAiry, t: float) -> float:
    """Running impulse of the drive, int_0^t F."""
    _check_time(t)
    if not isinstance(spec, LinearAiry):
        raise TypeError("impulse is defined for the driven scenario only")
    return spec.drive.impulse(t)


def impulse_integral(spec: LinearAiry, t: float) -> float:
    """Running integral of the impulse."""
    _check_time(t)
    if not isinstance(spec, LinearAiry):
        raise TypeError("impulse_integral is defined for the driven scenario only")
    return spec.drive.impulse_integral(t)


def impulse_square_integral(spec: LinearAiry, t: float) -> float:
    """Running integral of the squared impulse (enters the packet phase)."""
    _check_time(t)
    if not isinstance(spec, LinearAiry):
        raise TypeError("impulse_square_integral is defined for the driven scenario only")
    return spec.drive.impulse_square_integral(t)


def displacement(spec: ScenarioSpec, t: float) -> Displacement:
    """Closed-form packet displacement d(t) with its derivatives."""
    _check_time(t)
    m = spec.params.mass
    if isinstance(spec, FreeAiry):
        f = spec.self_force
        return Displacement(f * t * t / (2.0 * m), f * t / m, f / m)
    if isinstance(spec, LinearAiry):
        f = spec.self_force
        drive = spec.drive
        return Displacement(
            (f * t * t / 2.0 + drive.impulse_integral(t)) / m,
            (f * t + drive.impulse(t)) / m,
            (f + drive.force_at(t)) / m,
        )
    if isinstance(spec, ShoDisplaced):
        w, d0, v0 = spec.omega, spec.offset, spec.velocity
        c, s = math.cos(w * t), math.sin(w * t)
        return Displacement(
            d0 * c + v0 / w * s,
            v0 * c - d0 * w * s,
            -w * w * d0 * c - w * v0 * s,
        )
    raise TypeError(f"unknown scenario {spec!r}")


def preserving_hamiltonian(spec: ScenarioSpec, t: float) -> tuple[QuadOp, float]:
    """State-preserving operator at time t and its (time-independent) eigenvalue.

    Always computed by conjugating the t = 0 eigen-operator through the
    Heisenberg map, so derived coefficients (in particular scalar constants)
    come out of the algebra rather than from transcribed formulas.
    """
    op0, eigenvalue = initial_eigenpair(spec)
    return conjugate(heisenberg_map(spec, t), op0, spec.params.hbar), eigenvalue


def changing_hamiltonian(spec: ScenarioSpec, t: float) -> QuadOp:
    """State-changing remainder H(t) minus the state-preserving part."""
    h_t = hamiltonian(spec)(t)
    h_tilde, _ = preserving_hamiltonian(spec, t)
    return decompose(h_t, h_tilde)
