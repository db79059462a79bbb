"""Grid representation of wave functions and the spectral machinery on them.

The spatial grid is periodic (x_max is the wrap point, not a sample), so
momentum acts exactly on resolved Fourier modes.  Three consequences drive
the design here:

* Airy envelopes never decay on the left, so a periodic representation has a
  jump at the wrap seam.  All windowed diagnostics therefore work on states
  premultiplied by a smooth edge taper (:func:`edge_taper`) that is exactly 1
  on the trusted window and rolls off to 0 at the seam; without it the seam
  contaminates spectral derivatives everywhere on the grid.
* The propagator damps outflow with a cosine-squared absorbing mask over the
  outer fraction of the domain each step, for the same reason.
* Norms and comparisons are restricted to a trusted :class:`Window`, since
  the Airy states are not square integrable and global norms mean nothing.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .opalg import QuadOp, TimeQuadOp, is_linear
from .scenarios import PhysicalParams

__all__ = [
    "Grid",
    "WaveFunction",
    "Window",
    "PropagatorConfig",
    "UnsupportedOperatorError",
    "edge_taper",
    "apply_quadop",
    "eigen_residual",
    "propagate",
    "linear_step",
    "windowed_error",
    "peak_track",
    "write_csv",
    "save_npz",
    "load_npz",
]

#: On-disk format version for the binary snapshot round trip.
SNAPSHOT_FORMAT = 1


class UnsupportedOperatorError(ValueError):
    """Raised when an operator has terms a numeric routine cannot realize."""


@dataclass(frozen=True)
class Grid:
    """Uniform periodic spatial grid.

    ``x_max`` is the periodic wrap point; samples run from ``x_min`` to
    ``x_max - dx``.  ``n`` must be a power of two of at least 256 so the
    spectral transforms stay fast and well resolved.
    """

    x_min: float
    x_max: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if self.x_max <= self.x_min:
            raise ValueError(f"x_max must exceed x_min, got [{self.x_min}, {self.x_max}]")
        n = self.n
        if n < 256 or (n & (n - 1)) != 0:
            raise ValueError(f"n must be a power of two >= 256, got {n!r}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n

    @cached_property
    def points(self) -> np.ndarray:
        x = self.x_min + self.dx * np.arange(self.n)
        x.setflags(write=False)
        return x

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        k = 2.0 * np.pi * np.fft.fftfreq(self.n, self.dx)
        k.setflags(write=False)
        return k


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex samples of a state on a grid, stamped with its time."""

    grid: Grid
    samples: np.ndarray
    time: float

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=complex, copy=True)
        if samples.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} samples, got shape {samples.shape}"
            )
        if not np.all(np.isfinite(samples.view(float))):
            raise ValueError("samples must be finite")
        if not math.isfinite(self.time):
            raise ValueError("time stamp must be finite")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True)
class Window:
    """Trusted sub-interval for norms, residuals, and comparisons."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("window bounds must be finite")
        if self.hi <= self.lo:
            raise ValueError(f"window needs lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class PropagatorConfig:
    """Split-step propagation setup.

    ``steps`` is the step count per unit time; ``mask_fraction`` is the
    share of the domain per edge covered by the absorbing mask.
    """

    steps: int = 4096
    mask_fraction: float = 0.1
    scheme: str = "strang"

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps!r}")
        if not 0.0 <= self.mask_fraction <= 0.25:
            raise ValueError(
                f"mask_fraction must lie in [0, 0.25], got {self.mask_fraction!r}"
            )
        if self.scheme != "strang":
            raise ValueError(f"unsupported scheme {self.scheme!r}")


def _window_slice(grid: Grid, window: Window) -> np.ndarray:
    if not (grid.x_min < window.lo and window.hi < grid.x_max):
        raise ValueError(
            f"window [{window.lo}, {window.hi}] must lie strictly inside "
            f"the grid [{grid.x_min}, {grid.x_max}]"
        )
    mask = (grid.points >= window.lo) & (grid.points <= window.hi)
    if not mask.any():
        raise ValueError("window contains no grid points")
    return mask


def _smoothstep(u: np.ndarray) -> np.ndarray:
    """C-infinity ramp: 0 for u <= 0, 1 for u >= 1."""
    u = np.clip(u, 0.0, 1.0)
    out = np.zeros_like(u)
    inner = (u > 0.0) & (u < 1.0)
    ui = u[inner]
    rise = np.exp(-1.0 / ui)
    fall = np.exp(-1.0 / (1.0 - ui))
    out[inner] = rise / (rise + fall)
    out[u >= 1.0] = 1.0
    return out


def edge_taper(grid: Grid, window: Window, margin: float = 4.0) -> np.ndarray:
    """Smooth weight, exactly 1 on the window plus ``margin``, 0 at the seam.

    Multiplying a state by this before a spectral operation removes the
    periodic-wrap discontinuity without touching anything measured on the
    window.  The flat region is clipped so a nonzero roll-off always remains
    inside the domain.
    """
    _window_slice(grid, window)
    span = grid.x_max - grid.x_min
    flat_lo = max(window.lo - margin, grid.x_min + 0.02 * span)
    flat_hi = min(window.hi + margin, grid.x_max - 0.02 * span)
    x = grid.points
    left = _smoothstep((x - grid.x_min) / (flat_lo - grid.x_min))
    right = _smoothstep((grid.x_max - x) / (grid.x_max - flat_hi))
    return left * right


def _spectral_momentum(psi: np.ndarray, grid: Grid, hbar: float, power: int) -> np.ndarray:
    spectrum = np.fft.fft(psi)
    return np.fft.ifft((hbar * grid.wavenumbers) ** power * spectrum)


def apply_quadop(op: QuadOp, psi: WaveFunction, params: PhysicalParams) -> WaveFunction:
    """Apply an operator polynomial to grid samples.

    Momentum terms act spectrally, position terms pointwise, and the
    symmetrized cross term as the average of its two orderings.
    """
    grid = psi.grid
    x = grid.points
    hbar = params.hbar
    field = psi.samples
    out = (op.c_xx * x * x + op.c_x * x + op.c_0) * field
    if op.c_p != 0.0:
        out = out + op.c_p * _spectral_momentum(field, grid, hbar, 1)
    if op.c_pp != 0.0:
        out = out + op.c_pp * _spectral_momentum(field, grid, hbar, 2)
    if op.c_xp != 0.0:
        p_psi = _spectral_momentum(field, grid, hbar, 1)
        p_xpsi = _spectral_momentum(x * field, grid, hbar, 1)
        out = out + 0.5 * op.c_xp * (x * p_psi + p_xpsi)
    return WaveFunction(grid=grid, samples=out, time=psi.time)


def eigen_residual(
    op: QuadOp,
    e_tilde: float,
    psi: WaveFunction,
    window: Window,
    params: PhysicalParams | None = None,
    margin: float = 4.0,
) -> float:
    """Relative L2 residual of the eigenvalue relation on the window.

    Computes ||(op - e_tilde) psi|| / ||psi|| over the window, with the state
    edge-tapered first so the periodic seam cannot leak into the spectral
    derivatives (the taper is identity on the window itself).
    """
    if params is None:
        params = PhysicalParams()
    grid = psi.grid
    mask = _window_slice(grid, window)
    tapered = WaveFunction(
        grid=grid, samples=psi.samples * edge_taper(grid, window, margin), time=psi.time
    )
    denom = math.sqrt(float(np.sum(np.abs(tapered.samples[mask]) ** 2)))
    if denom == 0.0:
        raise ValueError("state vanishes on the window")
    shifted = QuadOp(
        c_pp=op.c_pp,
        c_xx=op.c_xx,
        c_xp=op.c_xp,
        c_x=op.c_x,
        c_p=op.c_p,
        c_0=op.c_0 - e_tilde,
    )
    image = apply_quadop(shifted, tapered, params)
    return math.sqrt(float(np.sum(np.abs(image.samples[mask]) ** 2))) / denom


def windowed_error(a: WaveFunction, b: WaveFunction, window: Window) -> float:
    """Relative L2 distance on the window after removing one global phase.

    The phase is the amplitude-weighted mean phase difference over the
    window (the argument of the windowed inner product), which minimizes the
    windowed distance over all global phases.
    """
    if a.grid != b.grid:
        raise ValueError("states live on different grids")
    mask = _window_slice(a.grid, window)
    aw = a.samples[mask]
    bw = b.samples[mask]
    denom = math.sqrt(float(np.sum(np.abs(bw) ** 2)))
    if denom == 0.0:
        raise ValueError("reference state vanishes on the window")
    overlap = complex(np.sum(np.conj(bw) * aw))
    if overlap != 0.0:
        aw = aw * (abs(overlap) / overlap)
    return math.sqrt(float(np.sum(np.abs(aw - bw) ** 2))) / denom


def peak_track(psi: WaveFunction, window: Window) -> float:
    """Position of the density maximum in the window, sub-cell refined.

    Finds the largest |psi|^2 sample in the window and refines with the
    three-point parabola through it and its neighbors.  The maximum must be
    interior to the window.
    """
    grid = psi.grid
    mask = _window_slice(grid, window)
    idx = np.flatnonzero(mask)
    density = np.abs(psi.samples[idx]) ** 2
    i = int(np.argmax(density))
    if i == 0 or i == len(idx) - 1:
        raise ValueError("density maximum sits on the window edge")
    below, peak, above = density[i - 1], density[i], density[i + 1]
    curvature = below - 2.0 * peak + above
    if curvature == 0.0:
        raise ValueError("density is locally flat; no unique maximum")
    shift = 0.5 * (below - above) / curvature
    return float(grid.points[idx[i]] + shift * grid.dx)


def _absorbing_mask(grid: Grid, fraction: float) -> np.ndarray:
    if fraction <= 0.0:
        return np.ones(grid.n)
    x = grid.points
    width = fraction * (grid.x_max - grid.x_min)
    mask = np.ones(grid.n)
    left = x < grid.x_min + width
    right = x > grid.x_max - width
    mask[left] = np.sin(0.5 * np.pi * (x[left] - grid.x_min) / width) ** 2
    mask[right] = np.sin(0.5 * np.pi * (grid.x_max - x[right]) / width) ** 2
    return mask


def _check_splittable(op: QuadOp, t: float) -> None:
    if abs(op.c_xp) > 1e-12 or abs(op.c_p) > 1e-12:
        raise UnsupportedOperatorError(
            f"operator at t={t!r} has cross or linear-momentum terms; "
            "the split-step scheme handles kinetic-plus-potential form only"
        )


def propagate(
    h: TimeQuadOp,
    psi0: WaveFunction,
    t1: float,
    cfg: PropagatorConfig,
    params: PhysicalParams,
) -> WaveFunction:
    """Strang split-step evolution of ``psi0`` under ``h`` up to time ``t1``.

    Each step applies a half potential factor, a full spectral kinetic
    factor, and the second half potential factor, with the time-dependent
    coefficients frozen at the step midpoint; the absorbing mask then damps
    the outer domain.  Second-order accurate in the step size on the window.
    """
    t0 = psi0.time
    if not (math.isfinite(t1) and t1 > t0):
        raise ValueError(f"target time {t1!r} must exceed the state time {t0!r}")
    grid = psi0.grid
    n_steps = max(1, round((t1 - t0) * cfg.steps))
    dt = (t1 - t0) / n_steps
    x = grid.points
    k = grid.wavenumbers
    hbar = params.hbar
    mask = _absorbing_mask(grid, cfg.mask_fraction)
    apply_mask = cfg.mask_fraction > 0.0
    field = np.array(psi0.samples, dtype=complex)
    cached_key = None
    half_potential = kinetic = None
    for j in range(n_steps):
        op = h(t0 + (j + 0.5) * dt)
        _check_splittable(op, t0 + (j + 0.5) * dt)
        key = (op.c_pp, op.c_xx, op.c_x, op.c_0)
        if key != cached_key:
            potential = op.c_xx * x * x + op.c_x * x + op.c_0
            half_potential = np.exp(-0.5j * potential * dt / hbar)
            kinetic = np.exp(-1j * op.c_pp * hbar * k * k * dt)
            cached_key = key
        field *= half_potential
        field = np.fft.ifft(kinetic * np.fft.fft(field))
        field *= half_potential
        if apply_mask:
            field *= mask
    return WaveFunction(grid=grid, samples=field, time=t1)


def linear_step(
    hc: QuadOp, psi: WaveFunction, dt: float, params: PhysicalParams
) -> WaveFunction:
    """Exact one-step evolution under a frozen linear operator a*p + b*x + c.

    The exponential factorizes exactly: a pointwise phase from the position
    part, a spectral translation by a*dt from the momentum part, and the
    scalar commutator phase exp(-i a b dt^2 / 2 hbar) stitching the two.
    """
    if not is_linear(hc):
        raise UnsupportedOperatorError(
            "linear_step needs an operator with no quadratic terms"
        )
    grid = psi.grid
    hbar = params.hbar
    a, b, c = hc.c_p, hc.c_x, hc.c_0
    field = psi.samples * np.exp(-1j * (b * grid.points + c) * dt / hbar)
    if a != 0.0:
        field = np.fft.ifft(np.exp(-1j * grid.wavenumbers * a * dt) * np.fft.fft(field))
        field = field * np.exp(-1j * a * b * dt * dt / (2.0 * hbar))
    return WaveFunction(grid=grid, samples=field, time=psi.time + dt)


def write_csv(psi: WaveFunction, path) -> None:
    """Write samples as CSV rows (x, re, im, abs2)."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x", "re", "im", "abs2"])
        for x, value in zip(psi.grid.points, psi.samples):
            writer.writerow(
                [
                    repr(float(x)),
                    repr(float(value.real)),
                    repr(float(value.imag)),
                    repr(float(abs(value) ** 2)),
                ]
            )


def save_npz(psi: WaveFunction, path) -> None:
    """Binary snapshot round-trip format, versioned."""
    np.savez(
        path,
        format_version=np.array(SNAPSHOT_FORMAT),
        x_min=np.array(psi.grid.x_min),
        x_max=np.array(psi.grid.x_max),
        n=np.array(psi.grid.n),
        time=np.array(psi.time),
        samples=psi.samples,
    )


def load_npz(path) -> WaveFunction:
    """Load a snapshot written by :func:`save_npz`."""
    with np.load(path) as data:
        version = int(data["format_version"])
        if version != SNAPSHOT_FORMAT:
            raise ValueError(
                f"snapshot format {version} unsupported (expected {SNAPSHOT_FORMAT})"
            )
        grid = Grid(float(data["x_min"]), float(data["x_max"]), int(data["n"]))
        return WaveFunction(grid=grid, samples=data["samples"], time=float(data["time"]))
