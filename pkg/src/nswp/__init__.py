"""Quadratic-Hamiltonian decomposition and nonspreading wave packets.

The package splits a time-dependent quadratic Hamiltonian into a
state-preserving part, of which the evolving state is an instantaneous
eigenstate, and a state-changing remainder that only translates and
rephases the packet.  Closed-form solutions for three scenarios (a free
Airy packet, a driven Airy packet, and a displaced oscillator eigenstate)
are evaluated exactly and cross-checked against a split-step spectral
propagator and classical trajectories.
"""

from .analytic import (
    PhaseBreakdown,
    airy_ai,
    analytic_wavefunction,
    phase_breakdown,
    sho_eigenfunction,
)
from .classical import ComparisonRecord, Trajectory, compare, hamilton_rhs, integrate
from .numerics import (
    Grid,
    PropagatorConfig,
    UnsupportedOperatorError,
    WaveFunction,
    Window,
    apply_quadop,
    edge_taper,
    eigen_residual,
    linear_step,
    load_npz,
    peak_track,
    propagate,
    save_npz,
    windowed_error,
    write_csv,
)
from .opalg import (
    IDENTITY_MAP,
    AffineMap,
    QuadOp,
    SymplecticError,
    compose,
    conjugate,
    decompose,
    is_linear,
)
from .scenarios import (
    Constant,
    Cosine,
    Displacement,
    FreeAiry,
    LinearAiry,
    PhysicalParams,
    ShoDisplaced,
    Tabulated,
    changing_hamiltonian,
    displacement,
    hamiltonian,
    heisenberg_map,
    impulse,
    impulse_integral,
    impulse_square_integral,
    initial_eigenpair,
    preserving_hamiltonian,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "ComparisonRecord",
    "Constant",
    "Cosine",
    "Displacement",
    "FreeAiry",
    "Grid",
    "IDENTITY_MAP",
    "LinearAiry",
    "PhaseBreakdown",
    "PhysicalParams",
    "PropagatorConfig",
    "QuadOp",
    "ShoDisplaced",
    "SymplecticError",
    "Tabulated",
    "Trajectory",
    "UnsupportedOperatorError",
    "WaveFunction",
    "Window",
    "airy_ai",
    "analytic_wavefunction",
    "apply_quadop",
    "changing_hamiltonian",
    "compare",
    "compose",
    "conjugate",
    "decompose",
    "displacement",
    "edge_taper",
    "eigen_residual",
    "hamilton_rhs",
    "hamiltonian",
    "heisenberg_map",
    "impulse",
    "impulse_integral",
    "impulse_square_integral",
    "initial_eigenpair",
    "integrate",
    "is_linear",
    "linear_step",
    "load_npz",
    "peak_track",
    "phase_breakdown",
    "preserving_hamiltonian",
    "propagate",
    "save_npz",
    "sho_eigenfunction",
    "windowed_error",
    "write_csv",
    "__version__",
]
