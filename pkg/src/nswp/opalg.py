"""Quadratic operator polynomials in x and p and their affine symplectic algebra.

A :class:`QuadOp` stores the real coefficients of

    c_pp * p**2 + c_xx * x**2 + c_xp * (x*p + p*x)/2
        + c_x * x + c_p * p + c_0

with the cross term kept in symmetric (Weyl) order.  An :class:`AffineMap`
records how a unitary conjugation transports the canonical pair,

    x -> a_xx * x + a_xp * p + s_x,      p -> a_px * x + a_pp * p + s_p,

and :func:`conjugate` pushes a QuadOp through such a map.  Because the cross
term is symmetrized, the substitution is exact: all commutator contributions
cancel pairwise and no hbar-dependent corrections appear.

:func:`decompose` splits a Hamiltonian into a part with a prescribed
eigenstate and the remainder that actually drives evolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "QuadOp",
    "AffineMap",
    "TimeQuadOp",
    "SymplecticError",
    "conjugate",
    "decompose",
    "compose",
    "is_linear",
]

#: Absolute tolerance for coefficient-wise QuadOp comparison.
COEFF_TOL = 1e-12

#: Maximum deviation of the symplectic determinant tolerated by conjugate().
SYMPLECTIC_TOL = 1e-9


class SymplecticError(ValueError):
    """Raised when an AffineMap does not preserve the canonical commutator."""


@dataclass(frozen=True)
class QuadOp:
    """Real-coefficient operator polynomial, at most quadratic in x and p.

    Parameters
    ----------
    c_pp, c_xx : float
        Coefficients of p**2 and x**2.
    c_xp : float
        Coefficient of the symmetrized cross term (x*p + p*x)/2.
    c_x, c_p : float
        Coefficients of x and p.
    c_0 : float
        Scalar constant.
    """

    c_pp: float = 0.0
    c_xx: float = 0.0
    c_xp: float = 0.0
    c_x: float = 0.0
    c_p: float = 0.0
    c_0: float = 0.0

    def __post_init__(self) -> None:
        for name in ("c_pp", "c_xx", "c_xp", "c_x", "c_p", "c_0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"coefficient {name} must be finite, got {value!r}")

    def coefficients(self) -> tuple[float, float, float, float, float, float]:
        """Return (c_pp, c_xx, c_xp, c_x, c_p, c_0)."""
        return (self.c_pp, self.c_xx, self.c_xp, self.c_x, self.c_p, self.c_0)

    def isclose(self, other: "QuadOp", tol: float = COEFF_TOL) -> bool:
        """Coefficient-wise comparison within an absolute tolerance."""
        return all(
            abs(a - b) <= tol
            for a, b in zip(self.coefficients(), other.coefficients())
        )

    def __add__(self, other: "QuadOp") -> "QuadOp":
        return QuadOp(*(a + b for a, b in zip(self.coefficients(), other.coefficients())))

    def __sub__(self, other: "QuadOp") -> "QuadOp":
        return QuadOp(*(a - b for a, b in zip(self.coefficients(), other.coefficients())))

    def __neg__(self) -> "QuadOp":
        return QuadOp(*(-a for a in self.coefficients()))


#: A time-parameterized family of operators.
TimeQuadOp = Callable[[float], QuadOp]


@dataclass(frozen=True)
class AffineMap:
    """Affine transport of the canonical pair under a unitary conjugation.

    The linear part must be symplectic (unit determinant) so that the
    commutator [x, p] is preserved.
    """

    a_xx: float = 1.0
    a_xp: float = 0.0
    a_px: float = 0.0
    a_pp: float = 1.0
    s_x: float = 0.0
    s_p: float = 0.0

    def __post_init__(self) -> None:
        for name in ("a_xx", "a_xp", "a_px", "a_pp", "s_x", "s_p"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"entry {name} must be finite, got {value!r}")

    def determinant(self) -> float:
        """Determinant of the linear part; 1 for a symplectic map."""
        return self.a_xx * self.a_pp - self.a_xp * self.a_px

    def is_symplectic(self, tol: float = COEFF_TOL) -> bool:
        return abs(self.determinant() - 1.0) <= tol


IDENTITY_MAP = AffineMap()


def conjugate(map: AffineMap, op: QuadOp, hbar: float = 1.0) -> QuadOp:
    """Transport ``op`` through ``map`` by exact affine substitution.

    Substitutes X = a_xx*x + a_xp*p + s_x and P = a_px*x + a_pp*p + s_p into
    the symmetrized polynomial and regroups.  For a symplectic map this equals
    the unitary conjugation U op U^-1; the symmetric cross-term basis makes
    the substitution exact, so ``hbar`` never enters the result (it is kept in
    the signature to document that the identity is ordering-sensitive).

    Raises
    ------
    SymplecticError
        If the determinant of the linear part deviates from 1 by more
        than ``SYMPLECTIC_TOL``.
    """
    del hbar  # no correction terms arise in the symmetric basis
    if abs(map.determinant() - 1.0) > SYMPLECTIC_TOL:
        raise SymplecticError(
            f"map determinant {map.determinant()!r} violates the symplectic condition"
        )
    axx, axp, apx, app = map.a_xx, map.a_xp, map.a_px, map.a_pp
    sx, sp = map.s_x, map.s_p
    cpp, cxx, cxp, cx, cp, c0 = op.coefficients()
    return QuadOp(
        c_pp=cxx * axp * axp + cpp * app * app + cxp * axp * app,
        c_xx=cxx * axx * axx + cpp * apx * apx + cxp * axx * apx,
        c_xp=2.0 * cxx * axx * axp
        + 2.0 * cpp * apx * app
        + cxp * (axx * app + axp * apx),
        c_x=2.0 * cxx * axx * sx
        + 2.0 * cpp * apx * sp
        + cxp * (axx * sp + apx * sx)
        + cx * axx
        + cp * apx,
        c_p=2.0 * cxx * axp * sx
        + 2.0 * cpp * app * sp
        + cxp * (axp * sp + app * sx)
        + cx * axp
        + cp * app,
        c_0=cxx * sx * sx + cpp * sp * sp + cxp * sx * sp + cx * sx + cp * sp + c0,
    )


def decompose(h: QuadOp, h_tilde: QuadOp) -> QuadOp:
    """Return the state-changing remainder ``h - h_tilde``.

    Plain coefficient-wise subtraction: the result is the part of ``h`` left
    over once the state-preserving part ``h_tilde`` is removed, so that
    ``decompose(h, h_tilde) + h_tilde`` reproduces ``h``.
    """
    return h - h_tilde


def compose(outer: AffineMap, inner: AffineMap) -> AffineMap:
    """Map equal to applying ``inner`` first, then ``outer``.

    Matches conjugation order: conjugating by the composite equals
    conjugating by ``inner`` and then conjugating the result by ``outer``.
    Concretely the substitution of the composite feeds ``outer``'s output
    formulas into ``inner``'s affine expression.
    """
    for m in (outer, inner):
        if abs(m.determinant() - 1.0) > SYMPLECTIC_TOL:
            raise SymplecticError(
                f"map determinant {m.determinant()!r} violates the symplectic condition"
            )
    return AffineMap(
        a_xx=inner.a_xx * outer.a_xx + inner.a_xp * outer.a_px,
        a_xp=inner.a_xx * outer.a_xp + inner.a_xp * outer.a_pp,
        a_px=inner.a_px * outer.a_xx + inner.a_pp * outer.a_px,
        a_pp=inner.a_px * outer.a_xp + inner.a_pp * outer.a_pp,
        s_x=inner.a_xx * outer.s_x + inner.a_xp * outer.s_p + inner.s_x,
        s_p=inner.a_px * outer.s_x + inner.a_pp * outer.s_p + inner.s_p,
    )


def is_linear(op: QuadOp, tol: float = COEFF_TOL) -> bool:
    """True when the operator has no quadratic content (at most a*p + b*x + c)."""
    return abs(op.c_pp) <= tol and abs(op.c_xx) <= tol and abs(op.c_xp) <= tol
