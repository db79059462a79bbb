"""Operator-polynomial algebra: construction, conjugation, composition.

The load-bearing oracle is classical evaluation: substituting an affine
phase-space map into a quadratic polynomial and evaluating at a point must
agree with evaluating the original polynomial at the mapped point.  The
symmetrized cross term makes this exact for the operator algebra as well,
so no quantum correction shows up anywhere.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nswp.opalg import (
    IDENTITY_MAP,
    AffineMap,
    QuadOp,
    SymplecticError,
    compose,
    conjugate,
    decompose,
    is_linear,
)

finite = st.floats(-5.0, 5.0, allow_nan=False, allow_infinity=False)


def quadops():
    return st.builds(QuadOp, finite, finite, finite, finite, finite, finite)


@st.composite
def symplectic_maps(draw):
    # R(a) @ diag(mu, 1/mu) @ R(b) spans the group; determinant stays 1 to
    # roundoff by construction
    a = draw(st.floats(-3.0, 3.0, allow_nan=False))
    b = draw(st.floats(-3.0, 3.0, allow_nan=False))
    mu = draw(st.floats(0.5, 2.0, allow_nan=False))
    rot_a = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
    rot_b = np.array([[math.cos(b), -math.sin(b)], [math.sin(b), math.cos(b)]])
    linear = rot_a @ np.diag([mu, 1.0 / mu]) @ rot_b
    return AffineMap(
        a_xx=linear[0, 0],
        a_xp=linear[0, 1],
        a_px=linear[1, 0],
        a_pp=linear[1, 1],
        s_x=draw(st.floats(-3.0, 3.0, allow_nan=False)),
        s_p=draw(st.floats(-3.0, 3.0, allow_nan=False)),
    )


def classical_value(op: QuadOp, x: float, p: float) -> float:
    return (
        op.c_pp * p * p
        + op.c_xx * x * x
        + op.c_xp * x * p
        + op.c_x * x
        + op.c_p * p
        + op.c_0
    )


def mapped_point(m: AffineMap, x: float, p: float) -> tuple[float, float]:
    return (
        m.a_xx * x + m.a_xp * p + m.s_x,
        m.a_px * x + m.a_pp * p + m.s_p,
    )


class TestQuadOp:
    def test_coefficients_order(self):
        op = QuadOp(c_pp=1.0, c_xx=2.0, c_xp=3.0, c_x=4.0, c_p=5.0, c_0=6.0)
        assert op.coefficients() == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)

    def test_defaults_are_zero(self):
        assert QuadOp().coefficients() == (0.0,) * 6

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            QuadOp(c_x=float("nan"))
        with pytest.raises(ValueError):
            QuadOp(c_pp=float("inf"))

    def test_arithmetic(self):
        a = QuadOp(c_pp=0.5, c_x=1.0)
        b = QuadOp(c_pp=0.25, c_p=-2.0)
        assert (a + b).coefficients() == (0.75, 0.0, 0.0, 1.0, -2.0, 0.0)
        assert (a - b).coefficients() == (0.25, 0.0, 0.0, 1.0, 2.0, 0.0)
        assert (-a).coefficients() == (-0.5, 0.0, 0.0, -1.0, 0.0, 0.0)

    def test_isclose(self):
        a = QuadOp(c_x=1.0)
        assert a.isclose(QuadOp(c_x=1.0 + 1e-15))
        assert not a.isclose(QuadOp(c_x=1.0 + 1e-6))

    def test_is_linear(self):
        assert is_linear(QuadOp(c_x=1.0, c_p=2.0, c_0=3.0))
        assert not is_linear(QuadOp(c_pp=1e-6))
        assert not is_linear(QuadOp(c_xx=1.0))
        assert not is_linear(QuadOp(c_xp=1.0))


class TestConjugateExamples:
    def test_identity_map_is_noop(self):
        op = QuadOp(c_pp=0.5, c_xx=0.25, c_xp=0.1, c_x=1.0, c_p=-2.0, c_0=3.0)
        assert conjugate(IDENTITY_MAP, op).coefficients() == op.coefficients()

    def test_free_shear(self):
        # x -> x - t p at t = 1 applied to p^2/2 + x/2
        shear = AffineMap(a_xx=1.0, a_xp=-1.0, a_px=0.0, a_pp=1.0)
        op = QuadOp(c_pp=0.5, c_x=0.5)
        out = conjugate(shear, op)
        assert out.isclose(QuadOp(c_pp=0.5, c_x=0.5, c_p=-0.5), tol=1e-15)

    def test_pure_shift_expands_square(self):
        # (x+2)^2 + (p-3) + 5 = x^2 + 4x + p + 6
        shift = AffineMap(a_xx=1.0, a_xp=0.0, a_px=0.0, a_pp=1.0, s_x=2.0, s_p=-3.0)
        op = QuadOp(c_xx=1.0, c_p=1.0, c_0=5.0)
        out = conjugate(shift, op)
        assert out.isclose(QuadOp(c_xx=1.0, c_x=4.0, c_p=1.0, c_0=6.0), tol=1e-15)

    def test_quarter_turn_oscillator(self):
        # rotating p^2/2 + x^2/2 - x + 1/2 by a quarter period swaps the
        # linear coefficient from x onto p and leaves the quadratic core fixed
        theta = math.pi / 2
        rot = AffineMap(
            a_xx=math.cos(theta),
            a_xp=-math.sin(theta),
            a_px=math.sin(theta),
            a_pp=math.cos(theta),
        )
        op = QuadOp(c_pp=0.5, c_xx=0.5, c_x=-1.0, c_0=0.5)
        out = conjugate(rot, op)
        expected = QuadOp(c_pp=0.5, c_xx=0.5, c_p=1.0, c_0=0.5)
        assert out.isclose(expected, tol=1e-12)

    def test_rejects_non_symplectic(self):
        bad = AffineMap(a_xx=2.0, a_xp=0.0, a_px=0.0, a_pp=1.0)
        with pytest.raises(SymplecticError):
            conjugate(bad, QuadOp(c_pp=0.5))


class TestConjugateProperties:
    @given(symplectic_maps(), quadops(), st.floats(-3, 3), st.floats(-3, 3))
    @settings(max_examples=200)
    def test_matches_classical_substitution(self, m, op, x, p):
        lhs = classical_value(conjugate(m, op), x, p)
        rhs = classical_value(op, *mapped_point(m, x, p))
        assert abs(lhs - rhs) <= 1e-8 * (1.0 + abs(rhs))

    @given(symplectic_maps(), quadops(), quadops())
    def test_linear_in_the_operator(self, m, a, b):
        joint = conjugate(m, a + b)
        split = conjugate(m, a) + conjugate(m, b)
        assert joint.isclose(split, tol=1e-9)

    @given(symplectic_maps(), quadops())
    def test_inverse_map_round_trips(self, m, op):
        linear = np.array([[m.a_xx, m.a_xp], [m.a_px, m.a_pp]])
        inv = np.linalg.inv(linear)
        shift = -inv @ np.array([m.s_x, m.s_p])
        m_inv = AffineMap(
            a_xx=inv[0, 0],
            a_xp=inv[0, 1],
            a_px=inv[1, 0],
            a_pp=inv[1, 1],
            s_x=shift[0],
            s_p=shift[1],
        )
        back = conjugate(m_inv, conjugate(m, op))
        scale = 1.0 + max(abs(c) for c in op.coefficients())
        assert all(
            abs(a - b) <= 1e-7 * scale
            for a, b in zip(back.coefficients(), op.coefficients())
        )


class TestCompose:
    def test_identity_neutral(self):
        m = AffineMap(a_xx=1.0, a_xp=-0.5, a_px=0.0, a_pp=1.0, s_x=0.3, s_p=-0.1)
        for combined in (compose(m, IDENTITY_MAP), compose(IDENTITY_MAP, m)):
            assert np.allclose(
                [combined.a_xx, combined.a_xp, combined.a_px, combined.a_pp,
                 combined.s_x, combined.s_p],
                [m.a_xx, m.a_xp, m.a_px, m.a_pp, m.s_x, m.s_p],
            )

    def test_shifts_add(self):
        a = AffineMap(a_xx=1.0, a_xp=0.0, a_px=0.0, a_pp=1.0, s_x=1.0, s_p=2.0)
        b = AffineMap(a_xx=1.0, a_xp=0.0, a_px=0.0, a_pp=1.0, s_x=-0.25, s_p=4.0)
        combined = compose(a, b)
        assert combined.s_x == 0.75
        assert combined.s_p == 6.0

    def test_rotations_add_angles(self):
        def rotation(theta):
            return AffineMap(
                a_xx=math.cos(theta),
                a_xp=-math.sin(theta),
                a_px=math.sin(theta),
                a_pp=math.cos(theta),
            )

        combined = compose(rotation(0.2), rotation(0.5))
        target = rotation(0.7)
        assert abs(combined.a_xx - target.a_xx) < 1e-14
        assert abs(combined.a_xp - target.a_xp) < 1e-14

    def test_thousand_small_rotations(self):
        theta = 2.0 * math.pi / 1000.0
        step = AffineMap(
            a_xx=math.cos(theta),
            a_xp=-math.sin(theta),
            a_px=math.sin(theta),
            a_pp=math.cos(theta),
        )
        acc = IDENTITY_MAP
        for _ in range(1000):
            acc = compose(acc, step)
        assert abs(acc.a_xx - 1.0) < 1e-6
        assert abs(acc.a_xp) < 1e-6
        assert abs(acc.determinant() - 1.0) < 1e-9

    def test_rejects_non_symplectic(self):
        bad = AffineMap(a_xx=0.5, a_xp=0.0, a_px=0.0, a_pp=1.0)
        with pytest.raises(SymplecticError):
            compose(bad, IDENTITY_MAP)

    @given(symplectic_maps(), symplectic_maps(), quadops())
    @settings(max_examples=100)
    def test_homomorphism(self, outer, inner, op):
        joint = conjugate(compose(outer, inner), op)
        nested = conjugate(outer, conjugate(inner, op))
        scale = 1.0 + max(abs(c) for c in nested.coefficients())
        assert all(
            abs(a - b) <= 1e-8 * scale
            for a, b in zip(joint.coefficients(), nested.coefficients())
        )


class TestDecompose:
    def test_complement_sums_back(self):
        h = QuadOp(c_pp=0.5, c_xx=0.5)
        h_tilde = QuadOp(c_pp=0.5, c_xx=0.5, c_x=-1.0, c_p=0.25, c_0=0.5)
        h_c = decompose(h, h_tilde)
        assert (h_tilde + h_c).coefficients() == h.coefficients()
        assert h_c.coefficients() == (0.0, 0.0, 0.0, 1.0, -0.25, -0.5)

    @given(quadops(), quadops())
    def test_round_trip_property(self, h, h_tilde):
        h_c = decompose(h, h_tilde)
        total = h_tilde + h_c
        assert total.isclose(h, tol=1e-12)


class TestAffineMap:
    def test_determinant(self):
        m = AffineMap(a_xx=2.0, a_xp=1.0, a_px=3.0, a_pp=2.0)
        assert m.determinant() == 1.0
        assert m.is_symplectic()

    def test_not_symplectic(self):
        assert not AffineMap(a_xx=2.0, a_xp=0.0, a_px=0.0, a_pp=1.0).is_symplectic()
