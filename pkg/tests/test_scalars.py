"""
Quantum-Torus Orbifold Calculator – Scalar Field Tests
══════════════════════════════════════════════════════
Exact arithmetic in Q(mu), lambda = mu^2.

Run: python -m pytest tests/test_scalars.py -v
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra.scalars import (
    LAMBDA,
    MU,
    ONE,
    ZERO,
    canonical,
    lambda_power,
    mu_power,
    render,
    scalar,
    scalar_arith,
    scalar_invert,
    to_complex,
)
from config.settings import LAMBDA_CHECK_RANGE


# ─── helpers ────────────────────────────
def _poly(coeffs):
    total = ZERO
    for k, c in enumerate(coeffs):
        total = total + scalar(c) * mu_power(k)
    return total


_coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


@st.composite
def _scalars(draw):
    numerator = _poly(draw(_coeffs))
    denominator = _poly(draw(_coeffs.filter(any)))
    return numerator / denominator


# ═══════════════════════════════════════════
# Worked values
# ═══════════════════════════════════════════

def test_mu_squared_is_lambda():
    assert scalar_arith(MU, MU, "mul") == LAMBDA


def test_additive_inverse():
    assert scalar_arith(MU, -MU, "add") == ZERO


def test_polynomial_division():
    product = scalar_arith(ONE - LAMBDA, scalar_invert(ONE - MU), "mul")
    assert product == ONE + MU


def test_unknown_operation_rejected():
    with pytest.raises(ValueError):
        scalar_arith(MU, MU, "div")


def test_invert_mu_cubed():
    inv = scalar_invert(mu_power(3))
    assert inv * mu_power(3) == ONE
    assert inv == mu_power(-3)


def test_invert_lambda_minus_one():
    inv = scalar_invert(LAMBDA - ONE)
    assert inv * (LAMBDA - ONE) == ONE
    assert render(inv) == "(1)/(mu**2 - 1)"


def test_invert_zero_raises():
    with pytest.raises(ZeroDivisionError):
        scalar_invert(ZERO)


def test_mu_powers():
    assert mu_power(0) == ONE
    assert mu_power(2) == LAMBDA
    assert mu_power(-1) * MU == ONE
    assert lambda_power(-2) * mu_power(4) == ONE


def test_lambda_powers_never_one():
    for n in range(-LAMBDA_CHECK_RANGE, LAMBDA_CHECK_RANGE + 1):
        if n == 0:
            continue
        assert mu_power(2 * n) - ONE != ZERO, f"lambda^{n} collapsed to 1"


def test_scalar_coercion():
    assert scalar(3) == ONE + ONE + ONE
    assert scalar(Fraction(1, 2)) * 2 == ONE
    with pytest.raises(TypeError):
        scalar("mu")


def test_denominator_sign_normalized():
    x = ONE / (ONE - LAMBDA)
    assert x.denom.LC > 0
    assert x == -(ONE / (LAMBDA - ONE))


def test_complex_evaluation():
    value = to_complex(LAMBDA + ONE, 1j)
    assert abs(value - 0) < 1e-12


# ═══════════════════════════════════════════
# Field laws
# ═══════════════════════════════════════════

@settings(max_examples=40, deadline=None)
@given(_scalars(), _scalars(), _scalars())
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@settings(max_examples=40, deadline=None)
@given(_scalars())
def test_inverse_law(a):
    if a:
        assert a * scalar_invert(a) == ONE


@settings(max_examples=40, deadline=None)
@given(_scalars())
def test_canonical_idempotent(a):
    once = canonical(a)
    assert canonical(once) == once
    assert once == a
