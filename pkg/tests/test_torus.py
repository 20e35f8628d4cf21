"""
Quantum-Torus Orbifold Calculator – Quantum Torus Tests
═══════════════════════════════════════════════════════
Multiplication, the SL2(Z) action and the canonical derivations.

Run: python -m pytest tests/test_torus.py -v
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from hypothesis import given, settings, strategies as st

from algebra.groups import GroupElement, finite_subgroup
from algebra.scalars import LAMBDA, mu_power
from algebra.torus import (
    TorusElement,
    act,
    derivation_delta,
    lattice_add,
    lattice_box,
    lattice_sub,
    monomial,
    monomial_order_key,
    multiply,
)
from config.settings import GROUP_GENERATORS

U1 = monomial(1, 0)
U2 = monomial(0, 1)
Z4_GEN = GroupElement.from_matrix(((0, -1), (1, 0)))


# ─── helpers ────────────────────────────
@st.composite
def _elements(draw):
    terms = draw(st.dictionaries(
        st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
        st.tuples(st.integers(-3, 3).filter(bool), st.integers(-2, 2)),
        max_size=4,
    ))
    return TorusElement({v: c * mu_power(k) for v, (c, k) in terms.items()})


def _all_elements():
    return [g for label in GROUP_GENERATORS for g in finite_subgroup(label).elements]


# ═══════════════════════════════════════════
# Multiplication
# ═══════════════════════════════════════════

def test_commutation_relation():
    assert multiply(U2, U1) == monomial(1, 1, LAMBDA)


def test_square_of_u1u2():
    x = monomial(1, 1)
    assert multiply(x, x) == monomial(2, 2, LAMBDA)


def test_inverse_monomials():
    assert multiply(monomial(-1, 0), U1) == TorusElement.one()
    assert multiply(monomial(0, -1), U1) == monomial(1, -1, mu_power(-2))


def test_zero_coefficients_dropped():
    x = U1 + U2
    assert len(x - U2) == 1
    assert not (x - x)


@settings(max_examples=30, deadline=None)
@given(_elements())
def test_unit_law(x):
    one = TorusElement.one()
    assert multiply(one, x) == x
    assert multiply(x, one) == x


@settings(max_examples=30, deadline=None)
@given(_elements(), _elements(), _elements())
def test_associativity(x, y, z):
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


def test_text_and_json_forms():
    x = monomial(1, 2, 3)
    assert x.to_text() == "3 * U1^1 U2^2"
    assert x.to_json() == {"terms": [{"n": 1, "m": 2, "coeff": "3"}]}
    assert TorusElement.zero().to_text() == "0"


def test_lattice_box_order():
    box = lattice_box(1)
    assert len(box) == 9
    assert box[0] == (0, 0)
    assert box[1] == (1, 0), "nonnegative quadrant wins ties"
    assert list(box) == sorted(box, key=monomial_order_key)


def test_lattice_arithmetic():
    assert lattice_add((2, -1), (-3, 4)) == (-1, 3)
    assert lattice_sub((2, -1), (-3, 4)) == (5, -5)
    assert lattice_sub(lattice_add((1, 1), (0, -2)), (0, -2)) == (1, 1)


# ═══════════════════════════════════════════
# SL2(Z) action
# ═══════════════════════════════════════════

def test_z4_generator_images():
    assert act(Z4_GEN, U1) == U2
    assert act(Z4_GEN, U2) == monomial(-1, 0)


def test_z4_cube_sends_u1_to_u2_inverse():
    assert act(Z4_GEN.power(3), U1) == monomial(0, -1)


def test_z4_twice_inverts_u1():
    assert act(Z4_GEN, act(Z4_GEN, U1)) == monomial(-1, 0)


def test_z3_action_has_half_phase():
    omega = finite_subgroup("Z3").generator
    assert act(omega, U1) == monomial(0, -1)
    assert act(omega, U2) == monomial(1, -1, mu_power(-1))


def test_identity_action():
    x = U1 + monomial(2, -1, LAMBDA)
    assert act(GroupElement.identity(), x) == x


@settings(max_examples=15, deadline=None)
@given(_elements(), _elements())
def test_action_is_homomorphism(x, y):
    for g in _all_elements():
        assert act(g, multiply(x, y)) == multiply(act(g, x), act(g, y)), f"fails for {g.matrix}"


def test_action_composes_on_monomials():
    for label in GROUP_GENERATORS:
        group = finite_subgroup(label)
        for g in group.elements:
            for h in group.elements:
                gh = g.multiply(h)
                for v in lattice_box(3):
                    x = monomial(*v)
                    assert act(g, act(h, x)) == act(gh, x), f"{label}: {g.matrix}, {h.matrix} on {v}"


# ═══════════════════════════════════════════
# Derivations
# ═══════════════════════════════════════════

def test_delta1_scales_by_first_exponent():
    assert derivation_delta(1, monomial(3, 1)) == monomial(3, 1, 3)


def test_delta2_kills_pure_u1_powers():
    assert not derivation_delta(2, monomial(5, 0))


def test_delta1_on_reordered_word():
    assert derivation_delta(1, multiply(U2, U1)) == monomial(1, 1, LAMBDA)


def test_bad_axis_rejected():
    with pytest.raises(ValueError):
        derivation_delta(3, U1)


@settings(max_examples=30, deadline=None)
@given(_elements(), _elements())
def test_derivations_are_leibniz_and_commute(x, y):
    for axis in (1, 2):
        lhs = derivation_delta(axis, multiply(x, y))
        rhs = multiply(derivation_delta(axis, x), y) + multiply(x, derivation_delta(axis, y))
        assert lhs == rhs
    assert derivation_delta(1, derivation_delta(2, x)) == derivation_delta(2, derivation_delta(1, x))
