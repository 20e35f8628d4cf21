"""
Quantum-Torus Orbifold Calculator – Bar Cochain Tests
═════════════════════════════════════════════════════
Differential, cup product and Gerstenhaber bracket on monomial arguments,
including the twisted sectors.

Run: python -m pytest tests/test_bar.py -v
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import itertools
import random

import pytest

from algebra.groups import GroupElement, finite_subgroup
from algebra.scalars import LAMBDA, ONE, mu_power
from algebra.torus import TorusElement, monomial
from cohomology.bar import (
    bar_differential,
    cup_product,
    derivation_cochain,
    element_cochain,
    gerstenhaber_bracket,
    multiplication_cochain,
    table_cochain,
    unit_cochain,
    zero_cochain,
)

IDENTITY = GroupElement.identity()
MINUS_I = GroupElement(-1, 0, 0, -1)
U1 = monomial(1, 0)
U2 = monomial(0, 1)
POINTS = [(1, 0), (0, 1), (-1, 1)]


# ─── helpers ────────────────────────────
def _random_element(rng):
    out = TorusElement.zero()
    for _ in range(rng.randint(1, 2)):
        v = (rng.randint(-1, 1), rng.randint(-1, 1))
        out = out + monomial(*v, rng.randint(-3, 3) * mu_power(rng.randint(-1, 1)))
    return out


def _random_cochain(rng, degree, sector=IDENTITY):
    if degree == 0:
        return element_cochain(_random_element(rng), sector)
    table = {
        args: _random_element(rng)
        for args in itertools.product(POINTS + [(0, 0)], repeat=degree)
        if rng.random() < 0.6
    }
    return table_cochain(degree, table, sector)


def _grid(degree):
    return list(itertools.product(POINTS, repeat=degree))


def _agree(f, g):
    assert f.degree == g.degree
    assert f.sector == g.sector
    for args in _grid(f.degree):
        assert f.at(*args) == g.at(*args), f"differ at {args}"


# ═══════════════════════════════════════════
# Differential
# ═══════════════════════════════════════════

def test_differential_of_element_untwisted():
    d = bar_differential(element_cochain(U1))
    assert d.at((0, 1)) == monomial(1, 1, LAMBDA - ONE)


def test_differential_of_element_in_minus_identity_sector():
    d = bar_differential(element_cochain(U1, MINUS_I))
    assert d.at((0, 1)) == monomial(1, -1, mu_power(-2)) - monomial(1, 1)


def test_derivations_are_cocycles():
    for axis in (1, 2):
        d = bar_differential(derivation_cochain(axis))
        for args in _grid(2):
            assert not d.at(*args)


@pytest.mark.parametrize("label", ["Z2", "Z3", "Z4", "Z6"])
def test_differential_squares_to_zero(label):
    rng = random.Random(label)
    sector = finite_subgroup(label).generator
    for degree in (0, 1):
        f = _random_cochain(rng, degree, sector)
        dd = bar_differential(bar_differential(f))
        for args in _grid(degree + 2):
            assert not dd.at(*args), f"delta^2 != 0 at {args}"


def test_differential_range_checked():
    with pytest.raises(ValueError):
        bar_differential(zero_cochain(3))


# ═══════════════════════════════════════════
# Cup product
# ═══════════════════════════════════════════

def test_unit_is_neutral_for_cup():
    rng = random.Random(1)
    g = _random_cochain(rng, 2)
    _agree(cup_product(unit_cochain(), g), g)


def test_cup_of_derivations():
    cup = cup_product(derivation_cochain(1), derivation_cochain(2))
    assert cup.at((1, 0), (0, 1)) == monomial(1, 1)
    assert not cup.at((0, 1), (1, 0))


def test_cup_is_associative():
    rng = random.Random(2)
    sectors = finite_subgroup("Z4").elements
    f, g, h = (_random_cochain(rng, 1, sectors[k]) for k in (1, 2, 3))
    _agree(cup_product(cup_product(f, g), h), cup_product(f, cup_product(g, h)))


def test_cup_multiplies_sectors():
    z3 = finite_subgroup("Z3")
    f = zero_cochain(1, z3.element(1))
    g = zero_cochain(1, z3.element(2))
    assert cup_product(f, g).sector.is_identity()
    with pytest.raises(ValueError):
        cup_product(zero_cochain(2), zero_cochain(2))


# ═══════════════════════════════════════════
# Bracket
# ═══════════════════════════════════════════

def test_bracket_with_element_evaluates():
    rng = random.Random(3)
    f = _random_cochain(rng, 1)
    a = U1 + monomial(-1, 1, LAMBDA)
    assert gerstenhaber_bracket(f, element_cochain(a)).at() == f(a)


def test_derivations_commute():
    bracket = gerstenhaber_bracket(derivation_cochain(1), derivation_cochain(2))
    for args in _grid(1):
        assert not bracket.at(*args)


@pytest.mark.parametrize("label", ["Z2", "Z3", "Z4", "Z6"])
@pytest.mark.parametrize("degree", [0, 1, 2])
def test_differential_is_bracket_with_multiplication(label, degree):
    rng = random.Random(f"{label}{degree}")
    m = multiplication_cochain()
    for sector in (IDENTITY, finite_subgroup(label).generator):
        f = _random_cochain(rng, degree, sector)
        _agree(bar_differential(f), gerstenhaber_bracket(f, m).scale(-1))


def test_bracket_is_graded_antisymmetric():
    rng = random.Random(4)
    for _ in range(50):
        m, n = rng.choice([(1, 1), (1, 2), (2, 2), (0, 2)])
        f, g = _random_cochain(rng, m), _random_cochain(rng, n)
        sign = -1 if ((m - 1) * (n - 1)) % 2 else 1
        _agree(gerstenhaber_bracket(f, g), gerstenhaber_bracket(g, f).scale(-sign))


def test_graded_jacobi_identity():
    rng = random.Random(5)
    for _ in range(50):
        da, db, dc = rng.choice([(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 0)])
        f, g, h = (_random_cochain(rng, d) for d in (da, db, dc))

        def term(x, y, z, dx, dz):
            sign = -1 if ((dx - 1) * (dz - 1)) % 2 else 1
            return gerstenhaber_bracket(x, gerstenhaber_bracket(y, z)).scale(sign)

        total = term(f, g, h, da, dc) + term(g, h, f, db, da) + term(h, f, g, dc, db)
        for args in _grid(total.degree):
            assert not total.at(*args)


def test_leibniz_rule_along_derivations():
    rng = random.Random(6)
    for _ in range(50):
        c = derivation_cochain(1).scale(rng.randint(-2, 2)) + derivation_cochain(2).scale(rng.randint(-2, 2))
        a, b = _random_cochain(rng, 1), _random_cochain(rng, 1)
        lhs = gerstenhaber_bracket(cup_product(a, b), c)
        rhs = cup_product(gerstenhaber_bracket(a, c), b) + cup_product(a, gerstenhaber_bracket(b, c))
        _agree(lhs, rhs)


def test_leibniz_rule_with_element_factor():
    rng = random.Random(7)
    for _ in range(20):
        c = derivation_cochain(rng.choice((1, 2)))
        a, b = _random_cochain(rng, 0), _random_cochain(rng, 1)
        lhs = gerstenhaber_bracket(cup_product(a, b), c)
        rhs = cup_product(gerstenhaber_bracket(a, c), b) + cup_product(a, gerstenhaber_bracket(b, c))
        _agree(lhs, rhs)


def test_bracket_errors():
    with pytest.raises(ValueError):
        gerstenhaber_bracket(element_cochain(U1), element_cochain(U2))
    with pytest.raises(ValueError):
        gerstenhaber_bracket(zero_cochain(3), zero_cochain(2))
    g4 = finite_subgroup("Z4").generator
    omega = finite_subgroup("Z3").generator
    with pytest.raises(ValueError):
        gerstenhaber_bracket(zero_cochain(1, g4), zero_cochain(1, omega))
