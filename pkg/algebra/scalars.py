"""
Quantum-Torus Orbifold Calculator – Exact Scalars
═════════════════════════════════════════════════
Elements of the rational function field Q(mu).

mu is a formal transcendental standing for exp(i*pi*theta); the deformation
parameter is lambda = mu**2.  Because mu is transcendental, lambda**n - 1 is a
nonzero (hence invertible) scalar for every n != 0.

Scalars are sympy ``FracElement`` values of ``ZZ.frac_field(mu)``: numerator and
denominator are integer polynomials in mu with arbitrary-precision
coefficients, stored with gcd 1 and a denominator of positive leading
coefficient.  That normal form makes ``==`` an identity test.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import Symbol, ZZ
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from config.settings import MU_SYMBOL_NAME

logger = logging.getLogger("scalars")

SCALAR_DOMAIN = ZZ.frac_field(Symbol(MU_SYMBOL_NAME))
FIELD = SCALAR_DOMAIN.field
POLY_RING = FIELD.ring

Scalar = FracElement
Poly = PolyElement

MU: Scalar = FIELD.gens[0]
ZERO: Scalar = FIELD.zero
ONE: Scalar = FIELD.one
LAMBDA: Scalar = MU ** 2

ScalarLike = Union[Scalar, int, Fraction]

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
}


# ═══════════════════════════════════════════════
# Construction
# ═══════════════════════════════════════════════

def scalar(value: ScalarLike) -> Scalar:
    """Coerce an int, Fraction or Scalar into the field."""
    if isinstance(value, FracElement):
        if value.field != FIELD:
            raise TypeError("scalar belongs to a different field")
        return value
    if isinstance(value, Fraction):
        return FIELD(value.numerator) / FIELD(value.denominator)
    if isinstance(value, int):
        return FIELD(value)
    raise TypeError(f"cannot build a scalar from {type(value).__name__}")


def from_polys(numerator: Poly, denominator: Poly) -> Scalar:
    """Canonical scalar numerator/denominator (gcd removed, sign normalized)."""
    if not denominator:
        raise ZeroDivisionError("zero denominator")
    return FIELD.new(numerator, denominator)


def canonical(x: Scalar) -> Scalar:
    return from_polys(x.numer, x.denom)


@lru_cache(maxsize=None)
def mu_power(k: int) -> Scalar:
    """mu**k for any integer k; mu_power(2k) is lambda**k."""
    return MU ** k


def lambda_power(k: int) -> Scalar:
    return mu_power(2 * k)


# ═══════════════════════════════════════════════
# Arithmetic
# ═══════════════════════════════════════════════

def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    try:
        return _OPS[op](a, b)
    except KeyError:
        raise ValueError(f"unknown scalar operation {op!r}") from None


def scalar_invert(a: Scalar) -> Scalar:
    if not a:
        raise ZeroDivisionError("zero scalar has no inverse")
    return ONE / a


def is_zero(a: Scalar) -> bool:
    return not a


# ═══════════════════════════════════════════════
# Rendering & evaluation
# ═══════════════════════════════════════════════

def render(x: Scalar) -> str:
    """'(<numerator>)/(<denominator>)', polynomials in descending powers of mu."""
    return f"({x.numer})/({x.denom})"


def render_short(x: Scalar) -> str:
    """Compact form used inside torus-element text: drops a unit denominator."""
    if x.denom == POLY_RING.one:
        return str(x.numer)
    return render(x)


def poly_value(p: Poly, z: complex) -> complex:
    return sum(complex(int(c)) * z ** monom[0] for monom, c in p.terms())


def to_complex(x: Scalar, mu_value: complex) -> complex:
    """Floating evaluation at mu = mu_value (used only by the numeric oracle)."""
    return poly_value(x.numer, mu_value) / poly_value(x.denom, mu_value)
