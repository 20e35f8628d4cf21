"""
Quantum-Torus Orbifold Calculator – Quantum Torus Algebra
═════════════════════════════════════════════════════════
Sparse Z^2-graded elements of the quantum torus.

A lattice point (n, m) names the normally ordered word U1^n U2^m.  Products
follow the single relation U2 U1 = lambda U1 U2, which gives

    (U1^a U2^b)(U1^c U2^d) = lambda^(b*c) U1^(a+c) U2^(b+d).

The SL2(Z) action sends the generators to

    rho_g(U1) = mu^(g11*g21) U1^g11 U2^g21
    rho_g(U2) = mu^(g12*g22) U1^g12 U2^g22

and every other monomial image is obtained by multiplying those images out.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Tuple

from algebra.groups import GroupElement
from algebra.scalars import (
    ONE,
    ZERO,
    Scalar,
    ScalarLike,
    lambda_power,
    mu_power,
    render_short,
    scalar,
    scalar_invert,
)

logger = logging.getLogger("torus")

Lattice = Tuple[int, int]
Monomial = Tuple[Scalar, Lattice]


# ═══════════════════════════════════════════════
# Lattice helpers
# ═══════════════════════════════════════════════

def monomial_order_key(v: Lattice) -> Tuple[int, int, int]:
    """Deterministic monomial order: total degree first, nonnegative quadrant wins ties."""
    n, m = v
    return (abs(n) + abs(m), -n, -m)


@lru_cache(maxsize=None)
def lattice_box(radius: int) -> Tuple[Lattice, ...]:
    """All (n, m) with |n|, |m| <= radius, in monomial order."""
    if radius < 0:
        return ()
    points = [
        (n, m)
        for n in range(-radius, radius + 1)
        for m in range(-radius, radius + 1)
    ]
    return tuple(sorted(points, key=monomial_order_key))


def lattice_add(v: Lattice, w: Lattice) -> Lattice:
    return (v[0] + w[0], v[1] + w[1])


def lattice_sub(v: Lattice, w: Lattice) -> Lattice:
    return (v[0] - w[0], v[1] - w[1])


def sup_norm(v: Lattice) -> int:
    return max(abs(v[0]), abs(v[1]))


# ═══════════════════════════════════════════════
# Element type
# ═══════════════════════════════════════════════

class TorusElement:
    """
    Finite sum of coefficient * U1^n U2^m.

    Immutable: arithmetic returns new elements.  No stored coefficient is zero,
    so two elements are equal exactly when their coefficient tables are.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Lattice, ScalarLike] | None = None):
        clean: Dict[Lattice, Scalar] = {}
        for v, c in (terms or {}).items():
            c = scalar(c)
            if c:
                clean[(int(v[0]), int(v[1]))] = c
        self._terms = clean
        self._hash = None

    # ── construction ──────────────────────
    @classmethod
    def _raw(cls, terms: Dict[Lattice, Scalar]) -> "TorusElement":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "TorusElement":
        return cls._raw({})

    @classmethod
    def one(cls) -> "TorusElement":
        return cls._raw({(0, 0): ONE})

    # ── access ────────────────────────────
    def items(self) -> Iterator[Tuple[Lattice, Scalar]]:
        return iter(self._terms.items())

    def support(self) -> List[Lattice]:
        return sorted(self._terms, key=monomial_order_key)

    def coefficient(self, v: Lattice) -> Scalar:
        return self._terms.get(v, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, v: Lattice) -> bool:
        return v in self._terms

    # ── linear structure ──────────────────
    def __add__(self, other: "TorusElement") -> "TorusElement":
        out = dict(self._terms)
        for v, c in other._terms.items():
            s = out.get(v)
            s = c if s is None else s + c
            if s:
                out[v] = s
            else:
                out.pop(v, None)
        return TorusElement._raw(out)

    def __neg__(self) -> "TorusElement":
        return TorusElement._raw({v: -c for v, c in self._terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "TorusElement":
        c = scalar(c)
        if not c:
            return TorusElement.zero()
        return TorusElement._raw({v: c * x for v, x in self._terms.items()})

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        return multiply(self, other)

    # ── comparison ────────────────────────
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ── rendering ─────────────────────────
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for v in self.support():
            parts.append(f"{render_short(self._terms[v])} * U1^{v[0]} U2^{v[1]}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"n": v[0], "m": v[1], "coeff": render_short(self._terms[v])}
                for v in self.support()
            ]
        }

    def __repr__(self) -> str:
        return f"TorusElement({self.to_text()})"


def monomial(n: int, m: int, coeff: ScalarLike = 1) -> TorusElement:
    return TorusElement({(n, m): coeff})


# ═══════════════════════════════════════════════
# Multiplication
# ═══════════════════════════════════════════════

def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    (c1, (p, q)), (c2, (r, s)) = a, b
    return (c1 * c2 * lambda_power(q * r), (p + r, q + s))


def monomial_inverse(a: Monomial) -> Monomial:
    """(c x(p,q))^-1 = c^-1 lambda^(pq) x(-p,-q)."""
    c, (p, q) = a
    return (scalar_invert(c) * lambda_power(p * q), (-p, -q))


def monomial_power(a: Monomial, k: int) -> Monomial:
    if k < 0:
        a, k = monomial_inverse(a), -k
    out: Monomial = (ONE, (0, 0))
    for _ in range(k):
        out = monomial_product(out, a)
    return out


def multiply(a: TorusElement, b: TorusElement) -> TorusElement:
    out: Dict[Lattice, Scalar] = {}
    for (p, q), c1 in a.items():
        for (r, s), c2 in b.items():
            v = (p + r, q + s)
            term = c1 * c2 * lambda_power(q * r)
            acc = out.get(v)
            out[v] = term if acc is None else acc + term
    return TorusElement._raw({v: c for v, c in out.items() if c})


# ═══════════════════════════════════════════════
# SL2(Z) action
# ═══════════════════════════════════════════════

@lru_cache(maxsize=None)
def generator_images(g: GroupElement) -> Tuple[Monomial, Monomial]:
    """rho_g(U1) and rho_g(U2) as (coefficient, exponent) monomials."""
    u1 = (mu_power(g.g11 * g.g21), (g.g11, g.g21))
    u2 = (mu_power(g.g12 * g.g22), (g.g12, g.g22))
    return u1, u2


@lru_cache(maxsize=None)
def monomial_image(g: GroupElement, n: int, m: int) -> Monomial:
    """rho_g(U1^n U2^m) = rho_g(U1)^n rho_g(U2)^m."""
    u1, u2 = generator_images(g)
    coeff, target = monomial_product(monomial_power(u1, n), monomial_power(u2, m))
    if target != g.apply((n, m)):
        raise AssertionError(f"monomial image of {(n, m)} landed on {target}")
    return coeff, target


def act(g: GroupElement, x: TorusElement) -> TorusElement:
    if g.is_identity():
        return x
    out: Dict[Lattice, Scalar] = {}
    for (n, m), c in x.items():
        coeff, target = monomial_image(g, n, m)
        out[target] = c * coeff
    # g is a bijection on the lattice, so no two terms collide
    return TorusElement._raw(out)


# ═══════════════════════════════════════════════
# Canonical derivations
# ═══════════════════════════════════════════════

def derivation_delta(axis: int, x: TorusElement) -> TorusElement:
    """delta_1 multiplies U1^n U2^m by n, delta_2 by m (the 2*pi*i factor is dropped)."""
    if axis not in (1, 2):
        raise ValueError(f"derivation axis must be 1 or 2 (got {axis})")
    index = axis - 1
    return TorusElement._raw(
        {v: c * v[index] for v, c in x.items() if v[index] != 0}
    )
