"""
Quantum-Torus Orbifold Calculator – Koszul Complex
══════════════════════════════════════════════════
The length-2 free bimodule resolution of the quantum torus

    0 -> A^e <e1^e2> --b2--> A^e <e1, e2> --b1--> A^e --eps--> A -> 0

    b1(1 (x) e_j)     = 1 (x) U_j - U_j (x) 1
    b2(1 (x) e1^e2)   = (U2 (x) 1 - lambda (x) U2) e1 - (lambda U1 (x) 1 - 1 (x) U1) e2
    eps(a (x) b)      = ab

and the twisted cochain complexes obtained by applying Hom(-, gamma A):

    gamma A --alpha1--> gamma A + gamma A --alpha2--> gamma A

    alpha1(phi)        = ((g.U1) phi - phi U1, (g.U2) phi - phi U2)
    alpha2(phi1, phi2) = (g.U2) phi1 - lambda phi1 U2 - lambda (g.U1) phi2 + phi2 U1

On the twisted bimodule a (x) b acts by phi -> g(a) phi b.  Dualizing b1 gives
-alpha1 and dualizing b2 gives alpha2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Set, Tuple

from algebra.groups import GroupElement
from algebra.scalars import LAMBDA, ONE, ZERO, Scalar, ScalarLike, lambda_power, scalar
from algebra.torus import (
    Lattice,
    TorusElement,
    act,
    monomial,
    monomial_image,
    multiply,
    sup_norm,
)

logger = logging.getLogger("koszul")

U1 = monomial(1, 0)
U2 = monomial(0, 1)

# Free generators per resolution degree: 1, (e1, e2), e1^e2.
RANKS = {0: 1, 1: 2, 2: 1}

TensorKey = Tuple[Lattice, Lattice]


# ═══════════════════════════════════════════════
# A (x) A with the enveloping-algebra product
# ═══════════════════════════════════════════════

class Tensor:
    """
    Finite sum of c * x(v) (x) x(w) in A (x) A.

    Multiplication is the enveloping-algebra product
    (a (x) b)(c (x) d) = ac (x) db.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[TensorKey, ScalarLike] | None = None):
        self._terms: Dict[TensorKey, Scalar] = {}
        for key, c in (terms or {}).items():
            c = scalar(c)
            if c:
                self._terms[key] = c

    @classmethod
    def _raw(cls, terms: Dict[TensorKey, Scalar]) -> "Tensor":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> "Tensor":
        return cls._raw({})

    @classmethod
    def unit(cls) -> "Tensor":
        return cls._raw({((0, 0), (0, 0)): ONE})

    @classmethod
    def of(cls, a: TorusElement, b: TorusElement) -> "Tensor":
        out: Dict[TensorKey, Scalar] = {}
        for v, c in a.items():
            for w, d in b.items():
                out[(v, w)] = c * d
        return cls._raw(out)

    def items(self) -> Iterator[Tuple[TensorKey, Scalar]]:
        return iter(self._terms.items())

    def coefficient(self, v: Lattice, w: Lattice) -> Scalar:
        return self._terms.get((v, w), ZERO)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Tensor._raw(out)

    def __neg__(self) -> "Tensor":
        return Tensor._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "Tensor":
        c = scalar(c)
        if not c:
            return Tensor.zero()
        return Tensor._raw({k: c * x for k, x in self._terms.items()})

    def __mul__(self, other: "Tensor") -> "Tensor":
        out: Dict[TensorKey, Scalar] = {}
        for (v1, w1), c1 in self._terms.items():
            for (v2, w2), c2 in other._terms.items():
                # x(v1) x(v2) (x) x(w2) x(w1)
                key = ((v1[0] + v2[0], v1[1] + v2[1]), (w2[0] + w1[0], w2[1] + w1[1]))
                term = c1 * c2 * lambda_power(v1[1] * v2[0] + w2[1] * w1[0])
                out[key] = out.get(key, ZERO) + term
        return Tensor._raw({k: c for k, c in out.items() if c})

    def __repr__(self) -> str:
        parts = [f"{c} x{v}(x)x{w}" for (v, w), c in sorted(self._terms.items())]
        return "Tensor(" + (" + ".join(parts) or "0") + ")"


def augmentation(t: Tensor) -> TorusElement:
    """eps(a (x) b) = ab."""
    out = TorusElement.zero()
    for (v, w), c in t.items():
        out = out + multiply(monomial(*v), monomial(*w)).scale(c)
    return out


def tensor_act(gamma: GroupElement, t: Tensor, phi: TorusElement) -> TorusElement:
    """(a (x) b) . phi = gamma(a) phi b on the twisted bimodule."""
    out = TorusElement.zero()
    for (v, w), c in t.items():
        coeff, image = monomial_image(gamma, *v)
        left = monomial(*image, coeff * c)
        out = out + multiply(multiply(left, phi), monomial(*w))
    return out


# ═══════════════════════════════════════════════
# Free bimodule elements and b1, b2
# ═══════════════════════════════════════════════

@dataclass(frozen=True)
class FreeElement:
    """sum_j parts[j] . (1 (x) generator_j) in resolution degree ``degree``."""
    degree: int
    parts: Tuple[Tensor, ...]

    def __post_init__(self):
        if self.degree not in RANKS:
            raise ValueError(f"Koszul degree must be 0, 1 or 2 (got {self.degree})")
        if len(self.parts) != RANKS[self.degree]:
            raise ValueError(
                f"degree {self.degree} needs {RANKS[self.degree]} parts, got {len(self.parts)}"
            )

    @classmethod
    def generator(cls, degree: int, index: int = 0) -> "FreeElement":
        parts = [Tensor.zero()] * RANKS[degree]
        parts[index] = Tensor.unit()
        return cls(degree, tuple(parts))

    def __add__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(self.degree, tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return FreeElement(self.degree, tuple(a - b for a, b in zip(self.parts, other.parts)))

    def left(self, t: Tensor) -> "FreeElement":
        return FreeElement(self.degree, tuple(t * p for p in self.parts))

    def is_zero(self) -> bool:
        return not any(self.parts)


def _basis_tensors():
    one = TorusElement.one()
    b1 = (
        Tensor.of(one, U1) - Tensor.of(U1, one),
        Tensor.of(one, U2) - Tensor.of(U2, one),
    )
    b2 = (
        Tensor.of(U2, one) - Tensor.of(one, U2).scale(LAMBDA),
        -(Tensor.of(U1, one).scale(LAMBDA) - Tensor.of(one, U1)),
    )
    return b1, b2


_B1_IMAGES, _B2_IMAGE = _basis_tensors()


def resolution_differential(degree: int, element: FreeElement) -> FreeElement:
    if degree not in (1, 2) or element.degree != degree:
        raise ValueError(f"resolution differential is defined in degrees 1 and 2 (got {degree})")
    if degree == 1:
        total = Tensor.zero()
        for part, image in zip(element.parts, _B1_IMAGES):
            total = total + part * image
        return FreeElement(0, (total,))
    (c,) = element.parts
    return FreeElement(1, tuple(c * image for image in _B2_IMAGE))


# ═══════════════════════════════════════════════
# Twisted cochains
# ═══════════════════════════════════════════════

@dataclass(frozen=True)
class TwistedCochain:
    """A Koszul cochain with values in the sector ``sector``: one TorusElement per free generator."""
    sector: GroupElement
    degree: int
    components: Tuple[TorusElement, ...]

    def __post_init__(self):
        if self.degree not in RANKS:
            raise ValueError(f"cochain degree must be 0, 1 or 2 (got {self.degree})")
        if len(self.components) != RANKS[self.degree]:
            raise ValueError(
                f"degree {self.degree} cochain needs {RANKS[self.degree]} components"
            )

    @classmethod
    def zero(cls, sector: GroupElement, degree: int) -> "TwistedCochain":
        return cls(sector, degree, (TorusElement.zero(),) * RANKS[degree])

    def __add__(self, other: "TwistedCochain") -> "TwistedCochain":
        return TwistedCochain(
            self.sector, self.degree,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def scale(self, c: ScalarLike) -> "TwistedCochain":
        return TwistedCochain(self.sector, self.degree, tuple(a.scale(c) for a in self.components))

    def is_zero(self) -> bool:
        return not any(self.components)

    def evaluate(self, element: FreeElement) -> TorusElement:
        """The bimodule map 1 (x) generator_j -> component_j applied to ``element``."""
        if element.degree != self.degree:
            raise ValueError("degree mismatch between cochain and resolution element")
        out = TorusElement.zero()
        for part, value in zip(element.parts, self.components):
            out = out + tensor_act(self.sector, part, value)
        return out

    def to_json(self) -> dict:
        return {
            "sector": self.sector.to_json(),
            "degree": self.degree,
            "components": [c.to_json() for c in self.components],
        }


def alpha1(gamma: GroupElement, phi: TorusElement) -> Tuple[TorusElement, TorusElement]:
    g_u1, g_u2 = act(gamma, U1), act(gamma, U2)
    return (
        multiply(g_u1, phi) - multiply(phi, U1),
        multiply(g_u2, phi) - multiply(phi, U2),
    )


def alpha2(gamma: GroupElement, phi1: TorusElement, phi2: TorusElement) -> TorusElement:
    g_u1, g_u2 = act(gamma, U1), act(gamma, U2)
    return (
        multiply(g_u2, phi1)
        - multiply(phi1, U2).scale(LAMBDA)
        - multiply(g_u1, phi2).scale(LAMBDA)
        + multiply(phi2, U1)
    )


def koszul_coboundary(cochain: TwistedCochain) -> TwistedCochain:
    """phi -> phi o b: -alpha1 in degree 0, alpha2 in degree 1."""
    gamma = cochain.sector
    if cochain.degree == 0:
        a, b = alpha1(gamma, cochain.components[0])
        return TwistedCochain(gamma, 1, (-a, -b))
    if cochain.degree == 1:
        return TwistedCochain(gamma, 2, (alpha2(gamma, *cochain.components),))
    raise ValueError("Koszul cochains vanish above degree 2")


@lru_cache(maxsize=None)
def shift_set(gamma: GroupElement) -> Set[Lattice]:
    """Every output index of alpha1/alpha2 is an input index plus one of these."""
    e1, e2 = (1, 0), (0, 1)
    return frozenset({e1, e2, gamma.apply(e1), gamma.apply(e2)})


def max_shift(gamma: GroupElement) -> int:
    """K = largest sup-norm of a shift; at least 1."""
    return max(1, max(sup_norm(s) for s in shift_set(gamma)))
