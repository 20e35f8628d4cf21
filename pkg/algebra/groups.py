"""
Quantum-Torus Orbifold Calculator – SL2(Z) Groups
═════════════════════════════════════════════════
Integer unimodular matrices and the catalog of finite cyclic subgroups
Z2, Z3, Z4, Z6 acting on the quantum torus.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Tuple

from config.settings import GROUP_GENERATORS, GROUP_ORDERS, ORDER_SEARCH_LIMIT

logger = logging.getLogger("groups")

Matrix = Tuple[Tuple[int, int], Tuple[int, int]]


@dataclass(frozen=True)
class GroupElement:
    g11: int
    g12: int
    g21: int
    g22: int

    def __post_init__(self):
        if self.g11 * self.g22 - self.g12 * self.g21 != 1:
            raise ValueError(f"matrix {self.matrix} is not in SL2(Z)")

    @classmethod
    def from_matrix(cls, rows: Matrix) -> "GroupElement":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1, 0, 0, 1)

    @property
    def matrix(self) -> Matrix:
        return ((self.g11, self.g12), (self.g21, self.g22))

    @property
    def trace(self) -> int:
        return self.g11 + self.g22

    def is_identity(self) -> bool:
        return (self.g11, self.g12, self.g21, self.g22) == (1, 0, 0, 1)

    def apply(self, v: Tuple[int, int]) -> Tuple[int, int]:
        """Matrix times the column (n, m)."""
        n, m = v
        return (self.g11 * n + self.g12 * m, self.g21 * n + self.g22 * m)

    def multiply(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.g11 * other.g11 + self.g12 * other.g21,
            self.g11 * other.g12 + self.g12 * other.g22,
            self.g21 * other.g11 + self.g22 * other.g21,
            self.g21 * other.g12 + self.g22 * other.g22,
        )

    __matmul__ = multiply

    def inverse(self) -> "GroupElement":
        return GroupElement(self.g22, -self.g12, -self.g21, self.g11)

    def power(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        out = GroupElement.identity()
        for _ in range(abs(k)):
            out = out.multiply(base)
        return out

    def conjugate(self, h: "GroupElement") -> "GroupElement":
        """h g h^-1."""
        return h.multiply(self).multiply(h.inverse())

    def fixed_point_count(self) -> int:
        """|det(1 - g)|, the number of fixed points of g on the 2-torus (0 for unipotents)."""
        return abs(2 - self.trace)

    def to_json(self):
        return [[self.g11, self.g12], [self.g21, self.g22]]


def element_order(g: GroupElement) -> Optional[int]:
    """Least k >= 1 with g^k = 1, or None when g has infinite order."""
    if abs(g.trace) > 2:
        return None
    if abs(g.trace) == 2 and g.g12 == g.g21 == 0:
        return 1 if g.trace == 2 else 2
    if abs(g.trace) == 2:
        # parabolic: +-(unipotent) never returns to the identity
        return None
    power = g
    for k in range(1, ORDER_SEARCH_LIMIT + 1):
        if power.is_identity():
            return k
        power = power.multiply(g)
    return None


@dataclass(frozen=True)
class FiniteSubgroup:
    label: str
    generator: GroupElement
    elements: Tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element(self, k: int) -> GroupElement:
        return self.elements[k % self.order]

    def index_of(self, g: GroupElement) -> int:
        try:
            return self.elements.index(g)
        except ValueError:
            raise ValueError(f"{g.matrix} is not an element of {self.label}") from None

    def sectors(self) -> Iterator[Tuple[int, GroupElement]]:
        return iter(enumerate(self.elements))


@lru_cache(maxsize=None)
def finite_subgroup(label: str) -> FiniteSubgroup:
    key = label.upper()
    if key not in GROUP_GENERATORS:
        raise ValueError(f"unknown group label {label!r}")
    generator = GroupElement.from_matrix(GROUP_GENERATORS[key])
    order = element_order(generator)
    if order != GROUP_ORDERS[key]:
        raise ValueError(f"{key} generator has order {order}, expected {GROUP_ORDERS[key]}")
    elements = tuple(generator.power(k) for k in range(order))
    logger.debug("built %s with generator %s", key, generator.matrix)
    return FiniteSubgroup(label=key, generator=generator, elements=elements)
