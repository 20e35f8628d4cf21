"""
Quantum-Torus Orbifold Calculator – Bar Cochains
════════════════════════════════════════════════
Hochschild cochains on monomial arguments, with values in a sector.

A value a of a cochain in sector g stands for the element g^-1 a of the skew
group algebra, so:
    - the bimodule is A with left action twisted by g,
    - cup products multiply sectors: (f ∪ g)(..) = rho_h(f(..)) g(..) for g in sector h,
    - inserting a value of sector h into slot i twists the arguments before it by h.

Bracket conventions (fixed, checked against delta f = -[f, m] in the tests):
    f o g  = sum_i (-1)^((i-1)(n-1)) f o_i g
    [f, g] = f o g - (-1)^((m-1)(n-1)) g o f
"""

from __future__ import annotations

import logging
from functools import reduce
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

from algebra.groups import GroupElement
from algebra.scalars import ONE, Scalar, ScalarLike, scalar
from algebra.torus import (
    Lattice,
    TorusElement,
    act,
    derivation_delta,
    monomial,
    monomial_image,
    multiply,
)
from cohomology.comparison import BarChain, ComparisonLift
from cohomology.koszul import TwistedCochain

logger = logging.getLogger("bar")

MAX_BAR_DEGREE = 3

Args = Tuple[Lattice, ...]
Rule = Callable[[Args], TorusElement]
Argument = Union[Lattice, TorusElement]


class BarCochain:
    """
    Multilinear map A^{⊗n} -> A evaluated lazily on monomial arguments.

    Values are memoized; ``stored`` is the part of the table computed so far
    (or given explicitly for table-defined cochains).
    """

    def __init__(
        self,
        degree: int,
        sector: GroupElement,
        rule: Optional[Rule] = None,
        table: Optional[Dict[Args, TorusElement]] = None,
        name: str = "",
    ):
        if not 0 <= degree <= MAX_BAR_DEGREE:
            raise ValueError(f"bar cochains have degree 0..{MAX_BAR_DEGREE} (got {degree})")
        self.degree = degree
        self.sector = sector
        self.name = name
        self._rule = rule
        self._table: Dict[Args, TorusElement] = dict(table or {})

    # ── evaluation ────────────────────────
    def at(self, *args: Lattice) -> TorusElement:
        if len(args) != self.degree:
            raise ValueError(f"{self.degree}-cochain evaluated on {len(args)} arguments")
        value = self._table.get(args)
        if value is None:
            value = self._rule(args) if self._rule is not None else TorusElement.zero()
            if self._rule is not None:
                self._table[args] = value
        return value

    def __call__(self, *xs: Argument) -> TorusElement:
        """Multilinear extension to TorusElement (or lattice point) arguments."""
        expanded = [
            [(ONE, x)] if isinstance(x, tuple) else [(c, v) for v, c in x.items()]
            for x in xs
        ]
        total = TorusElement.zero()

        def walk(i: int, coeff: Scalar, args: Args):
            nonlocal total
            if i == len(expanded):
                value = self.at(*args)
                if value:
                    total = total + value.scale(coeff)
                return
            for c, v in expanded[i]:
                walk(i + 1, coeff * c, args + (v,))

        walk(0, ONE, ())
        return total

    def evaluate_chain(self, chain: BarChain) -> TorusElement:
        """The bimodule map on B_n: l ⊗ args ⊗ r -> g(x(l)) f(args) x(r)."""
        if chain.degree != self.degree:
            raise ValueError("chain and cochain degrees differ")
        total = TorusElement.zero()
        for (l, args, r), c in chain.items():
            value = self.at(*args)
            if not value:
                continue
            coeff, image = monomial_image(self.sector, *l)
            left = monomial(*image, coeff * c)
            total = total + multiply(multiply(left, value), monomial(*r))
        return total

    @property
    def stored(self) -> Dict[Args, TorusElement]:
        return dict(self._table)

    # ── linear structure ──────────────────
    def _check_compatible(self, other: "BarCochain"):
        if other.degree != self.degree or other.sector != self.sector:
            raise ValueError("cochains differ in degree or sector")

    def __add__(self, other: "BarCochain") -> "BarCochain":
        self._check_compatible(other)
        return BarCochain(self.degree, self.sector, lambda a: self.at(*a) + other.at(*a))

    def __sub__(self, other: "BarCochain") -> "BarCochain":
        self._check_compatible(other)
        return BarCochain(self.degree, self.sector, lambda a: self.at(*a) - other.at(*a))

    def __neg__(self) -> "BarCochain":
        return self.scale(-1)

    def scale(self, c: ScalarLike) -> "BarCochain":
        c = scalar(c)
        return BarCochain(self.degree, self.sector, lambda a: self.at(*a).scale(c))

    def agrees_with(self, other: "BarCochain", arguments: Sequence[Args]) -> bool:
        return all(self.at(*a) == other.at(*a) for a in arguments)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"BarCochain{label}(degree={self.degree}, sector={self.sector.matrix})"


# ═══════════════════════════════════════════════
# Standard cochains
# ═══════════════════════════════════════════════

IDENTITY = GroupElement.identity()


def element_cochain(a: TorusElement, sector: GroupElement = IDENTITY) -> BarCochain:
    return BarCochain(0, sector, lambda args: a, name="const")


def unit_cochain() -> BarCochain:
    return element_cochain(TorusElement.one())


def zero_cochain(degree: int, sector: GroupElement = IDENTITY) -> BarCochain:
    return BarCochain(degree, sector, None, name="0")


def derivation_cochain(axis: int) -> BarCochain:
    return BarCochain(1, IDENTITY, lambda args: derivation_delta(axis, monomial(*args[0])), name=f"delta{axis}")


def multiplication_cochain() -> BarCochain:
    return BarCochain(2, IDENTITY, lambda args: multiply(monomial(*args[0]), monomial(*args[1])), name="m")


def table_cochain(degree: int, table: Dict[Args, TorusElement], sector: GroupElement = IDENTITY) -> BarCochain:
    """Cochain defined by a finite table; zero elsewhere."""
    return BarCochain(degree, sector, None, table=table, name="table")


# ═══════════════════════════════════════════════
# Differential, cup, circle, bracket
# ═══════════════════════════════════════════════

def _product(v: Lattice, w: Lattice) -> TorusElement:
    return multiply(monomial(*v), monomial(*w))


def bar_differential(f: BarCochain) -> BarCochain:
    """
    (delta f)(a1..a_{n+1}) = g(a1) f(a2..) + sum_i (-1)^i f(..a_i a_{i+1}..)
                             + (-1)^(n+1) f(a1..a_n) a_{n+1}
    """
    n = f.degree
    if n >= MAX_BAR_DEGREE:
        raise ValueError(f"bar differential of a degree-{n} cochain leaves the implemented range")
    gamma = f.sector

    def rule(args: Args) -> TorusElement:
        head = multiply(act(gamma, monomial(*args[0])), f.at(*args[1:]))
        total = head
        for i in range(n):
            merged = _product(args[i], args[i + 1])
            term = f(*args[:i], merged, *args[i + 2:])
            total = total + (term if i % 2 == 1 else -term)
        tail = multiply(f.at(*args[:n]), monomial(*args[n]))
        return total + (tail if (n + 1) % 2 == 0 else -tail)

    return BarCochain(n + 1, gamma, rule, name=f"d({f.name})")


def cup_product(f: BarCochain, g: BarCochain) -> BarCochain:
    m, n = f.degree, g.degree
    if m + n > MAX_BAR_DEGREE:
        raise ValueError(f"cup product of degrees {m} and {n} leaves the implemented range")
    eta = g.sector

    def rule(args: Args) -> TorusElement:
        left = f.at(*args[:m])
        if not left:
            return left
        return multiply(act(eta, left), g.at(*args[m:]))

    return BarCochain(m + n, f.sector.multiply(eta), rule, name=f"({f.name}∪{g.name})")


def circle_at(f: BarCochain, g: BarCochain, slot: int) -> BarCochain:
    """f o_slot g (slot counted from 1): g's value replaces argument ``slot`` of f."""
    m, n = f.degree, g.degree
    if not 1 <= slot <= m:
        raise ValueError(f"slot {slot} outside 1..{m}")
    eta = g.sector

    def rule(args: Args) -> TorusElement:
        inner = g.at(*args[slot - 1:slot - 1 + n])
        if not inner:
            return inner
        twisted = [act(eta, monomial(*a)) for a in args[:slot - 1]]
        return f(*twisted, inner, *args[slot - 1 + n:])

    return BarCochain(m + n - 1, f.sector.multiply(eta), rule, name=f"({f.name}∘{slot}{g.name})")


def circle_product(f: BarCochain, g: BarCochain) -> BarCochain:
    m, n = f.degree, g.degree
    if m + n - 1 < 0 or m + n - 1 > MAX_BAR_DEGREE:
        raise ValueError(f"circle product of degrees {m} and {n} leaves the implemented range")
    sector = f.sector.multiply(g.sector)
    if m == 0:
        return zero_cochain(n - 1, sector)
    terms = [circle_at(f, g, i) for i in range(1, m + 1)]
    signs = [-1 if ((i - 1) * (n - 1)) % 2 else 1 for i in range(1, m + 1)]

    def rule(args: Args) -> TorusElement:
        total = TorusElement.zero()
        for term, sign in zip(terms, signs):
            value = term.at(*args)
            total = total + (value if sign > 0 else -value)
        return total

    return BarCochain(m + n - 1, sector, rule, name=f"({f.name}∘{g.name})")


def gerstenhaber_bracket(f: BarCochain, g: BarCochain) -> BarCochain:
    m, n = f.degree, g.degree
    if m + n < 1 or m + n - 1 > MAX_BAR_DEGREE:
        raise ValueError(f"bracket of degrees {m} and {n} leaves the implemented range")
    if f.sector.multiply(g.sector) != g.sector.multiply(f.sector):
        raise ValueError("bracket of sectors that do not commute")
    fg = circle_product(f, g)
    gf = circle_product(g, f)
    sign = -1 if ((m - 1) * (n - 1)) % 2 else 1

    def rule(args: Args) -> TorusElement:
        first = fg.at(*args)
        second = gf.at(*args)
        return first - second if sign > 0 else first + second

    return BarCochain(m + n - 1, fg.sector, rule, name=f"[{f.name},{g.name}]")


# ═══════════════════════════════════════════════
# Koszul <-> bar
# ═══════════════════════════════════════════════

def koszul_to_bar(cochain: TwistedCochain, lift: ComparisonLift) -> BarCochain:
    """phi o k_n."""
    def rule(args: Args) -> TorusElement:
        return cochain.evaluate(lift.k(BarChain.generator(*args)))

    return BarCochain(cochain.degree, cochain.sector, rule, name="k*phi")


def bar_to_koszul(f: BarCochain, lift: ComparisonLift) -> TwistedCochain:
    """f o h_n."""
    if f.degree == 0:
        return TwistedCochain(f.sector, 0, (f.at(),))
    if f.degree == 1:
        h1 = lift.h_generators(1)
        return TwistedCochain(f.sector, 1, tuple(f.evaluate_chain(c) for c in h1))
    if f.degree == 2:
        (h2,) = lift.h_generators(2)
        return TwistedCochain(f.sector, 2, (f.evaluate_chain(h2),))
    raise ValueError("Koszul cochains vanish above degree 2")


def sum_cochains(cochains: Sequence[BarCochain]) -> BarCochain:
    return reduce(lambda a, b: a + b, cochains)
