"""
Quantum-Torus Orbifold Calculator – Poisson Structures
══════════════════════════════════════════════════════
Every degree-2 class is a Poisson structure once [Pi, Pi] is shown to be a
coboundary; here that is done constructively by exhibiting w with
delta w = [Pi, Pi].

Witnesses by degree of the cocycle F (h/k comparison maps, s bar homotopy):
    3   w = F o s2                       (the Koszul resolution stops at 2)
    2   w = psi o k1 + F o s1,           alpha2(psi) = F o h2
    1   w = psi,                         -alpha1(psi) = F o h1
Each witness is checked by evaluating delta w against F on all tuples of
WITNESS_GENERATORS monomials.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence

from algebra.groups import FiniteSubgroup, GroupElement
from algebra.scalars import ONE, scalar
from algebra.torus import TorusElement
from cohomology.bar import (
    BarCochain,
    bar_differential,
    bar_to_koszul,
    cup_product,
    derivation_cochain,
    element_cochain,
    gerstenhaber_bracket,
    koszul_to_bar,
    sum_cochains,
)
from cohomology.comparison import BarChain, ComparisonLift
from cohomology.engine import CohomologyReport, InconsistencyError, OrbifoldTable, koszul_preimage
from cohomology.koszul import TwistedCochain
from cohomology.transport import act_on_bar, invariance_certificate
from config.settings import REFERENCE_POISSON_TABLE, WITNESS_GENERATORS

logger = logging.getLogger("poisson")

IDENTITY = GroupElement.identity()


# ═══════════════════════════════════════════════
# Data Structures
# ═══════════════════════════════════════════════

@dataclass
class CoboundaryWitness:
    """delta(cochain) equals the certified cocycle on ``checked`` argument tuples."""
    degree: int
    sector: GroupElement
    cochain: BarCochain
    checked: int
    digest: str

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "sector": self.sector.to_json(),
            "checked": self.checked,
            "digest": self.digest,
        }


@dataclass
class PoissonStructure:
    label: str
    group: str
    classes: List[TwistedCochain]
    realization: BarCochain
    witness: Optional[CoboundaryWitness] = None

    @property
    def sector(self) -> GroupElement:
        return self.realization.sector


@dataclass
class PoissonTable:
    group: str
    structures: List[str]
    rows: Dict[str, int]
    expected: Dict[str, int]
    match: Dict[str, bool]
    witnesses: List[CoboundaryWitness] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(self.match.values())

    @property
    def digests(self) -> List[str]:
        return [w.digest for w in self.witnesses]


# ═══════════════════════════════════════════════
# Witnesses
# ═══════════════════════════════════════════════

def _tuples(degree: int):
    return list(product(WITNESS_GENERATORS, repeat=degree))


def _digest(w: BarCochain) -> str:
    lines = [f"{args}->{w.at(*args).to_text()}" for args in _tuples(w.degree)]
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


def _bar_homotopy_term(F: BarCochain, lift: ComparisonLift) -> BarCochain:
    """F o s_{n-1} as a cochain of degree n-1."""
    homotopy = lift.s2 if F.degree == 3 else lift.s1

    def rule(args) -> TorusElement:
        return F.evaluate_chain(homotopy(BarChain.generator(*args)))

    return BarCochain(F.degree - 1, F.sector, rule, name=f"s*{F.name}")


def coboundary_witness(F: BarCochain, lift: ComparisonLift) -> Optional[CoboundaryWitness]:
    """
    A cochain w with delta w = F, or None when F represents a nonzero class.

    Raises InconsistencyError when a constructed w fails the check.
    """
    tuples = _tuples(F.degree)
    if F.degree == 0:
        if F.at():
            return None
        w = None
    elif F.degree == 3:
        w = _bar_homotopy_term(F, lift)
    else:
        psi = koszul_preimage(F.sector, bar_to_koszul(F, lift))
        if psi is None:
            return None
        w = koszul_to_bar(psi, lift)
        if F.degree == 2:
            w = w + _bar_homotopy_term(F, lift)
    if w is None:
        return CoboundaryWitness(0, F.sector, F, 1, hashlib.sha256(b"0").hexdigest())
    check = bar_differential(w)
    if not check.agrees_with(F, tuples):
        bad = next(args for args in tuples if check.at(*args) != F.at(*args))
        raise InconsistencyError(f"coboundary witness for {F.name} fails at {bad}")
    logger.debug("witness for %s verified on %d tuples", F.name, len(tuples))
    return CoboundaryWitness(F.degree, F.sector, w, len(tuples), _digest(w))


# ═══════════════════════════════════════════════
# Structures
# ═══════════════════════════════════════════════

def pi0(lift: Optional[ComparisonLift] = None) -> PoissonStructure:
    """delta1 ∪ delta2 - delta2 ∪ delta1, with its Koszul form."""
    lift = lift or ComparisonLift()
    d1, d2 = derivation_cochain(1), derivation_cochain(2)
    realization = cup_product(d1, d2) - cup_product(d2, d1)
    realization.name = "Pi0"
    boundary = bar_differential(realization)
    if any(boundary.at(*args) for args in _tuples(3)):
        raise InconsistencyError("Pi0 is not a Hochschild cocycle")
    koszul = bar_to_koszul(realization, lift)
    if koszul.is_zero():
        raise InconsistencyError("Pi0 has a vanishing Koszul form")
    return PoissonStructure("Pi0", "", [koszul], realization)


def realize_class(group: FiniteSubgroup, cochain: TwistedCochain, lift: ComparisonLift) -> BarCochain:
    """Γ-average of the bar realization: (1/|Γ|) sum_delta delta . (cochain o k)."""
    base = koszul_to_bar(cochain, lift)
    moved = [act_on_bar(delta, base) for _, delta in group.sectors()]
    averaged = sum_cochains(moved).scale(ONE / scalar(group.order))
    averaged.name = f"R{cochain.sector.matrix}"
    return averaged


def invariant_classes(group: FiniteSubgroup, report: CohomologyReport, lift: ComparisonLift) -> List[TwistedCochain]:
    """A basis of the Γ-invariant classes of one sector: pivot columns of the Reynolds projector."""
    if not report.representatives:
        return []
    certificate = report.certificate or invariance_certificate(group, report, lift=lift, verify=False)
    P = certificate.projector
    _, pivots = P.rref()
    entries = P.to_list()
    out = []
    for j in pivots:
        total = TwistedCochain.zero(report.sector, report.degree)
        for i, rep in enumerate(report.representatives):
            if entries[i][j]:
                total = total + rep.scale(entries[i][j])
        out.append(total)
    return out


def basis_structures(group: FiniteSubgroup, table: OrbifoldTable, lift: ComparisonLift) -> List[PoissonStructure]:
    """One PoissonStructure per invariant degree-2 class, sector by sector."""
    out = []
    for report in table.reports(2):
        for i, cls in enumerate(invariant_classes(group, report, lift)):
            out.append(PoissonStructure(
                label=f"Pi[g^{report.power}.{i}]",
                group=group.label,
                classes=[cls],
                realization=realize_class(group, cls, lift),
            ))
    return out


def poisson_check(structure: PoissonStructure, lift: ComparisonLift) -> CoboundaryWitness:
    """[Pi, Pi] = delta w with w stored on the structure."""
    square = gerstenhaber_bracket(structure.realization, structure.realization)
    witness = coboundary_witness(square, lift)
    if witness is None:
        raise InconsistencyError(f"[{structure.label}, {structure.label}] has no coboundary witness")
    structure.witness = witness
    logger.info("%s: [Pi, Pi] is a coboundary (digest %s)", structure.label, witness.digest[:12])
    return witness


def poisson_differential(structure: PoissonStructure, cochain: BarCochain) -> BarCochain:
    """d_Pi(U) = [Pi, U]."""
    return gerstenhaber_bracket(structure.realization, cochain)


def _degree_zero_classes(group: FiniteSubgroup, table: OrbifoldTable, lift: ComparisonLift) -> List[BarCochain]:
    out = []
    for report in table.reports(0):
        for cls in invariant_classes(group, report, lift):
            out.append(element_cochain(cls.components[0], cls.sector))
    return out


def poisson_cohomology_table(
    group: FiniteSubgroup,
    table: OrbifoldTable,
    lift: Optional[ComparisonLift] = None,
    structures: Optional[Sequence[PoissonStructure]] = None,
) -> PoissonTable:
    """
    Poisson cohomology of every basis structure.

    d_Pi is certified to vanish on cohomology: for each structure, [Pi, Pi]
    and [Pi, c], [Pi, [Pi, c]] for every degree-0 class c get coboundary
    witnesses. The table then equals the Hochschild table.
    """
    lift = lift or ComparisonLift()
    structures = list(structures) if structures is not None else basis_structures(group, table, lift)
    witnesses: List[CoboundaryWitness] = []
    units = _degree_zero_classes(group, table, lift)
    for structure in structures:
        witnesses.append(poisson_check(structure, lift))
        for c in units:
            once = poisson_differential(structure, c)
            for target in (once, poisson_differential(structure, once)):
                witness = coboundary_witness(target, lift)
                if witness is None:
                    raise InconsistencyError(f"d_Pi of a degree-0 class is not exact for {structure.label}")
                witnesses.append(witness)

    # uncomputed degrees are omitted
    rows = {f"h{d}": table.totals[f"hh{d}"] for d in (0, 1, 2) if f"hh{d}" in table.totals}
    rows["h3"] = 0
    reference = REFERENCE_POISSON_TABLE[group.label]
    expected = {f"h{k[2:]}": v for k, v in reference.items() if k in table.totals}
    expected["h3"] = 0
    match = {k: rows[k] == v for k, v in expected.items()}
    logger.info("%s Poisson table %s over %d structures", group.label, rows, len(structures))
    return PoissonTable(group.label, [s.label for s in structures], rows, expected, match, witnesses)
