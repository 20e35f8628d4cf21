"""
Quantum-Torus Orbifold Calculator – Transported Group Action
════════════════════════════════════════════════════════════
The action of delta ∈ Γ on the classes of one sector:

    Koszul cocycle --k*--> bar cocycle --rho_delta o f o rho_delta^-1--> bar cocycle --h*--> Koszul cocycle

followed by reduction onto the sector's representatives. The resulting
matrices are averaged into the Reynolds projector, whose rank is the
invariant dimension of the sector.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from algebra.groups import FiniteSubgroup, GroupElement
from algebra.scalars import ONE, SCALAR_DOMAIN, Scalar, render_short, scalar
from algebra.torus import TorusElement, act, monomial
from cohomology.bar import BarCochain, bar_to_koszul, koszul_to_bar
from cohomology.comparison import ComparisonLift
from cohomology.engine import CohomologyReport, InconsistencyError, reduce_cocycle
from cohomology.koszul import TwistedCochain, koszul_coboundary
from config.settings import SECOND_LIFT_SEED, TOP_DEGREE

logger = logging.getLogger("transport")


# ═══════════════════════════════════════════════
# Cochain-level action
# ═══════════════════════════════════════════════

def act_on_bar(delta: GroupElement, f: BarCochain) -> BarCochain:
    """(delta . f)(a1..an) = rho_delta(f(rho_delta^-1 a1, .., rho_delta^-1 an))."""
    inverse = delta.inverse()

    def rule(args) -> TorusElement:
        moved = [act(inverse, monomial(*a)) for a in args]
        return act(delta, f(*moved))

    return BarCochain(f.degree, f.sector.conjugate(delta), rule, name=f"{delta.matrix}.{f.name}")


def transport_action(
    group: FiniteSubgroup,
    delta: GroupElement,
    cochain: TwistedCochain,
    lift: ComparisonLift,
    report: Optional[CohomologyReport] = None,
) -> TwistedCochain:
    """
    The transported cocycle in sector delta.gamma.delta^-1.

    With ``report`` the result is rewritten as the canonical combination of
    the report's representatives.
    """
    group.index_of(delta)
    if cochain.degree < TOP_DEGREE and not koszul_coboundary(cochain).is_zero():
        raise ValueError("input is not a cocycle")
    pushed = act_on_bar(delta, koszul_to_bar(cochain, lift))
    pulled = bar_to_koszul(pushed, lift)
    if report is None:
        return pulled
    coefficients = reduce_cocycle(report, pulled)
    return _combine(report, coefficients)


def _dense(M: DomainMatrix) -> DomainMatrix:
    # eye, zeros and powers come back sparse, from_list dense; == compares storage too
    return M.to_dense()


def _combine(report: CohomologyReport, coefficients: Sequence[Scalar]) -> TwistedCochain:
    total = TwistedCochain.zero(report.sector, report.degree)
    for c, rep in zip(coefficients, report.representatives):
        if c:
            total = total + rep.scale(c)
    return total


def action_matrix(
    group: FiniteSubgroup,
    delta: GroupElement,
    report: CohomologyReport,
    lift: ComparisonLift,
) -> DomainMatrix:
    """Column i = coordinates of delta . rep_i in the representative basis."""
    if report.sector.conjugate(delta) != report.sector:
        raise ValueError("delta does not preserve the sector")
    n = len(report.representatives)
    columns: List[List[Scalar]] = []
    for rep in report.representatives:
        moved = transport_action(group, delta, rep, lift)
        columns.append(reduce_cocycle(report, moved))
    rows = [[columns[j][i] for j in range(n)] for i in range(n)]
    if not n:
        return _dense(DomainMatrix.zeros((0, 0), SCALAR_DOMAIN))
    return _dense(DomainMatrix.from_list(rows, SCALAR_DOMAIN))


# ═══════════════════════════════════════════════
# Certificate
# ═══════════════════════════════════════════════

def _matrix_json(M: DomainMatrix) -> List[List[str]]:
    return [[render_short(x) for x in row] for row in M.to_list()]


@dataclass
class InvarianceCertificate:
    group: str
    power: int
    degree: int
    raw_dim: int
    matrices: Dict[int, DomainMatrix] = field(default_factory=dict)
    projector: Optional[DomainMatrix] = None
    rank: int = 0
    idempotent: bool = True
    relations_hold: bool = True
    lifts_agree: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "raw_dim": self.raw_dim,
            "invariant_dim": self.rank,
            "idempotent": self.idempotent,
            "relations_hold": self.relations_hold,
            "lifts_agree": self.lifts_agree,
            "action_matrices": {str(k): _matrix_json(M) for k, M in sorted(self.matrices.items())},
            "projector": _matrix_json(self.projector) if self.projector is not None else [],
        }


def invariance_certificate(
    group: FiniteSubgroup,
    report: CohomologyReport,
    lift: Optional[ComparisonLift] = None,
    verify: bool = True,
) -> InvarianceCertificate:
    n = len(report.representatives)
    certificate = InvarianceCertificate(group.label, report.power, report.degree, n)
    if n == 0:
        return certificate
    lift = lift or ComparisonLift()
    identity = _dense(DomainMatrix.eye(n, SCALAR_DOMAIN))

    for power, delta in group.sectors():
        certificate.matrices[power] = action_matrix(group, delta, report, lift)

    average = ONE / scalar(group.order)
    P = _dense(DomainMatrix.zeros((n, n), SCALAR_DOMAIN))
    for M in certificate.matrices.values():
        P = P + M
    P = _dense(P * average)
    certificate.projector = P
    certificate.rank = P.rank()
    certificate.idempotent = _dense(P * P) == P

    generator = certificate.matrices[1] if group.order > 1 else identity
    certificate.relations_hold = certificate.matrices[0] == identity and all(
        _dense(generator ** k) == M for k, M in certificate.matrices.items()
    ) and _dense(generator ** group.order) == identity

    if verify and group.order > 1:
        seed = SECOND_LIFT_SEED if lift.seed != SECOND_LIFT_SEED else SECOND_LIFT_SEED + 1
        other = action_matrix(group, group.generator, report, ComparisonLift(seed=seed))
        certificate.lifts_agree = _dense(other) == generator

    logger.info(
        "%s g^%d degree %d: raw %d invariant %d",
        group.label, report.power, report.degree, n, certificate.rank,
    )
    if not certificate.idempotent:
        raise InconsistencyError(f"Reynolds projector of {group.label} g^{report.power} is not idempotent")
    if not certificate.relations_hold:
        raise InconsistencyError(f"action matrices of {group.label} g^{report.power} violate the group relations")
    if certificate.lifts_agree is False:
        raise InconsistencyError(f"two comparison lifts induce different actions on {group.label} g^{report.power}")
    return certificate
