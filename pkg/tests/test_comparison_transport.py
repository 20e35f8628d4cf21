"""
Quantum-Torus Orbifold Calculator – Comparison Lift & Group Action Tests
════════════════════════════════════════════════════════════════════════
Run: python -m pytest tests/test_comparison_transport.py -v
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from sympy.polys.matrices import DomainMatrix

from algebra.groups import GroupElement, finite_subgroup
from algebra.scalars import SCALAR_DOMAIN
from algebra.torus import TorusElement, monomial
from cohomology.bar import bar_differential, bar_to_koszul, koszul_to_bar
from cohomology.comparison import (
    BarChain,
    ComparisonLift,
    bar_boundary,
    k2_identity_witness,
    lift_comparison_maps,
)
from cohomology.engine import sector_report
from cohomology.koszul import TwistedCochain, resolution_differential
from cohomology.transport import act_on_bar, invariance_certificate, transport_action

IDENTITY = GroupElement.identity()

_LIFT = ComparisonLift()
RADIUS_THREE_ARGUMENTS = [(3, 0), (0, 3), (-3, 2), (3, 1), (-3, -3), (2, -3), (1, 1)]


# ═══════════════════════════════════════════
# Comparison maps
# ═══════════════════════════════════════════

def test_bar_boundary_squares_to_zero():
    chain = BarChain.generator((1, 0), (0, 1), (-1, 1))
    assert not bar_boundary(bar_boundary(chain))


def test_lift_squares_commute():
    witness = lift_comparison_maps(lift=_LIFT)
    assert witness.squares_checked == 94
    assert witness.residuals_zero
    assert witness.summary()["k2_lifts"] == 81


def test_k2_lifts_commute_on_radius_three():
    for v in RADIUS_THREE_ARGUMENTS:
        for w in RADIUS_THREE_ARGUMENTS:
            gen = BarChain.generator(v, w)
            lhs = resolution_differential(2, _LIFT.k2(gen))
            assert lhs.parts == _LIFT.k1(bar_boundary(gen)).parts, f"[x{v}|x{w}]"


@pytest.mark.parametrize("seed", [0, 2])
def test_k2_identity_holds_up_to_coboundary(seed):
    witness = k2_identity_witness(ComparisonLift(seed=seed))
    assert witness is not None
    assert witness.sign in (-1, 1)


def test_koszul_cocycle_survives_round_trip():
    report = sector_report(finite_subgroup("Z2"), 0, 1, 3)
    for rep in report.representatives:
        bar = koszul_to_bar(rep, _LIFT)
        d = bar_differential(bar)
        assert not d.at((1, 0), (0, 1))
        assert not d.at((0, 1), (1, 0))
        back = bar_to_koszul(bar, _LIFT)
        assert back.sector == rep.sector


# ═══════════════════════════════════════════
# Transported action
# ═══════════════════════════════════════════

def test_identity_transport_is_trivial():
    group = finite_subgroup("Z4")
    report = sector_report(group, 2, 2, 3)
    for rep in report.representatives:
        assert transport_action(group, IDENTITY, rep, _LIFT, report) == rep


def test_act_on_bar_conjugates_sector():
    group = finite_subgroup("Z4")
    f = koszul_to_bar(TwistedCochain(group.element(2), 0, (TorusElement.zero(),)), _LIFT)
    assert act_on_bar(group.generator, f).sector == group.element(2)


def test_untwisted_hh2_is_invariant_under_z4():
    group = finite_subgroup("Z4")
    report = sector_report(group, 0, 2, 3)
    certificate = invariance_certificate(group, report, lift=_LIFT)
    assert certificate.rank == 1
    assert all(M == DomainMatrix.eye(1, SCALAR_DOMAIN).to_dense() for M in certificate.matrices.values())


def test_action_matrices_satisfy_group_relations():
    group = finite_subgroup("Z2")
    report = sector_report(group, 0, 2, 3)
    certificate = invariance_certificate(group, report, lift=_LIFT, verify=False)
    assert certificate.relations_hold
    assert certificate.matrices[0] == DomainMatrix.eye(1, SCALAR_DOMAIN).to_dense()
    assert certificate.projector == certificate.matrices[0]
    assert certificate.rank == 1


def test_minus_identity_negates_derivations():
    group = finite_subgroup("Z2")
    report = sector_report(group, 0, 1, 3)
    certificate = invariance_certificate(group, report, lift=_LIFT)
    assert certificate.matrices[1] == -DomainMatrix.eye(2, SCALAR_DOMAIN).to_dense()
    assert certificate.rank == 0


def test_z4_action_on_minus_identity_sector():
    group = finite_subgroup("Z4")
    report = sector_report(group, 2, 2, 3)
    assert report.raw_dim == 4
    certificate = invariance_certificate(group, report, lift=_LIFT, verify=True)
    generator = certificate.matrices[1]
    assert (generator ** 4).to_dense() == DomainMatrix.eye(4, SCALAR_DOMAIN).to_dense()
    assert certificate.idempotent
    assert certificate.relations_hold
    assert certificate.lifts_agree is True
    assert certificate.rank == 3
    assert certificate.to_json()["invariant_dim"] == 3


def test_empty_sector_certificate():
    group = finite_subgroup("Z2")
    report = sector_report(group, 1, 1, 3)
    certificate = invariance_certificate(group, report, lift=_LIFT)
    assert certificate.raw_dim == 0
    assert certificate.rank == 0


def test_transport_rejects_bad_input():
    group = finite_subgroup("Z2")
    bad = TwistedCochain(IDENTITY, 1, (monomial(2, 0), TorusElement.zero()))
    with pytest.raises(ValueError):
        transport_action(group, IDENTITY, bad, _LIFT)
    cocycle = TwistedCochain(IDENTITY, 0, (TorusElement.one(),))
    with pytest.raises(ValueError):
        transport_action(group, finite_subgroup("Z4").generator, cocycle, _LIFT)
