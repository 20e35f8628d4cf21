"""
Quantum-Torus Orbifold Calculator – Poisson Structure Tests
═══════════════════════════════════════════════════════════
Run: python -m pytest tests/test_poisson.py -v
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import itertools

import pytest

from algebra.groups import GroupElement, finite_subgroup
from algebra.scalars import LAMBDA
from algebra.torus import TorusElement, monomial
from cohomology.bar import (
    BarCochain,
    bar_differential,
    derivation_cochain,
    element_cochain,
    zero_cochain,
)
from cohomology.comparison import ComparisonLift
from cohomology.engine import orbifold_table
from cohomology.poisson import (
    PoissonStructure,
    coboundary_witness,
    pi0,
    poisson_check,
    poisson_cohomology_table,
    poisson_differential,
)
from config.settings import REFERENCE_HH_TABLE, WITNESS_GENERATORS

_LIFT = ComparisonLift()
IDENTITY = GroupElement.identity()


# ═══════════════════════════════════════════
# The canonical structure
# ═══════════════════════════════════════════

def test_pi0_values():
    structure = pi0(_LIFT)
    assert structure.realization.at((1, 0), (0, 1)) == monomial(1, 1)
    assert structure.realization.at((0, 1), (1, 0)) == monomial(1, 1, -LAMBDA)
    assert not structure.realization.at((1, 0), (1, 0))


def test_pi0_koszul_form():
    (koszul,) = pi0(_LIFT).classes
    assert koszul.degree == 2
    assert koszul.components[0] == monomial(1, 1, 2 * LAMBDA)


def test_pi0_is_poisson():
    structure = pi0(_LIFT)
    witness = poisson_check(structure, _LIFT)
    assert structure.witness is witness
    assert witness.degree == 3
    assert witness.checked == len(WITNESS_GENERATORS) ** 3
    assert len(witness.digest) == 64


def test_zero_structure_has_zero_witness():
    structure = PoissonStructure("zero", "", [], zero_cochain(2))
    witness = poisson_check(structure, _LIFT)
    for args in itertools.product(WITNESS_GENERATORS, repeat=2):
        assert not witness.cochain.at(*args)


def test_poisson_differential_of_a_constant():
    structure = pi0(_LIFT)
    d = poisson_differential(structure, element_cochain(TorusElement.one()))
    assert d.degree == 1
    for v in WITNESS_GENERATORS:
        assert not d.at(v)


# ═══════════════════════════════════════════
# Witnesses
# ═══════════════════════════════════════════

def test_witness_for_exact_one_cochain():
    F = bar_differential(element_cochain(monomial(1, -1)))
    witness = coboundary_witness(F, _LIFT)
    assert witness is not None
    check = bar_differential(witness.cochain)
    for v in WITNESS_GENERATORS:
        assert check.at(v) == F.at(v)


def test_witness_checked_on_inverses_and_products():
    assert {(-1, 0), (0, -1), (1, 1)} <= set(WITNESS_GENERATORS)
    f = BarCochain(1, IDENTITY, lambda args: monomial(*args[0]) * monomial(1, -1), name="f")
    F = bar_differential(f)
    witness = coboundary_witness(F, _LIFT)
    assert witness is not None
    assert witness.checked == len(WITNESS_GENERATORS) ** 2
    check = bar_differential(witness.cochain)
    for args in [((-1, 0), (1, 1)), ((0, -1), (-1, 0)), ((1, 1), (1, 1))]:
        assert check.at(*args) == F.at(*args)


def test_nonzero_classes_have_no_witness():
    assert coboundary_witness(derivation_cochain(1), _LIFT) is None
    assert coboundary_witness(element_cochain(TorusElement.one()), _LIFT) is None
    assert coboundary_witness(pi0(_LIFT).realization, _LIFT) is None


def test_witness_in_twisted_sector():
    minus_i = GroupElement(-1, 0, 0, -1)
    F = bar_differential(element_cochain(monomial(0, 1), minus_i))
    witness = coboundary_witness(F, _LIFT)
    assert witness is not None
    assert witness.sector == minus_i


# ═══════════════════════════════════════════
# Orbifold tables
# ═══════════════════════════════════════════

@pytest.fixture(scope="module", params=["Z2", "Z3", "Z4", "Z6"])
def group_poisson(request):
    group = finite_subgroup(request.param)
    table = orbifold_table(group, 3, degrees=(0, 2), lift=_LIFT)
    return request.param, poisson_cohomology_table(group, table, _LIFT)


def test_every_invariant_class_is_certified(group_poisson):
    label, poisson = group_poisson
    assert len(poisson.structures) == REFERENCE_HH_TABLE[label]["hh2"]
    assert len(poisson.witnesses) >= len(poisson.structures)
    assert all(len(d) == 64 for d in poisson.digests)


def test_poisson_table_matches_hochschild(group_poisson):
    label, poisson = group_poisson
    assert poisson.rows["h0"] == 1
    assert poisson.rows["h2"] == REFERENCE_HH_TABLE[label]["hh2"]
    assert poisson.rows["h3"] == 0
    assert poisson.all_match


def test_uncomputed_degree_is_not_reported(group_poisson):
    _, poisson = group_poisson
    assert "h1" not in poisson.rows
    assert "h1" not in poisson.match
