"""
Quantum-Torus Orbifold Calculator – Group Catalog Tests
═══════════════════════════════════════════════════════
Run: python -m pytest tests/test_groups.py -v
"""

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from algebra.groups import GroupElement, element_order, finite_subgroup
from config.settings import GROUP_GENERATORS, GROUP_ORDERS


def test_catalog_generators():
    assert finite_subgroup("Z2").generator.matrix == ((-1, 0), (0, -1))
    assert finite_subgroup("Z3").generator.matrix == ((0, 1), (-1, -1))
    assert finite_subgroup("Z4").generator.matrix == ((0, -1), (1, 0))
    assert finite_subgroup("Z6").generator.matrix == ((0, -1), (1, 1))


@pytest.mark.parametrize("label", sorted(GROUP_GENERATORS))
def test_catalog_orders(label):
    group = finite_subgroup(label)
    assert group.order == GROUP_ORDERS[label]
    assert group.elements[0].is_identity()
    assert len(set(group.elements)) == group.order


def test_labels_are_case_insensitive():
    assert finite_subgroup("z4") == finite_subgroup("Z4")


def test_unknown_label_rejected():
    with pytest.raises(ValueError):
        finite_subgroup("Z9")


def test_determinant_checked():
    with pytest.raises(ValueError):
        GroupElement(2, 0, 0, 1)


def test_element_orders():
    assert element_order(GroupElement.identity()) == 1
    assert element_order(GroupElement(-1, 0, 0, -1)) == 2
    assert element_order(GroupElement(0, 1, -1, -1)) == 3
    assert element_order(GroupElement(0, -1, 1, 0)) == 4
    assert element_order(GroupElement(0, -1, 1, 1)) == 6


def test_infinite_order_elements():
    assert element_order(GroupElement(1, 1, 0, 1)) is None
    assert element_order(GroupElement(-1, 1, 0, -1)) is None
    assert element_order(GroupElement(2, 1, 1, 1)) is None


@pytest.mark.parametrize("label", sorted(GROUP_GENERATORS))
def test_closure_and_inverses(label):
    group = finite_subgroup(label)
    for g in group.elements:
        assert g.inverse() in group.elements
        assert g.multiply(g.inverse()).is_identity()
        for h in group.elements:
            assert g.multiply(h) in group.elements
            assert g.conjugate(h) == g, "cyclic groups are abelian"


def test_element_lookup():
    group = finite_subgroup("Z4")
    assert group.index_of(group.generator.power(3)) == 3
    assert group.element(5) == group.generator
    with pytest.raises(ValueError):
        group.index_of(GroupElement(0, 1, -1, -1))


def test_fixed_point_counts():
    assert finite_subgroup("Z2").generator.fixed_point_count() == 4
    assert finite_subgroup("Z3").generator.fixed_point_count() == 3
    assert finite_subgroup("Z4").generator.fixed_point_count() == 2
    assert finite_subgroup("Z6").generator.fixed_point_count() == 1
    assert GroupElement.identity().fixed_point_count() == 0


def test_apply_and_power():
    g = finite_subgroup("Z4").generator
    assert g.apply((1, 0)) == (0, 1)
    assert g.power(-1) == g.power(3)
    assert g.power(4).is_identity()
    assert g.to_json() == [[0, -1], [1, 0]]
