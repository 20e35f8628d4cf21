from .scalars import FIELD, MU, LAMBDA, ONE, ZERO, Scalar, scalar
from .groups import GroupElement, FiniteSubgroup, element_order, finite_subgroup
from .torus import TorusElement, act, derivation_delta, monomial, multiply
