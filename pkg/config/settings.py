"""
Quantum-Torus Orbifold Calculator: Configuration & Constants
All tunables, catalogs and reference tables in one place.
"""

import math

# ─────────────────────────────────────────────
# SCALARS
# ─────────────────────────────────────────────
MU_SYMBOL_NAME = "mu"          # formal square root of the deformation parameter
LAMBDA_CHECK_RANGE = 20          # λ^n ≠ 1 is machine-checked for 0 < |n| ≤ this

# ─────────────────────────────────────────────
# FINITE SUBGROUPS OF SL2(Z)
# ─────────────────────────────────────────────
# Generator matrices as ((g11, g12), (g21, g22)).
GROUP_GENERATORS = {
    "Z2": ((-1, 0), (0, -1)),
    "Z3": ((0, 1), (-1, -1)),
    "Z4": ((0, -1), (1, 0)),
    "Z6": ((0, -1), (1, 1)),
}
GROUP_ORDERS = {"Z2": 2, "Z3": 3, "Z4": 4, "Z6": 6}
ORDER_SEARCH_LIMIT = 12        # finite-order elements of SL2(Z) have order ≤ 6

# ─────────────────────────────────────────────
# WINDOWS
# ─────────────────────────────────────────────
DEFAULT_MAX_WINDOW = 6
MIN_MAX_WINDOW = 3
STABILITY_RUN = 3              # equal consecutive radii required for "stable"
IMAGE_MARGIN = 3               # extra radius for cokernel / intersection sources
REDUCTION_ESCALATION = 4       # extra radii tried when reducing a cocycle

# ─────────────────────────────────────────────
# COMPARISON LIFTS
# ─────────────────────────────────────────────
LIFT_BASE_PADDING = 1          # padding around the bounding box of a lift target
LIFT_ESCALATION = 4            # further paddings tried before giving up
BASIS_LIFT_RADIUS = 1          # radius of the normalized bar generators used for h
WITNESS_WINDOW = 1             # ChainMapWitness squares are verified on this radius
IDENTITY_CHECK_RADIUS = 3      # search radius for the k2 identity coboundary
SECOND_LIFT_SEED = 1

# ─────────────────────────────────────────────
# POISSON / BRACKET CERTIFICATION
# ─────────────────────────────────────────────
# Coboundary witnesses are verified on all tuples drawn from these monomials:
# the generators, their inverses and one mixed product.
WITNESS_GENERATORS = ((1, 0), (0, 1), (-1, 0), (0, -1), (1, 1))

# ─────────────────────────────────────────────
# NUMERIC ORACLE
# ─────────────────────────────────────────────
NUMERIC_RANK_TOLERANCE = 1e-8  # relative to the largest singular value
RATIONAL_DENOMINATOR_LIMIT = 10_000
RATIONAL_MATCH_TOLERANCE = 1e-12
THETA_CATALOG = {
    "sqrt2-1": math.sqrt(2.0) - 1.0,
    "golden": (math.sqrt(5.0) - 1.0) / 2.0,
}

# ─────────────────────────────────────────────
# REFERENCE TABLES (orbifold HH and Poisson cohomology)
# ─────────────────────────────────────────────
REFERENCE_HH_TABLE = {
    "Z2": {"hh0": 1, "hh1": 0, "hh2": 5},
    "Z3": {"hh0": 1, "hh1": 0, "hh2": 7},
    "Z4": {"hh0": 1, "hh1": 0, "hh2": 8},
    "Z6": {"hh0": 1, "hh1": 0, "hh2": 9},
}
# Poisson cohomology coincides with Hochschild cohomology for every structure.
REFERENCE_POISSON_TABLE = {label: dict(row) for label, row in REFERENCE_HH_TABLE.items()}
TOP_DEGREE = 2                 # cohomology vanishes above this degree

# ─────────────────────────────────────────────
# REPORTING / CLI
# ─────────────────────────────────────────────
OUTPUT_FORMATS = ("json", "csv", "text")
EXIT_MATCH = 0
EXIT_INTERNAL = 1
EXIT_MISMATCH = 2
EXIT_USAGE = 64
REPORT_RULE = "═" * 50
