from .koszul import TwistedCochain, alpha1, alpha2, koszul_coboundary, resolution_differential
from .engine import (
    CohomologyReport,
    InconsistencyError,
    OrbifoldTable,
    Window,
    assemble_map_matrix,
    hh_dim,
    invariant_dim,
    orbifold_table,
    reduce_cocycle,
    sector_report,
)
from .comparison import ChainMapWitness, ComparisonLift, k2_identity_witness, lift_comparison_maps
from .bar import BarCochain, bar_differential, cup_product, gerstenhaber_bracket
from .transport import InvarianceCertificate, invariance_certificate, transport_action
from .poisson import PoissonStructure, PoissonTable, pi0, poisson_check, poisson_cohomology_table
